import io
import re

import numpy as np
import pytest

from helpers import BEACON_A, BEACON_B, cells_of
from lifebench.circuit import (CONST0, KIND_NAMES, CalRow, CalibrationTable, OutOfRange,
                               REGISTER_OVERHEAD, SizeMismatch, count_resources,
                               elaborate, estimate_resources)
from lifebench.grid import World, parse_pattern, random_world
from lifebench.refdata import load_calibration


def comb_level(netlist):
    """Level of every node: registers and the constant are 0, gates 1 + max(input)."""
    base = netlist.n_registers
    levels = np.zeros(base + netlist.n_comb_nodes, dtype=int)
    for k in range(netlist.n_comb_nodes):
        if netlist.kinds[k] == CONST0:
            continue
        ins = [i for i in netlist.inputs[k] if i >= 0]
        levels[base + k] = 1 + max(levels[i] for i in ins)
    return levels


# ---------------------------------------------------------------------------
# elaboration structure
# ---------------------------------------------------------------------------


def test_one_register_per_cell():
    for w, h in [(1, 1), (3, 3), (10, 10), (7, 13)]:
        regs, _ = count_resources(elaborate(w, h))
        assert regs == w * h


def test_1x1_isolated_cell():
    n = elaborate(1, 1)
    regs, _ = count_resources(n)
    assert regs == 1
    # every popcount leaf (inputs of the level-1 adder nodes) is the constant
    levels = comb_level(n)
    leaves = [i for k in range(n.n_comb_nodes) if levels[n.n_registers + k] == 1
              for i in n.inputs[k] if i >= 0]
    assert len(leaves) == 16  # 8 neighbor slots, each read by a sum and a carry
    assert all(i == n.const_id for i in leaves)
    # a live isolated cell dies on the next tick (count 0)
    n.load(World.from_row_ints(1, 1, [1]))
    n.tick()
    assert not n.registers()[0]
    n.tick()
    assert not n.registers()[0]


def test_corner_cell_const_inputs():
    n = elaborate(3, 3)
    base = n.n_registers
    # popcount leaves of the corner cell = inputs of its six level-1 adder
    # nodes; each of the 8 neighbor slots is read twice (sum and carry)
    levels = comb_level(n)
    leaves = []
    for k in range(1, n.n_comb_nodes):
        if levels[base + k] == 1 and (k - 1) % n.n_registers == 0:
            leaves.extend(int(i) for i in n.inputs[k] if i >= 0)
    assert len(leaves) == 16
    assert leaves.count(n.const_id) == 10  # 5 missing neighbors, read twice
    live_capable = [i for i in leaves if i < base]
    assert len(live_capable) == 6  # 3 in-grid neighbors, read twice
    assert set(live_capable) == {1, 3, 4}  # registers (1,0), (0,1), (1,1)


def test_node_count_scales_quadratically():
    _, c10 = count_resources(elaborate(10, 10))
    _, c20 = count_resources(elaborate(20, 20))
    assert abs(c20 / c10 - 4.0) <= 0.2  # +-5%


def test_elaboration_deterministic():
    a = elaborate(9, 4)
    b = elaborate(9, 4)
    assert np.array_equal(a.kinds, b.kinds)
    assert np.array_equal(a.inputs, b.inputs)
    assert np.array_equal(a.reg_next, b.reg_next)


def test_combinational_graph_is_acyclic():
    n = elaborate(5, 7)
    base = n.n_registers
    for k in range(n.n_comb_nodes):
        for i in n.inputs[k]:
            if i >= 0:
                assert i < base + k  # inputs strictly earlier: a DAG
    # the only cycles go through registers
    assert all(nid >= base for nid in n.reg_next)


def test_elaborate_rejects_bad_args():
    with pytest.raises(ValueError):
        elaborate(0, 3)
    with pytest.raises(SizeMismatch):
        elaborate(4, 4, initial=World.empty(3, 3))


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------


def test_beacon_ticks():
    start = parse_pattern(BEACON_A)
    n = elaborate(6, 6, initial=start)
    assert n.to_world() == start  # registers reset to the starting pattern
    n.tick()
    assert cells_of(n.to_world()) == cells_of(parse_pattern(BEACON_B))
    n.tick()
    assert n.to_world() == start


def test_reset_restores_initial_pattern():
    start = parse_pattern(BEACON_A)
    n = elaborate(6, 6, initial=start)
    n.tick()
    n.reset()
    assert n.to_world() == start


def test_all_dead_stays_dead():
    n = elaborate(4, 4)
    for _ in range(3):
        n.tick()
        assert not n.registers().any()


def test_load_size_mismatch():
    with pytest.raises(SizeMismatch):
        elaborate(4, 4).load(World.empty(4, 5))


def test_tick_order_insensitive():
    # Latching must not depend on the order combinational nodes settle.
    world = random_world(4, 4, 0.5, 12)
    n = elaborate(4, 4)
    n.load(world)
    n.tick()
    expected = n.registers()

    levels = comb_level(n)
    base = n.n_registers
    rng = np.random.default_rng(9)
    for _ in range(5):
        ids = np.arange(base, base + n.n_comb_nodes)
        keys = rng.random(len(ids))
        order = ids[np.lexsort((keys, levels[ids]))]  # random valid topo order
        n.load(world)
        n.tick_in_order(order)
        assert np.array_equal(n.registers(), expected)


def test_dump_format():
    n = elaborate(2, 2)
    buf = io.StringIO()
    n.dump(buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == n.n_registers + n.n_comb_nodes
    pattern = re.compile(r"^NODE (\d+) (REG|" + "|".join(KIND_NAMES) + r")((?: \d+)*)$")
    seen = set()
    for line in lines:
        m = pattern.match(line)
        assert m, line
        seen.add(int(m.group(1)))
    assert seen == set(range(n.n_registers + n.n_comb_nodes))


# ---------------------------------------------------------------------------
# calibrated resource model
# ---------------------------------------------------------------------------


def test_estimate_matches_calibration_rows():
    for row in load_calibration().rows:
        side = int(round(row.cells ** 0.5))
        assert side * side == row.cells
        est = estimate_resources(side, side)
        assert est.registers == row.registers
        assert est.registers == row.cells + REGISTER_OVERHEAD
        assert est.les == row.les
        assert est.min_clock_ns == row.min_clock_ns


def test_estimate_interpolates_les():
    # 3000 cells sits between the 2500-cell and 3600-cell rows
    est = estimate_resources(50, 60)
    assert est.les == 28428  # 23439 + round(500/1100 * 10975)
    assert est.registers == 3004
    assert est.min_clock_ns == 4.5  # max of bracketing 4.4 and 4.5


def test_estimate_clock_is_conservative_bracket():
    est = estimate_resources(25, 34)  # 850 cells between 400 (4.0) and 900 (4.1)
    assert est.min_clock_ns == 4.1


def test_estimate_out_of_range():
    with pytest.raises(OutOfRange):
        estimate_resources(5, 5)
    with pytest.raises(OutOfRange):
        estimate_resources(101, 100)


def test_estimate_extrapolation_flag():
    est = estimate_resources(5, 5, extrapolate=True)
    assert est.registers == 25 + REGISTER_OVERHEAD
    assert est.les > 0
    big = estimate_resources(110, 110, extrapolate=True)
    assert big.registers == 12104
    assert big.les > 97871


def test_calibration_table_validates():
    rows = [CalRow(100, 10, 104, 4.0), CalRow(100, 20, 204, 4.0)]
    with pytest.raises(ValueError):
        CalibrationTable(rows)
    with pytest.raises(ValueError):
        CalibrationTable([])
