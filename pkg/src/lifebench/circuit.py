"""Synchronous-circuit emulation of the Game of Life, plus FPGA resource models.

Each cell is one D flip-flop, a popcount adder tree over its eight neighbor
registers, and rule logic on the 4-bit sum. Neighbor inputs that would fall
outside the grid are wired to a constant-0 node when the netlist is built,
so the combinational graph contains no boundary tests. The whole world
updates on every clock tick: all combinational nodes are evaluated from the
current register values, then every register latches at once.

Resource estimation is separate from the netlist: registers and LEs for a
given world size are modeled from a calibration table of synthesis results
(Cyclone IV, DE2-115 board), not derived from our node counts.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .grid import World

# Node kind codes. XOR3/MAJ3 are the sum and carry halves of a full-adder
# stage; everything else is an ordinary 1- or 2-input gate.
CONST0 = 0
AND = 1
OR = 2
NOT = 3
XOR = 4
XOR3 = 5
MAJ3 = 6

KIND_NAMES = ("CONST0", "AND", "OR", "NOT", "XOR", "XOR3", "MAJ3")

# The calibration table's register counts exceed cells by exactly this
# constant on every row. An artifact of the synthesized designs, not
# circuit structure; our netlists carry exactly one register per cell.
REGISTER_OVERHEAD = 4


class SizeMismatch(ValueError):
    """World dimensions do not match the elaborated netlist."""


class OutOfRange(ValueError):
    """Requested size falls outside the calibration table."""


# Moore neighborhood, row-major; the first three feed one adder, the next
# three the second, the last two the final half adder.
_OFFSETS = ((-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1))

# Gates per cell: elaborate() lays out one block of `cells` nodes per
# logical signal, blocks in dependency order.
_N_CELL_NODES = 19


class Netlist:
    """Explicit register + gate graph for one world size.

    Node ids: 0..R-1 are the cell state registers (row-major), id R is the
    shared constant-0 node, and ids R+1.. are gates in topological order.
    Use elaborate() to build one. An instance must not be ticked from two
    threads at once; distinct netlists are independent.
    """

    def __init__(self, width, height, kinds, inputs, reg_next, reg_init, schedule):
        self.width = width
        self.height = height
        self.n_registers = width * height
        self.kinds = kinds          # int8 (C,), per gate node (const included)
        self.inputs = inputs        # int32 (C, 3), node ids, -1 = unused
        self.reg_next = reg_next    # intp (R,), node id of each register's D input
        self.reg_init = reg_init    # bool (R,), reset values
        self._schedule = schedule   # [(kind, out_lo, out_hi, a, b, c)]
        self._values = np.zeros(self.n_registers + len(kinds), dtype=bool)
        self.reset()

    @property
    def n_comb_nodes(self) -> int:
        return len(self.kinds)

    @property
    def const_id(self) -> int:
        return self.n_registers

    def reset(self) -> None:
        """Latch the reset pattern into the registers."""
        self._values[:self.n_registers] = self.reg_init
        self._values[self.n_registers] = False

    def load(self, world: World) -> None:
        """Overwrite register state with a world of matching size."""
        if (world.width, world.height) != (self.width, self.height):
            raise SizeMismatch(
                f"netlist is {self.width}x{self.height}, world is {world.width}x{world.height}")
        self._values[:self.n_registers] = _world_bits(world)

    def registers(self) -> np.ndarray:
        """Copy of the current register values, row-major."""
        return self._values[:self.n_registers].copy()

    def to_world(self, generation: int = 0) -> World:
        return _bits_world(self._values[:self.n_registers], self.width, self.height, generation)

    def tick(self) -> None:
        """One clock: evaluate all gates from register values, then latch.

        Gates are evaluated in blocks whose inputs are already settled, so
        no register update is visible before the final simultaneous latch.
        """
        v = self._values
        for kind, lo, hi, a, b, c in self._schedule:
            if kind == XOR3:
                v[lo:hi] = v[a] ^ v[b] ^ v[c]
            elif kind == MAJ3:
                va, vb, vc = v[a], v[b], v[c]
                v[lo:hi] = (va & vb) | (va & vc) | (vb & vc)
            elif kind == AND:
                v[lo:hi] = v[a] & v[b]
            elif kind == OR:
                v[lo:hi] = v[a] | v[b]
            elif kind == XOR:
                v[lo:hi] = v[a] ^ v[b]
            else:  # NOT
                v[lo:hi] = ~v[a]
        v[:self.n_registers] = v[self.reg_next]

    def tick_in_order(self, order) -> None:
        """One clock, evaluating gates one at a time in the given id order.

        `order` must be a topological permutation of the combinational node
        ids (constant included). Exists to check that tick() is insensitive
        to evaluation order; far too slow for real stepping.
        """
        v = self._values
        base = self.n_registers
        for nid in order:
            k = self.kinds[nid - base]
            a, b, c = self.inputs[nid - base]
            if k == CONST0:
                v[nid] = False
            elif k == AND:
                v[nid] = v[a] & v[b]
            elif k == OR:
                v[nid] = v[a] | v[b]
            elif k == NOT:
                v[nid] = not v[a]
            elif k == XOR:
                v[nid] = v[a] ^ v[b]
            elif k == XOR3:
                v[nid] = v[a] ^ v[b] ^ v[c]
            else:
                v[nid] = (v[a] & v[b]) | (v[a] & v[c]) | (v[b] & v[c])
        v[:base] = v[self.reg_next]

    def dump(self, out=None) -> None:
        """Debug listing, one line per node: NODE <id> <kind> <inputs...>."""
        out = out if out is not None else sys.stdout
        for rid in range(self.n_registers):
            out.write(f"NODE {rid} REG {self.reg_next[rid]}\n")
        base = self.n_registers
        for k in range(self.n_comb_nodes):
            kind = self.kinds[k]
            ins = " ".join(str(i) for i in self.inputs[k] if i >= 0)
            out.write(f"NODE {base + k} {KIND_NAMES[kind]}{' ' if ins else ''}{ins}\n")


def _world_bits(world: World) -> np.ndarray:
    """World cells as a flat row-major bool array."""
    words = np.array(world.words, dtype="<u8")
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return bits.reshape(world.height, -1)[:, :world.width].astype(bool).ravel()

def _bits_world(bits: np.ndarray, width: int, height: int, generation: int) -> World:
    """Flat row-major bool array back into a bit-packed World."""
    rw = (width + 63) >> 6
    padded = np.zeros((height, rw * 64), dtype=np.uint8)
    padded[:, :width] = bits.reshape(height, width)
    words = np.packbits(padded, axis=1, bitorder="little").reshape(height, -1).copy().view("<u8")
    return World(width, height, tuple(int(w) for w in words.ravel()), generation)


def elaborate(width: int, height: int, initial: World | None = None) -> Netlist:
    """Replicate the per-cell circuit over a width x height grid.

    Every cell gets a register, a full-adder popcount tree over its eight
    neighbor registers (constant-0 stands in for missing neighbors), and
    the rule logic comparing the 4-bit sum against 2 and 3. `initial`
    supplies the register reset pattern (all dead if omitted).
    """
    if width < 1 or height < 1:
        raise ValueError(f"netlist dimensions must be >= 1, got {width}x{height}")
    if initial is not None and (initial.width, initial.height) != (width, height):
        raise SizeMismatch(
            f"initial world is {initial.width}x{initial.height}, netlist is {width}x{height}")

    n = width * height
    const = n  # node id of the shared constant-0
    cell = np.arange(n, dtype=np.intp)
    ys, xs = np.divmod(cell, width)

    nb = np.empty((8, n), dtype=np.intp)
    for k, (dx, dy) in enumerate(_OFFSETS):
        nx = xs + dx
        ny = ys + dy
        inside = (nx >= 0) & (nx < width) & (ny >= 0) & (ny < height)
        nb[k] = np.where(inside, ny * width + nx, const)

    # One contiguous block of n nodes per logical signal, in dependency order.
    def block(i):
        return const + 1 + i * n + cell

    sum_a, sum_b = block(0), block(1)      # XOR3 over neighbor triples
    car_a, car_b = block(2), block(3)      # MAJ3 over the same triples
    sum_c, car_c = block(4), block(5)      # half adder over the last pair
    bit0, ones_c = block(6), block(7)      # ones column sum and its carry
    twos, twos_c = block(8), block(9)      # carry column sum and its carry
    bit1, car_f = block(10), block(11)
    bit2, bit3 = block(12), block(13)
    ge4 = block(14)                        # count >= 4
    lt4 = block(15)
    is23 = block(16)                       # count is 2 or 3
    b0_or_self = block(17)                 # bit0 | own register
    nxt = block(18)                        # next cell state

    blocks = [
        (XOR3, sum_a, nb[0], nb[1], nb[2]),
        (XOR3, sum_b, nb[3], nb[4], nb[5]),
        (MAJ3, car_a, nb[0], nb[1], nb[2]),
        (MAJ3, car_b, nb[3], nb[4], nb[5]),
        (XOR, sum_c, nb[6], nb[7], None),
        (AND, car_c, nb[6], nb[7], None),
        (XOR3, bit0, sum_a, sum_b, sum_c),
        (MAJ3, ones_c, sum_a, sum_b, sum_c),
        (XOR3, twos, car_a, car_b, car_c),
        (MAJ3, twos_c, car_a, car_b, car_c),
        (XOR, bit1, twos, ones_c, None),
        (AND, car_f, twos, ones_c, None),
        (XOR, bit2, twos_c, car_f, None),
        (AND, bit3, twos_c, car_f, None),
        (OR, ge4, bit3, bit2, None),
        (NOT, lt4, ge4, None, None),
        (AND, is23, lt4, bit1, None),
        (OR, b0_or_self, bit0, cell, None),
        (AND, nxt, is23, b0_or_self, None),
    ]

    n_comb = 1 + _N_CELL_NODES * n
    kinds = np.empty(n_comb, dtype=np.int8)
    inputs = np.full((n_comb, 3), -1, dtype=np.int32)
    kinds[0] = CONST0
    schedule = []
    for kind, out, a, b, c in blocks:
        idx = out - const  # comb-array index of this block
        kinds[idx] = kind
        inputs[idx, 0] = a
        if b is not None:
            inputs[idx, 1] = b
        if c is not None:
            inputs[idx, 2] = c
        schedule.append((kind, int(out[0]), int(out[-1]) + 1,
                         np.ascontiguousarray(a),
                         None if b is None else np.ascontiguousarray(b),
                         None if c is None else np.ascontiguousarray(c)))

    reg_init = _world_bits(initial) if initial is not None else np.zeros(n, dtype=bool)
    return Netlist(width, height, kinds, inputs, nxt.copy(), reg_init, schedule)


def count_resources(netlist: Netlist) -> tuple[int, int]:
    """(state registers, combinational node count) of an elaborated netlist.

    The node count is our netlist metric; it is not a vendor LE count.
    """
    return netlist.n_registers, netlist.n_comb_nodes


# ---------------------------------------------------------------------------
# Calibrated resource model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CalRow:
    cells: int
    les: int
    registers: int
    min_clock_ns: float


class CalibrationTable:
    """Synthesis results by world size: LEs, registers, min clock period."""

    def __init__(self, rows):
        rows = tuple(rows)
        if not rows:
            raise ValueError("calibration table is empty")
        for prev, cur in zip(rows, rows[1:]):
            if cur.cells <= prev.cells:
                raise ValueError("calibration rows must be strictly increasing in cells")
        self.rows = rows

    @property
    def min_cells(self) -> int:
        return self.rows[0].cells

    @property
    def max_cells(self) -> int:
        return self.rows[-1].cells

    def exact(self, cells: int) -> CalRow | None:
        for row in self.rows:
            if row.cells == cells:
                return row
        return None

    def bracket(self, cells: int) -> tuple[CalRow, CalRow]:
        """Adjacent rows with lo.cells <= cells <= hi.cells."""
        if not self.min_cells <= cells <= self.max_cells:
            raise OutOfRange(
                f"{cells} cells outside calibration range "
                f"[{self.min_cells}, {self.max_cells}]")
        for lo, hi in zip(self.rows, self.rows[1:]):
            if lo.cells <= cells <= hi.cells:
                return lo, hi
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class ResourceEstimate:
    width: int
    height: int
    registers: int
    les: int
    min_clock_ns: float


def _default_calibration() -> CalibrationTable:
    from . import refdata
    return refdata.load_calibration()


def _round_half_up(num: int, den: int) -> int:
    return (2 * num + den) // (2 * den)


def calibrated_min_clock_ns(cells: int, cal: CalibrationTable | None = None) -> float:
    """Min clock period for a size: table value if listed, else the max of
    the two bracketing rows (the table is not monotonic, so no curve fit)."""
    cal = cal or _default_calibration()
    row = cal.exact(cells)
    if row is not None:
        return row.min_clock_ns
    lo, hi = cal.bracket(cells)
    return max(lo.min_clock_ns, hi.min_clock_ns)


def estimate_resources(width: int, height: int, cal: CalibrationTable | None = None,
                       extrapolate: bool = False) -> ResourceEstimate:
    """Model registers, LEs, and min clock period for a world size.

    Registers are cells + REGISTER_OVERHEAD (exact on every calibration
    row). LEs interpolate linearly between calibration rows, rounding half
    up, and are exact at the rows. Outside the calibration range an
    OutOfRange is raised unless extrapolate=True, which extends the edge
    LE segment and reuses the edge clock value (a rough guess, since large
    designs may not route the same way).
    """
    cal = cal or _default_calibration()
    cells = width * height
    registers = cells + REGISTER_OVERHEAD

    if cells < cal.min_cells or cells > cal.max_cells:
        if not extrapolate:
            raise OutOfRange(
                f"{width}x{height} = {cells} cells outside calibration range "
                f"[{cal.min_cells}, {cal.max_cells}]; pass extrapolate=True to force")
        if cells < cal.min_cells:
            lo, hi = cal.rows[0], cal.rows[1]
            edge = cal.rows[0]
        else:
            lo, hi = cal.rows[-2], cal.rows[-1]
            edge = cal.rows[-1]
        les = lo.les + _round_half_up((cells - lo.cells) * (hi.les - lo.les),
                                      hi.cells - lo.cells)
        return ResourceEstimate(width, height, registers, max(les, 0), edge.min_clock_ns)

    row = cal.exact(cells)
    if row is not None:
        return ResourceEstimate(width, height, registers, row.les, row.min_clock_ns)
    lo, hi = cal.bracket(cells)
    les = lo.les + _round_half_up((cells - lo.cells) * (hi.les - lo.les),
                                  hi.cells - lo.cells)
    return ResourceEstimate(width, height, registers, les,
                            max(lo.min_clock_ns, hi.min_clock_ns))
