"""Three interchangeable Game of Life step engines.

* ReferenceEngine: scalar per-cell kernel over a halo-padded byte grid,
  the software baseline. The one-cell-wide dead halo removes all bounds
  tests from the inner loop.
* BitSlicedEngine: the whole grid lives in one arbitrary-precision integer
  and every cell is updated at once with word-wide boolean adder chains.
* CircuitEngine: drives the synchronous netlist from the circuit module,
  one clock tick per step.

All three produce bit-identical world sequences from the same start.

Engine instances are single-threaded (no concurrent step calls); distinct
instances are independent, and Worlds move freely between threads.
"""

from __future__ import annotations

from . import circuit as _circuit
from .grid import World

ENGINE_KINDS = ("reference", "bitsliced", "circuit")


class OutOfBounds(IndexError):
    """Queried cell lies outside the world."""


def next_cell_state(alive: bool, cnt: int) -> bool:
    """Step rule for one cell given its live-neighbor count (0..8).

    A cell is alive next step iff it has exactly 3 live neighbors, or it
    is alive now and has exactly 2.
    """
    return cnt == 3 or (bool(alive) and cnt == 2)


def neighbor_count(world: World, x: int, y: int) -> int:
    """Live cells among the 8 Moore neighbors; out-of-bounds reads as dead."""
    if not (0 <= x < world.width and 0 <= y < world.height):
        raise OutOfBounds(f"({x},{y}) outside {world.width}x{world.height} world")
    cnt = 0
    for dy in (-1, 0, 1):
        ny = y + dy
        if not 0 <= ny < world.height:
            continue
        row = world.row_int(ny)
        for dx in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            nx = x + dx
            if 0 <= nx < world.width:
                cnt += (row >> nx) & 1
    return cnt


# byte value 0/1 <-> ASCII '0'/'1', for fast row packing via int(s, 2)
_BYTES_TO_ASCII = bytes.maketrans(b"\x00\x01", b"01")
_ASCII_TO_BYTES = bytes.maketrans(b"01", b"\x00\x01")


class ReferenceEngine:
    """Scalar baseline: per-cell neighbor sum over a halo-padded byte grid.

    Two buffers are allocated at load time and swapped after every step,
    so the steady-state step cost contains no allocation.
    """

    kind = "reference"

    def __init__(self, world: World | None = None):
        self._cur = bytearray(0)
        self._next = bytearray(0)
        self._width = 0
        self._height = 0
        self._generation = 0
        if world is not None:
            self.load(world)

    def load(self, world: World) -> None:
        w, h = world.width, world.height
        stride = w + 2
        if (w, h) != (self._width, self._height):
            self._width, self._height = w, h
            self._cur = bytearray((h + 2) * stride)
            self._next = bytearray((h + 2) * stride)
        else:
            self._cur[:] = bytes(len(self._cur))
        cur = self._cur
        for y in range(h):
            bits = format(world.row_int(y), f"0{w}b")[::-1]
            base = (y + 1) * stride + 1
            cur[base:base + w] = bits.encode("ascii").translate(_ASCII_TO_BYTES)
        self._generation = world.generation

    def step(self) -> None:
        cur = self._cur
        nxt = self._next
        w = self._width
        stride = w + 2
        for y in range(1, self._height + 1):
            a = (y - 1) * stride
            m = y * stride
            b = (y + 1) * stride
            for x in range(1, w + 1):
                ax = a + x
                mx = m + x
                bx = b + x
                cnt = (cur[ax - 1] + cur[ax] + cur[ax + 1]
                       + cur[mx - 1] + cur[mx + 1]
                       + cur[bx - 1] + cur[bx] + cur[bx + 1])
                if cnt == 3 or (cnt == 2 and cur[mx]):
                    nxt[mx] = 1
                else:
                    nxt[mx] = 0
        self._cur, self._next = nxt, cur
        self._generation += 1

    def world(self) -> World:
        w, h = self._width, self._height
        stride = w + 2
        cur = self._cur
        rows = []
        for y in range(h):
            base = (y + 1) * stride + 1
            s = bytes(cur[base:base + w]).translate(_BYTES_TO_ASCII)
            rows.append(int(s[::-1], 2))
        return World.from_row_ints(w, h, rows, self._generation)


class BitSlicedEngine:
    """All cells updated at once with boolean adder chains on one big integer.

    Layout: bit (x, y) sits at position y * (width + 1) + x. The extra
    guard column per row is always zero, so a shift by one never carries a
    row edge into its neighbor row; shifted-in bits are zero everywhere
    (the same fixed dead boundary as the halo in the reference engine).

    Per step: 2-bit horizontal sums (pair for the cell's own row, triple
    for the rows above and below) are combined by full adders into the
    4-bit neighbor count, and the rule is applied as a boolean expression
    over the count bits. CPython's big integers carry shifted bits across
    word boundaries exactly.
    """

    kind = "bitsliced"

    def __init__(self, world: World | None = None):
        self._board = 0
        self._width = 0
        self._height = 0
        self._stride = 0
        self._full = 0
        self._generation = 0
        if world is not None:
            self.load(world)

    def load(self, world: World) -> None:
        w, h = world.width, world.height
        if (w, h) != (self._width, self._height):
            self._width, self._height = w, h
            self._stride = w + 1
            row = (1 << w) - 1
            full = 0
            for y in range(h):
                full |= row << (y * self._stride)
            self._full = full
        board = 0
        for y in range(h):
            board |= world.row_int(y) << (y * self._stride)
        self._board = board
        self._generation = world.generation

    def step(self) -> None:
        board = self._board
        s = self._stride
        full = self._full
        left = board << 1
        right = board >> 1
        # 2-bit sums: (hs, hc) = left + right, (ts, tc) = left + right + self
        hs = left ^ right
        hc = left & right
        ts = hs ^ board
        tc = hc | (hs & board)
        above1 = ts << s
        below1 = ts >> s
        above2 = tc << s
        below2 = tc >> s
        # ones column: above triple + own pair + below triple
        x = above1 ^ hs
        bit0 = x ^ below1
        c1 = (above1 & hs) | (below1 & x)
        # twos column plus the carry from the ones
        e = above2 ^ hc
        f = e ^ below2
        c2 = (above2 & hc) | (below2 & e)
        bit1 = f ^ c1
        c3 = f & c1
        hi = c2 | c3  # any weight-4 carry means count >= 4
        self._board = bit1 & (bit0 | board) & (hi ^ full) & full
        self._generation += 1

    def world(self) -> World:
        s = self._stride
        board = self._board
        rows = [(board >> (y * s)) for y in range(self._height)]
        return World.from_row_ints(self._width, self._height, rows, self._generation)


class CircuitEngine:
    """Synchronous-circuit emulation: one netlist clock tick per step.

    A netlist elaborated for another size is rejected; without a fixed
    netlist one is elaborated (and reused) for the loaded world's size.
    """

    kind = "circuit"

    def __init__(self, world: World | None = None, netlist: "_circuit.Netlist | None" = None):
        self._netlist = netlist
        self._fixed = netlist is not None
        self._generation = 0
        if world is not None:
            self.load(world)

    def load(self, world: World) -> None:
        n = self._netlist
        if n is None or (not self._fixed and (n.width, n.height) != (world.width, world.height)):
            n = _circuit.elaborate(world.width, world.height)
            self._netlist = n
        if (n.width, n.height) != (world.width, world.height):
            raise _circuit.SizeMismatch(
                f"netlist is {n.width}x{n.height}, world is {world.width}x{world.height}")
        n.load(world)
        self._generation = world.generation

    def step(self) -> None:
        self._netlist.tick()
        self._generation += 1

    def world(self) -> World:
        return self._netlist.to_world(self._generation)

    @property
    def netlist(self) -> "_circuit.Netlist":
        return self._netlist


_ENGINES = {
    "reference": ReferenceEngine,
    "bitsliced": BitSlicedEngine,
    "circuit": CircuitEngine,
}


def make_engine(kind: str, world: World | None = None):
    """Engine instance by kind name ('reference', 'bitsliced', 'circuit')."""
    try:
        cls = _ENGINES[kind]
    except KeyError:
        raise ValueError(f"unknown engine kind {kind!r}, expected one of {ENGINE_KINDS}")
    return cls(world)


def run(engine, world: World, steps: int) -> World:
    """Advance `world` by `steps` with the given engine (instance or kind name).

    steps == 0 returns the input world unchanged.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if steps == 0:
        return world
    if isinstance(engine, str):
        engine = make_engine(engine)
    engine.load(world)
    for _ in range(steps):
        engine.step()
    return engine.world()


def step_reference(world: World) -> World:
    """One step with the scalar reference engine."""
    return run(ReferenceEngine(), world, 1)


def step_bitsliced(world: World) -> World:
    """One step with the bit-sliced engine; equals step_reference bit for bit."""
    return run(BitSlicedEngine(), world, 1)


def step_circuit(world: World, netlist: "_circuit.Netlist | None" = None) -> World:
    """One step through the circuit emulation.

    With an explicit netlist the world must match its dimensions
    (SizeMismatch otherwise); without one, a netlist is elaborated.
    """
    return run(CircuitEngine(netlist=netlist), world, 1)
