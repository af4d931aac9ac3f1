"""World representation, deterministic random worlds, and plaintext pattern I/O.

A world is a fixed-size 2D grid of live/dead cells with a permanently dead
boundary: every cell outside [0, width) x [0, height) reads as dead.
Coordinates are (x right, y down) with the origin at the top left, matching
the text order of the plaintext pattern format ('.' dead, 'O' alive).
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

ALIVE_CHAR = "O"
DEAD_CHAR = "."


class PatternError(ValueError):
    """Base class for plaintext pattern parse failures."""


class RaggedLines(PatternError):
    """Pattern lines are not all the same length."""


class IllegalChar(PatternError):
    """Pattern contains a character other than '.', 'O', or a newline."""


class EmptyPattern(PatternError):
    """Pattern has no cells (empty text or an empty line)."""


class BadDensity(ValueError):
    """Requested live-cell density is outside [0, 1]."""


# ---------------------------------------------------------------------------
# Deterministic PRNG
# ---------------------------------------------------------------------------

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


class Rng:
    """SplitMix64 generator: 64-bit counter-based, splittable stream.

    The i-th output is a pure function of (seed, i), so sequences are
    identical on every platform and independent of call batching. Good
    enough statistically for world generation; not for cryptography.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        return mix64(self._state)

    def next_float(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def split(self) -> "Rng":
        """Child generator whose stream is independent of this one's future."""
        return Rng(self.next_u64())


# ---------------------------------------------------------------------------
# World
# ---------------------------------------------------------------------------


class World:
    """Bit-packed grid of cells. 1 = alive, 0 = dead.

    Cells are packed LSB-first into 64-bit words, row-major, each row
    padded to a whole number of words. Padding bits are always zero, which
    makes equality a plain word-vector compare.

    Worlds are immutable once constructed; engines build new ones. Equality
    compares dimensions and cells only, not the generation counter.
    """

    __slots__ = ("width", "height", "generation", "words")

    def __init__(self, width: int, height: int, words: tuple[int, ...], generation: int = 0):
        if width < 1 or height < 1:
            raise ValueError(f"world dimensions must be >= 1, got {width}x{height}")
        rw = (width + 63) >> 6
        if len(words) != height * rw:
            raise ValueError(f"expected {height * rw} words for {width}x{height}, got {len(words)}")
        self.width = width
        self.height = height
        self.generation = generation
        self.words = words

    @property
    def row_words(self) -> int:
        return (self.width + 63) >> 6

    @classmethod
    def empty(cls, width: int, height: int) -> "World":
        rw = (width + 63) >> 6
        return cls(width, height, (0,) * (height * rw))

    @classmethod
    def from_row_ints(cls, width: int, height: int, rows, generation: int = 0) -> "World":
        """Build from one arbitrary-precision int per row (bit x = cell x).

        Bits at x >= width are discarded, enforcing the zero-padding invariant.
        """
        rows = list(rows)
        if len(rows) != height:
            raise ValueError(f"expected {height} rows, got {len(rows)}")
        rw = (width + 63) >> 6
        row_mask = (1 << width) - 1
        words = []
        for r in rows:
            r &= row_mask
            for j in range(rw):
                words.append((r >> (64 * j)) & MASK64)
        return cls(width, height, tuple(words), generation)

    def row_int(self, y: int) -> int:
        """Row y as one int, bit x = cell (x, y)."""
        rw = self.row_words
        base = y * rw
        r = 0
        for j in range(rw):
            r |= self.words[base + j] << (64 * j)
        return r

    def get(self, x: int, y: int) -> int:
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"cell ({x},{y}) outside {self.width}x{self.height} world")
        w = self.words[y * self.row_words + (x >> 6)]
        return (w >> (x & 63)) & 1

    def live_cells(self):
        """Yield (x, y) of every live cell in row-major order."""
        for y in range(self.height):
            r = self.row_int(y)
            while r:
                low = r & -r
                yield (low.bit_length() - 1, y)
                r ^= low

    def __eq__(self, other):
        if not isinstance(other, World):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and self.words == other.words)

    def __hash__(self):
        return hash((self.width, self.height, self.words))

    def __repr__(self):
        return f"<World {self.width}x{self.height} gen={self.generation} pop={population(self)}>"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def parse_pattern(text: str) -> World:
    """Parse plaintext pattern lines ('.' dead, 'O' alive) into a World.

    Lines are '\\n'-terminated; a single trailing newline is optional.
    Raises RaggedLines, IllegalChar, or EmptyPattern (all PatternError).
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise EmptyPattern("pattern text is empty")
    width = len(lines[0])
    rows = []
    for i, line in enumerate(lines):
        if line == "":
            raise EmptyPattern(f"line {i + 1} is empty")
        if len(line) != width:
            raise RaggedLines(
                f"line {i + 1} has length {len(line)}, expected {width}")
        r = 0
        for x, ch in enumerate(line):
            if ch == ALIVE_CHAR:
                r |= 1 << x
            elif ch != DEAD_CHAR:
                raise IllegalChar(f"line {i + 1}: illegal character {ch!r}")
        rows.append(r)
    return World.from_row_ints(width, len(rows), rows)


def serialize_pattern(world: World) -> str:
    """Render a World as plaintext pattern lines, one '\\n' per row.

    parse_pattern(serialize_pattern(w)) reproduces w cell-for-cell.
    """
    out = []
    for y in range(world.height):
        r = world.row_int(y)
        out.append("".join(ALIVE_CHAR if (r >> x) & 1 else DEAD_CHAR
                           for x in range(world.width)))
        out.append("\n")
    return "".join(out)


def random_world(width: int, height: int, density: float = 0.5, seed: int = 0) -> World:
    """World with each cell independently alive with probability `density`.

    Deterministic for a fixed (width, height, density, seed) on every
    platform: cells are drawn row-major from a SplitMix64 stream.
    """
    if width < 1 or height < 1:
        raise ValueError(f"world dimensions must be >= 1, got {width}x{height}")
    if not 0.0 <= density <= 1.0:
        raise BadDensity(f"density must be in [0, 1], got {density}")
    rng = Rng(seed)
    threshold = int(round(density * 2.0 ** 64))
    next_u64 = rng.next_u64
    rows = []
    for _y in range(height):
        r = 0
        for x in range(width):
            if next_u64() < threshold:
                r |= 1 << x
        rows.append(r)
    return World.from_row_ints(width, height, rows)


def population(world: World) -> int:
    """Number of live cells."""
    return sum(w.bit_count() for w in world.words)
