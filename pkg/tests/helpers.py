"""Shared fixtures and independent oracles for the test suite."""

from lifebench.engines import neighbor_count, next_cell_state
from lifebench.grid import World

# Two phases of the beacon oscillator (period 2).
BEACON_A = (
    "......\n"
    ".OO...\n"
    ".O....\n"
    "....O.\n"
    "...OO.\n"
    "......\n"
)
BEACON_B = (
    "......\n"
    ".OO...\n"
    ".OO...\n"
    "...OO.\n"
    "...OO.\n"
    "......\n"
)

BEACON_A_CELLS = {(1, 1), (2, 1), (1, 2), (3, 4), (4, 3), (4, 4)}

# Southeast-moving glider phase: translates by (+1, +1) every 4 steps.
GLIDER = {(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)}

# Published Mac-column points (cells, us/step) and their OLS fit, computed
# independently with exact rational arithmetic (normal equations over
# Fraction) and frozen here.
MAC_POINTS = [(100, 0.10), (400, 0.33), (900, 0.70), (1600, 1.21), (2500, 1.81),
              (3600, 2.76), (4900, 3.54), (6400, 4.81), (8100, 6.50), (10000, 7.51)]
MAC_SLOPE = 0.0007645640074211503     # = 4121/5390000 us per cell
MAC_INTERCEPT = -0.01657142857142857  # = -29/1750 us
MAC_R2 = 0.9972208199507837           # = 1103871665/1106948073


def world_from_cells(width, height, cells, generation=0):
    rows = [0] * height
    for x, y in cells:
        rows[y] |= 1 << x
    return World.from_row_ints(width, height, rows, generation)


def cells_of(world):
    return set(world.live_cells())


def naive_step(world):
    """Independent single-step oracle: per-cell rule over per-cell counts."""
    rows = []
    for y in range(world.height):
        r = 0
        for x in range(world.width):
            if next_cell_state(world.get(x, y), neighbor_count(world, x, y)):
                r |= 1 << x
        rows.append(r)
    return World.from_row_ints(world.width, world.height, rows, world.generation + 1)


def embed(world, margin):
    """Center a world in a dead frame `margin` cells wide."""
    cells = {(x + margin, y + margin) for x, y in world.live_cells()}
    return world_from_cells(world.width + 2 * margin, world.height + 2 * margin,
                            cells, world.generation)


def crop(world, margin):
    """Inverse of embed: drop a frame `margin` cells wide."""
    w = world.width - 2 * margin
    h = world.height - 2 * margin
    cells = set()
    for x, y in world.live_cells():
        if margin <= x < margin + w and margin <= y < margin + h:
            cells.add((x - margin, y - margin))
    return world_from_cells(w, h, cells, world.generation)
