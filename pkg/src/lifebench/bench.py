"""Benchmark harness: seeded random worlds per size, ns/step, trend lines.

Timing reads an injectable monotonic nanosecond clock once per engine step;
the timed region contains nothing but step calls and those reads. Samples
carry exact integer (total_ns, steps) pairs, and ns/step is derived from
them only at display time (3 fractional digits in CSV output).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import circuit as _circuit
from .engines import ENGINE_KINDS, make_engine
from .grid import Rng, random_world

CSV_HEADER = "width,height,cells,engine,steps,total_ns,ns_per_step"

DEFAULT_SIZES = tuple((k, k) for k in range(10, 101, 10))


class ClockError(RuntimeError):
    """The injected clock produced a decreasing reading."""


class DegeneratePoints(ValueError):
    """Regression input has fewer than two distinct x values."""


class ZeroDivisor(ZeroDivisionError):
    """Denominator of a ratio is zero (or not positive)."""


class CsvSchemaError(ValueError):
    """CSV input does not match the benchmark sample schema."""


class FakeClock:
    """Deterministic clock for tests: advances a fixed amount per reading."""

    def __init__(self, advance_ns: int, start_ns: int = 0):
        self.advance_ns = advance_ns
        self.now_ns = start_ns

    def __call__(self) -> int:
        self.now_ns += self.advance_ns
        return self.now_ns


@dataclass
class BenchConfig:
    sizes: tuple = DEFAULT_SIZES
    engine: str = "reference"
    min_steps: int = 1_000_000
    min_duration: float = 1.0     # seconds; both floors must be met
    warmup_steps: int = 10_000
    seed: int = 1
    density: float = 0.5

    def validate(self) -> None:
        if not self.sizes:
            raise ValueError("sizes must be nonempty")
        if self.engine not in ENGINE_KINDS:
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.min_steps < 1:
            raise ValueError("min_steps must be >= 1")
        if self.min_duration < 0:
            raise ValueError("min_duration must be >= 0")
        if self.warmup_steps < 0:
            raise ValueError("warmup_steps must be >= 0")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must be in [0, 1], got {self.density}")


@dataclass
class BenchSample:
    width: int
    height: int
    cells: int
    engine: str
    steps: int
    total_ns: int

    @property
    def ns_per_step(self) -> float:
        return self.total_ns / self.steps


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r_squared: float


def run_bench(cfg: BenchConfig, clock=None) -> list[BenchSample]:
    """One timed sample per configured size.

    Per size: build a seeded random world, run the warmup untimed, then
    step until both the step floor and the duration floor are satisfied.
    World seeds are drawn from a SplitMix64 stream over cfg.seed, so output
    is reproducible given the config (and a deterministic clock).
    """
    cfg.validate()
    if clock is None:
        clock = time.perf_counter_ns
    rng = Rng(cfg.seed)
    min_dur_ns = int(cfg.min_duration * 1e9)
    samples = []
    for width, height in cfg.sizes:
        world = random_world(width, height, cfg.density, rng.next_u64())
        engine = make_engine(cfg.engine, world)
        for _ in range(cfg.warmup_steps):
            engine.step()
        start = clock()
        last = start
        steps = 0
        while steps < cfg.min_steps or last - start < min_dur_ns:
            engine.step()
            now = clock()
            if now < last:
                raise ClockError(f"clock regressed: {now} < {last}")
            last = now
            steps += 1
        samples.append(BenchSample(width, height, width * height,
                                   cfg.engine, steps, last - start))
    return samples


def samples_to_csv(samples) -> str:
    lines = [CSV_HEADER]
    for s in samples:
        lines.append(f"{s.width},{s.height},{s.cells},{s.engine},"
                     f"{s.steps},{s.total_ns},{s.total_ns / s.steps:.3f}")
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> list[BenchSample]:
    """Parse benchmark CSV text; CsvSchemaError names any bad column."""
    lines = [ln for ln in text.split("\n") if ln]
    if not lines:
        raise CsvSchemaError("empty CSV, expected header " + CSV_HEADER)
    header = lines[0].split(",")
    expected = CSV_HEADER.split(",")
    if header != expected:
        missing = [c for c in expected if c not in header]
        extra = [c for c in header if c not in expected]
        parts = []
        if missing:
            parts.append("missing column(s): " + ", ".join(missing))
        if extra:
            parts.append("unexpected column(s): " + ", ".join(extra))
        if not parts:
            parts.append("columns out of order: " + ",".join(header))
        raise CsvSchemaError("; ".join(parts))
    samples = []
    for i, line in enumerate(lines[1:], start=2):
        cols = line.split(",")
        if len(cols) != len(expected):
            raise CsvSchemaError(f"line {i}: expected {len(expected)} columns, got {len(cols)}")
        try:
            samples.append(BenchSample(
                width=int(cols[0]), height=int(cols[1]), cells=int(cols[2]),
                engine=cols[3], steps=int(cols[4]), total_ns=int(cols[5])))
        except ValueError as exc:
            raise CsvSchemaError(f"line {i}: {exc}") from None
    return samples


def linear_fit(points) -> RegressionFit:
    """Ordinary least squares over (x, y) pairs.

    r_squared = 1 - SSres/SStot, defined as 1.0 when the y values have no
    variance (a constant is a perfect fit of constant data).
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise DegeneratePoints("need at least two points")
    n = len(pts)
    xbar = sum(x for x, _ in pts) / n
    ybar = sum(y for _, y in pts) / n
    sxx = sum((x - xbar) ** 2 for x, _ in pts)
    if sxx == 0.0:
        raise DegeneratePoints("all x values are equal")
    sxy = sum((x - xbar) * (y - ybar) for x, y in pts)
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in pts)
    ss_tot = sum((y - ybar) ** 2 for _, y in pts)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RegressionFit(slope, intercept, min(1.0, max(0.0, r2)))


def speedup(sw_time, hw_time) -> float:
    """Ratio of software to hardware time-per-step (any common unit)."""
    if hw_time <= 0:
        raise ZeroDivisor(f"hardware time must be positive, got {hw_time}")
    return sw_time / hw_time


def fpga_time_model(size: tuple[int, int], cal: "_circuit.CalibrationTable | None" = None) -> float:
    """Modeled FPGA ns/step for a world size: its min clock period, since
    the circuit updates the whole world once per clock."""
    width, height = size
    return _circuit.calibrated_min_clock_ns(width * height, cal)
