"""Packaged reference tables: published device timings and FPGA synthesis
results (Cyclone IV on a DE2-115; Quartus 19.1 Lite), used to calibrate the
resource model and as fixtures for the static consistency tests."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .circuit import CalRow, CalibrationTable


@dataclass(frozen=True)
class DeviceTimesRow:
    world: str
    cells: int
    mac_us: float
    raspberry_us: float
    fpga_us: float
    speedup_mac: float
    speedup_raspberry: float

    @property
    def size(self) -> tuple[int, int]:
        w, _, h = self.world.partition("x")
        return int(w), int(h)


def _read(name: str):
    text = resources.files(__package__).joinpath("data", name).read_text("ascii")
    return list(csv.DictReader(text.splitlines()))


@lru_cache(maxsize=None)
def load_calibration() -> CalibrationTable:
    rows = [CalRow(cells=int(r["cells"]), les=int(r["les"]),
                   registers=int(r["registers"]), min_clock_ns=float(r["min_clock_ns"]))
            for r in _read("fpga_calibration.csv")]
    return CalibrationTable(rows)


@lru_cache(maxsize=None)
def load_device_times() -> tuple[DeviceTimesRow, ...]:
    return tuple(DeviceTimesRow(world=r["world"], cells=int(r["cells"]),
                                mac_us=float(r["mac_us"]),
                                raspberry_us=float(r["raspberry_us"]),
                                fpga_us=float(r["fpga_us"]),
                                speedup_mac=float(r["speedup_mac"]),
                                speedup_raspberry=float(r["speedup_raspberry"]))
                 for r in _read("device_times_us.csv"))
