"""Embedded reference instances used by tests and the `tables` command.

Two hand-checkable 4-bit instances:

* the general demo: four per-bit maps passing both construction rules, with
  the full 16-row image table;
* the point demo: a construction anchored at 1001 (value 9) with one negative
  mapping, showing order preservation at the anchor but not globally
  (F(0111)=90 > F(1000)=80).

The point demo's open-interval parameters are pinned to l=15 and sampling
range [0, 60], which the injected values satisfy.
"""

from __future__ import annotations

from .bits import BitString
from .opf import GeneralOPF, PerBitMap, PointOPF, construct_at_point

GENERAL_DEMO_MAPS = GeneralOPF(
    (PerBitMap(3, 5), PerBitMap(7, 10), PerBitMap(1, 8), PerBitMap(4, 18))
)

# gap per position and its running sum, LSB first
GENERAL_DEMO_GAPS = [2, 3, 7, 14]
GENERAL_DEMO_GAP_SUMS = [2, 5, 12, 26]

# F(x) for x = 0..15
GENERAL_DEMO_TABLE = [15, 17, 18, 20, 22, 24, 25, 27, 29, 31, 32, 34, 36, 38, 39, 41]

POINT_DEMO_ANCHOR = BitString.parse("1001")
POINT_DEMO_L = 15
POINT_DEMO_RANGE = (0, 60)
POINT_DEMO_VALUES = [(13, 25), (36, 54), (30, 43), (-32, 1)]

POINT_DEMO_TABLE = [47, 59, 65, 77, 60, 72, 78, 90, 80, 92, 98, 110, 93, 105, 111, 123]
POINT_DEMO_RISES = {2: 18, 3: 13}
POINT_DEMO_FALLS = {1: 12, 4: 33}

POINT_FIXTURE_NAME = "demo-point-4bit"


def build_point_demo() -> PointOPF:
    """Rebuild the point demo through the real constructor (validation runs)."""
    return construct_at_point(
        POINT_DEMO_ANCHOR,
        POINT_DEMO_L,
        POINT_DEMO_RANGE[0],
        POINT_DEMO_RANGE[1],
        injected=POINT_DEMO_VALUES,
    )


def point_fixture(name: str) -> PointOPF:
    if name != POINT_FIXTURE_NAME:
        raise ValueError(f"unknown fixture {name!r}; available: {POINT_FIXTURE_NAME}")
    return build_point_demo()
