"""Structured evaluation grids.

A grid is three (min, max, count) axes plus a list of time slices.  With
``cylindrical=True`` the first two axes are interpreted as (r, theta) and
mapped to Cartesian coordinates, which keeps axisymmetric families away
from their 1/r^2 axis without wasting points.  Iteration order is fixed
(t-major, then axis0, axis1, axis2) so all downstream outputs are
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .catalog import Point4
from .errors import EmptyGridError, ParamError


@dataclass(frozen=True)
class Axis:
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ParamError(f"axis needs count >= 2, got {self.count}")
        if not self.lo < self.hi:
            raise ParamError(f"axis needs min < max, got [{self.lo}, {self.hi}]")

    def values(self) -> list[float]:
        step = (self.hi - self.lo) / (self.count - 1)
        return [self.lo + i * step for i in range(self.count)]


@dataclass(frozen=True)
class GridSpec:
    x: Axis
    y: Axis
    z: Axis
    times: tuple[float, ...] = (0.0,)
    cylindrical: bool = False

    def __post_init__(self):
        if len(self.times) == 0:
            raise EmptyGridError("no time slices")

    @property
    def n_points(self) -> int:
        return self.x.count * self.y.count * self.z.count * len(self.times)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.x.count, self.y.count, self.z.count)

    def points(self):
        """Yield Point4 values in deterministic order."""
        xs = self.x.values()
        ys = self.y.values()
        zs = self.z.values()
        for t in self.times:
            if self.cylindrical:
                for r in xs:
                    for th in ys:
                        c, s = math.cos(th), math.sin(th)
                        for z in zs:
                            yield Point4(r * c, r * s, z, t)
            else:
                for x in xs:
                    for y in ys:
                        for z in zs:
                            yield Point4(x, y, z, t)


def grid_from_dict(d: dict) -> GridSpec:
    """Build a GridSpec from the JSON/config representation."""
    def axis(key):
        lo, hi, n = d[key]
        return Axis(float(lo), float(hi), int(n))

    return GridSpec(
        x=axis("x"), y=axis("y"), z=axis("z"),
        times=tuple(float(t) for t in d.get("times", [0.0])),
        cylindrical=bool(d.get("cylindrical", False)),
    )
