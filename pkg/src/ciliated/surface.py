"""Topological type of a ciliated surface.

A ciliated surface is a compact orientable surface of genus ``g`` with
``b >= 1`` boundary components, ``s`` punctures and ``p_i >= 1`` marked points
on the i-th boundary component.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import InvalidSurface, NegativeCount, NonIntegral, ParseError


@dataclass(frozen=True)
class CiliatedSurface:
    genus: int
    boundary_count: int
    puncture_count: int
    marked_points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marked_points", tuple(int(p) for p in self.marked_points))
        if self.genus < 0:
            raise InvalidSurface(f"genus must be >= 0, got {self.genus}")
        if self.boundary_count < 1:
            raise InvalidSurface(f"boundary_count must be >= 1, got {self.boundary_count}")
        if self.puncture_count < 0:
            raise InvalidSurface(f"puncture_count must be >= 0, got {self.puncture_count}")
        if len(self.marked_points) != self.boundary_count:
            raise InvalidSurface(
                f"expected {self.boundary_count} marked point counts, got {len(self.marked_points)}")
        if any(p < 1 for p in self.marked_points):
            raise InvalidSurface("every boundary component needs at least one marked point")

    @property
    def total_marked(self) -> int:
        return sum(self.marked_points)

    @property
    def euler_sum(self) -> int:
        """``6g + 3b + 3s + |P|``, the quantity both counting formulas are built on."""
        return 6 * self.genus + 3 * self.boundary_count + 3 * self.puncture_count + self.total_marked

    def canonical(self) -> CiliatedSurface:
        return CiliatedSurface(self.genus, self.boundary_count, self.puncture_count,
                               tuple(sorted(self.marked_points, reverse=True)))

    def descriptor(self) -> str:
        return format_surface(self)

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "boundary_count": self.boundary_count,
            "puncture_count": self.puncture_count,
            "marked_points": list(self.marked_points),
        }

    @classmethod
    def from_dict(cls, data: dict) -> CiliatedSurface:
        try:
            return cls(int(data["genus"]), int(data["boundary_count"]),
                       int(data["puncture_count"]), tuple(data["marked_points"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed surface object: {exc}") from None

    def __str__(self):
        return format_surface(self)

    # Shortcuts for the explicit finite models.
    @property
    def is_polygon(self) -> bool:
        return (self.genus, self.boundary_count, self.puncture_count) == (0, 1, 0)

    @property
    def is_punctured_polygon(self) -> bool:
        return (self.genus, self.boundary_count, self.puncture_count) == (0, 1, 1)

    @property
    def is_annulus_one_one(self) -> bool:
        return (self.genus, self.boundary_count, self.puncture_count, self.marked_points) == (0, 2, 0, (1, 1))


def polygon(n: int, punctures: int = 0) -> CiliatedSurface:
    return CiliatedSurface(0, 1, punctures, (n,))


ANNULUS_ONE_ONE = CiliatedSurface(0, 2, 0, (1, 1))

_DESCRIPTOR = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*;\s*(\d+(?:\s*,\s*\d+)*)\s*$")


def parse_surface(text: str) -> CiliatedSurface:
    """Parse the compact form ``"g,b,s;p1,...,pb"``.

    >>> parse_surface("0,2,0;1,1")
    CiliatedSurface(genus=0, boundary_count=2, puncture_count=0, marked_points=(1, 1))
    """
    m = _DESCRIPTOR.match(text)
    if not m:
        raise ParseError(f"surface descriptor must look like 'g,b,s;p1,...,pb', got {text!r}")
    g, b, s = (int(m.group(k)) for k in (1, 2, 3))
    points = tuple(int(p) for p in m.group(4).split(","))
    return CiliatedSurface(g, b, s, points)


def format_surface(surface: CiliatedSurface) -> str:
    points = ",".join(str(p) for p in surface.marked_points)
    return f"{surface.genus},{surface.boundary_count},{surface.puncture_count};{points}"


def arc_count(surface: CiliatedSurface) -> int:
    """Number of arcs in any triangulation: ``6g + 3b + 3s + |P| - 6``.

    Unpunctured polygons with at most three vertices are refused: their arc
    complex is empty and nothing downstream may treat them as triangulable.
    """
    n = surface.euler_sum - 6
    if n < 0:
        raise NegativeCount(f"{surface}: 6g+3b+3s+|P|-6 = {n} < 0, no triangulation exists")
    if surface.is_polygon and surface.marked_points[0] <= 3:
        raise NegativeCount(f"{surface}: polygon with at most 3 vertices has an empty arc complex")
    return n


def complex_dim(surface: CiliatedSurface) -> int:
    """Dimension of the arc complex, ``6g + 3b + 3s + |P| - 7``; -1 for the empty complex."""
    return max(surface.euler_sum - 7, -1)


def is_finite_type(surface: CiliatedSurface) -> bool:
    return surface.genus == 0 and surface.boundary_count == 1 and surface.puncture_count <= 1


def triangle_count(surface: CiliatedSurface) -> int:
    n = arc_count(surface)
    sides = 2 * n + surface.total_marked
    if sides % 3:
        raise NonIntegral(f"{surface}: 2N + |P| = {sides} is not divisible by 3")
    return sides // 3


class SurfaceTag(str, enum.Enum):
    EMPTY = "Empty"
    SINGLE_VERTEX = "SingleVertex"
    TWO_VERTICES = "TwoVertices"
    PENTAGON = "Pentagon"
    ANNULUS_ONE_ONE = "AnnulusOneOne"
    PUNCTURED_DIGON = "PuncturedDigon"
    GENERAL = "General"


@dataclass(frozen=True)
class SurfaceClass:
    tag: SurfaceTag
    surface: CiliatedSurface


_LOW_DIMENSIONAL = {
    (0, 1, 1, (1,)): SurfaceTag.SINGLE_VERTEX,
    (0, 1, 0, (4,)): SurfaceTag.TWO_VERTICES,
    (0, 1, 0, (5,)): SurfaceTag.PENTAGON,
    (0, 2, 0, (1, 1)): SurfaceTag.ANNULUS_ONE_ONE,
    (0, 1, 1, (2,)): SurfaceTag.PUNCTURED_DIGON,
}


def classify(surface: CiliatedSurface) -> SurfaceClass:
    if complex_dim(surface) == -1:
        return SurfaceClass(SurfaceTag.EMPTY, surface)
    c = surface.canonical()
    key = (c.genus, c.boundary_count, c.puncture_count, c.marked_points)
    return SurfaceClass(_LOW_DIMENSIONAL.get(key, SurfaceTag.GENERAL), surface)


def same_homeo_type(a: CiliatedSurface, b: CiliatedSurface) -> bool:
    return a.canonical() == b.canonical()
