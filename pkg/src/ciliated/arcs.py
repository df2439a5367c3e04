"""Explicit isotopy classes of arcs on the finite-type models.

Three models are supported:

* the plain n-gon, with vertices ``0..n-1`` in counterclockwise order;
* the once-punctured n-gon, same boundary labels plus a central puncture;
* the annulus with one marked point on each boundary component.

Crossing numbers on the punctured n-gon are computed in the double cover
branched at the puncture.  The cover is a 2n-gon with a marked center, boundary
vertex ``k`` of the cover sitting over vertex ``k mod n`` downstairs.  Every arc
lifts to a half-turn symmetric set of chords of the cover, and a pair of
chords crosses exactly when their endpoints interleave, except that two
diameters only meet at the center, which does not count.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Union

from .errors import InfiniteType, InvalidArc, MixedSurface, ParseError
from .surface import CiliatedSurface, is_finite_type


@dataclass(frozen=True)
class Chord:
    """Diagonal of the plain n-gon."""
    i: int
    j: int

    rank = 0

    def key(self):
        return (self.rank, self.i, self.j)

    def text(self):
        return f"C({self.i},{self.j})"


@dataclass(frozen=True)
class SidedChord:
    """Arc between boundary vertices ``i < j`` of the punctured n-gon.

    ``side == 0`` means the puncture lies on the side of the vertices
    ``i+1..j-1``; ``side == 1`` means it lies on the other side.
    """
    i: int
    j: int
    side: int

    rank = 1

    def key(self):
        return (self.rank, self.i, self.j, self.side)

    def text(self):
        return f"SC({self.i},{self.j},{self.side})"


@dataclass(frozen=True)
class Radius:
    i: int

    rank = 2

    def key(self):
        return (self.rank, self.i)

    def text(self):
        return f"R({self.i})"


@dataclass(frozen=True)
class Loop:
    """Embedded loop based at ``i`` whose monogon contains the puncture."""
    i: int

    rank = 3

    def key(self):
        return (self.rank, self.i)

    def text(self):
        return f"L({self.i})"


@dataclass(frozen=True)
class Winding:
    """Arc across the (1,1)-annulus with winding number ``w``."""
    w: int

    rank = 4

    def key(self):
        return (self.rank, self.w)

    def text(self):
        return f"W({self.w})"


Arc = Union[Chord, SidedChord, Radius, Loop, Winding]

_POLYGON_KINDS = (Chord,)
_PUNCTURED_KINDS = (SidedChord, Radius, Loop)


def arc_key(arc: Arc):
    return arc.key()


def sort_arcs(arcs) -> tuple:
    return tuple(sorted(arcs, key=arc_key))


_ARC_TEXT = re.compile(r"^\s*(SC|C|R|L|W)\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?(?:,\s*(\d+)\s*)?\)\s*$")


def parse_arc(text: str) -> Arc:
    m = _ARC_TEXT.match(text)
    if not m:
        raise ParseError(f"cannot parse arc {text!r}")
    kind = m.group(1)
    args = [int(g) for g in m.groups()[1:] if g is not None]
    expected = {"C": 2, "SC": 3, "R": 1, "L": 1, "W": 1}[kind]
    if len(args) != expected:
        raise ParseError(f"arc {text!r} needs {expected} arguments")
    return {"C": Chord, "SC": SidedChord, "R": Radius, "L": Loop, "W": Winding}[kind](*args)


def _model(surface: CiliatedSurface) -> str | None:
    if surface.is_polygon:
        return "polygon"
    if surface.is_punctured_polygon:
        return "punctured"
    if surface.is_annulus_one_one:
        return "annulus"
    return None


def _puncture_free_vertices(arc: SidedChord, n: int) -> tuple[int, ...]:
    inner = tuple(range(arc.i + 1, arc.j))
    outer = tuple(k for k in range(n) if not arc.i <= k <= arc.j)
    return outer if arc.side == 0 else inner


def check_arc(arc: Arc, surface: CiliatedSurface) -> None:
    """Raise :class:`InvalidArc` unless ``arc`` is an essential arc of ``surface``."""
    model = _model(surface)
    if model == "annulus":
        if not isinstance(arc, Winding):
            raise MixedSurface(f"{arc.text()} is not an arc of the (1,1)-annulus")
        return
    if model is None:
        raise InfiniteType(f"no explicit arc model for {surface}")
    n = surface.marked_points[0]
    kinds = _POLYGON_KINDS if model == "polygon" else _PUNCTURED_KINDS
    if not isinstance(arc, kinds):
        raise MixedSurface(f"{arc.text()} is not an arc of the {model} model")
    if isinstance(arc, Chord):
        if not (0 <= arc.i < arc.j < n) or arc.j - arc.i < 2 or (arc.i, arc.j) == (0, n - 1):
            raise InvalidArc(f"{arc.text()} is not an essential chord of the {n}-gon")
    elif isinstance(arc, SidedChord):
        if not (0 <= arc.i < arc.j < n) or arc.side not in (0, 1):
            raise InvalidArc(f"{arc.text()} is malformed for n = {n}")
        if not _puncture_free_vertices(arc, n):
            raise InvalidArc(f"{arc.text()} is boundary parallel")
    elif isinstance(arc, Radius):
        if not 0 <= arc.i < n:
            raise InvalidArc(f"{arc.text()} is malformed for n = {n}")
    elif isinstance(arc, Loop):
        if not 0 <= arc.i < n:
            raise InvalidArc(f"{arc.text()} is malformed for n = {n}")
        if n == 1:
            # the loop is parallel to the whole boundary
            raise InvalidArc("the once-punctured monogon has no essential loop")


def enumerate_arcs(surface: CiliatedSurface, winding_bound: int | None = None) -> tuple:
    """Every isotopy class of essential arc, in canonical order.

    The (1,1)-annulus has infinitely many arcs; ``winding_bound`` selects the
    window ``|w| <= winding_bound``.
    """
    model = _model(surface)
    if model == "annulus":
        if winding_bound is None:
            raise InfiniteType("the (1,1)-annulus needs an explicit winding bound")
        return tuple(Winding(w) for w in range(-winding_bound, winding_bound + 1))
    if model is None or not is_finite_type(surface):
        raise InfiniteType(f"{surface} has infinitely many arcs")
    n = surface.marked_points[0]
    if model == "polygon":
        arcs = [Chord(i, j) for i in range(n) for j in range(i + 2, n) if (i, j) != (0, n - 1)]
        return sort_arcs(arcs)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            for side in (0, 1):
                a = SidedChord(i, j, side)
                if _puncture_free_vertices(a, n):
                    arcs.append(a)
    arcs.extend(Radius(i) for i in range(n))
    if n >= 2:
        arcs.extend(Loop(i) for i in range(n))
    return sort_arcs(arcs)


# Lifts to the branched double cover ------------------------------------------

STRAIGHT, DIAMETER = "straight", "diameter"


@dataclass(frozen=True)
class CoverChord:
    """Chord of the 2n-gon; ``kind`` is straight, diameter, or a bent half-turn
    chord ``"bent+"`` / ``"bent-"`` passing on either side of the center."""
    a: int
    b: int
    kind: str


@dataclass(frozen=True)
class CoverChordSet:
    n: int
    chords: tuple[CoverChord, ...]

    def is_symmetric(self) -> bool:
        def turn(c):
            a, b = sorted(((c.a + self.n) % (2 * self.n), (c.b + self.n) % (2 * self.n)))
            kind = {"bent+": "bent-", "bent-": "bent+"}.get(c.kind, c.kind)
            return CoverChord(a, b, kind)
        return {turn(c) for c in self.chords} == set(self.chords)


def lift(arc: Arc, n: int) -> CoverChordSet:
    """Preimage of a punctured n-gon arc in the double cover."""
    if isinstance(arc, Radius):
        chords = (CoverChord(arc.i, arc.i + n, DIAMETER),)
    elif isinstance(arc, Loop):
        chords = (CoverChord(arc.i, arc.i + n, "bent+"), CoverChord(arc.i, arc.i + n, "bent-"))
    elif isinstance(arc, SidedChord):
        if arc.side == 1:
            pairs = ((arc.i, arc.j), (arc.i + n, arc.j + n))
        else:
            pairs = ((arc.i, arc.j + n), (arc.j, arc.i + n))
        chords = tuple(CoverChord(a, b, STRAIGHT) for a, b in pairs)
    else:
        raise MixedSurface(f"{arc.text()} has no lift to the punctured-polygon cover")
    return CoverChordSet(n, chords)


def _interleave(a: int, b: int, c: int, d: int) -> bool:
    """Whether chords {a,b} and {c,d} with four distinct endpoints alternate."""
    if len({a, b, c, d}) < 4:
        return False
    lo, hi = min(a, b), max(a, b)
    return (lo < c < hi) != (lo < d < hi)


def cover_crossings(x: CoverChord, y: CoverChord) -> int:
    if x.kind == DIAMETER and y.kind == DIAMETER:
        return 0
    return int(_interleave(x.a, x.b, y.a, y.b))


# Intersection numbers ---------------------------------------------------------

def iota(a: Arc, b: Arc, surface: CiliatedSurface) -> int:
    """Minimal number of interior intersections between ``a`` and ``b``."""
    check_arc(a, surface)
    check_arc(b, surface)
    return _iota(a, b, surface)


@functools.lru_cache(maxsize=1 << 16)
def _iota(a: Arc, b: Arc, surface: CiliatedSurface) -> int:
    if a == b:
        return 0
    model = _model(surface)
    if model == "polygon":
        return int(_interleave(a.i, a.j, b.i, b.j))
    if model == "annulus":
        return abs(a.w - b.w) - 1
    n = surface.marked_points[0]
    la, lb = lift(a, n), lift(b, n)
    total = sum(cover_crossings(x, y) for x in la.chords for y in lb.chords)
    if total % 2:
        raise AssertionError(f"odd lifted crossing count {total} for {a.text()}, {b.text()}")
    return total // 2


def compatible(a: Arc, b: Arc, surface: CiliatedSurface) -> bool:
    return iota(a, b, surface) == 0


@functools.lru_cache(maxsize=64)
def compatibility_table(surface: CiliatedSurface, winding_bound: int | None = None) -> dict:
    """Map each arc of the (windowed) universe to the set of arcs disjoint from it."""
    arcs = enumerate_arcs(surface, winding_bound)
    return {a: frozenset(b for b in arcs if b != a and _iota(a, b, surface) == 0) for a in arcs}


def transform_arc(arc: Arc, n: int, perm) -> Arc:
    """Image of ``arc`` under the boundary relabeling ``k -> perm(k)``.

    ``perm`` must be a dihedral symmetry of the n-gon, extended to fix the
    puncture.
    """
    if isinstance(arc, Chord):
        i, j = sorted((perm(arc.i), perm(arc.j)))
        return Chord(i, j)
    if isinstance(arc, Radius):
        return Radius(perm(arc.i))
    if isinstance(arc, Loop):
        return Loop(perm(arc.i))
    if isinstance(arc, SidedChord):
        i, j = sorted((perm(arc.i), perm(arc.j)))
        free = {perm(k) for k in _puncture_free_vertices(arc, n)}
        side = 1 if free == set(range(i + 1, j)) else 0
        return SidedChord(i, j, side)
    raise MixedSurface(f"cannot relabel {arc.text()} as a polygon arc")
