"""Ideal triangulations and flips.

Two representations live here.  :class:`ExplicitTriangulation` is a set of
explicit arcs on one of the finite models of :mod:`ciliated.arcs`; flips are
found by scanning the arc universe for the unique replacement.
:class:`GluedTriangulation` is a list of counterclockwise triangles whose sides
are integer labels, together with an involution pairing interior sides.  It
works for any ciliated surface, but arcs only have local identities.

Glued file format::

    surface 1,1,0;1
    T 0: 0 1 2
    T 1: 3 4 5
    G: 1~3
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .arcs import Arc, Chord, Radius, Winding, compatibility_table, compatible, enumerate_arcs, iota, parse_arc, sort_arcs
from .errors import (AmbiguousFlip, ArcNotInTriangulation, InfiniteType, MalformedTriangulation,
                     NegativeCount, NotFlippable, OracleMismatch, ParseError, SelfFolded, Unsupported)
from .surface import CiliatedSurface, arc_count, is_finite_type, parse_surface, triangle_count


# Explicit triangulations ------------------------------------------------------

@dataclass(frozen=True)
class ExplicitTriangulation:
    surface: CiliatedSurface
    arcs: tuple

    def __post_init__(self):
        arcs = sort_arcs(set(self.arcs))
        object.__setattr__(self, "arcs", arcs)
        expected = arc_count(self.surface)
        if len(arcs) != expected:
            raise MalformedTriangulation(
                f"{len(arcs)} arcs given, a triangulation of {self.surface} has {expected}")
        for k, a in enumerate(arcs):
            for b in arcs[k + 1:]:
                if not compatible(a, b, self.surface):
                    raise MalformedTriangulation(f"{a.text()} and {b.text()} intersect")

    def __contains__(self, arc) -> bool:
        return arc in self.arcs

    def __len__(self):
        return len(self.arcs)

    def key(self) -> str:
        return " ".join(a.text() for a in self.arcs)

    def __str__(self):
        return "{" + ", ".join(a.text() for a in self.arcs) + "}"


def triangulation(surface: CiliatedSurface, arcs) -> ExplicitTriangulation:
    """Build an explicit triangulation from arcs or their text forms."""
    arcs = [parse_arc(a) if isinstance(a, str) else a for a in arcs]
    return ExplicitTriangulation(surface, tuple(arcs))


def fan(surface: CiliatedSurface) -> ExplicitTriangulation:
    """Base triangulation: chords from vertex 0, all radii, or ``{W(0), W(1)}``."""
    if surface.is_annulus_one_one:
        return ExplicitTriangulation(surface, (Winding(0), Winding(1)))
    if not is_finite_type(surface):
        raise InfiniteType(f"no explicit fan for {surface}")
    n = surface.marked_points[0]
    if surface.puncture_count == 0:
        return ExplicitTriangulation(surface, tuple(Chord(0, j) for j in range(2, n - 1)))
    return ExplicitTriangulation(surface, tuple(Radius(i) for i in range(n)))


def _universe_bound(t: ExplicitTriangulation):
    if t.surface.is_annulus_one_one:
        return max(abs(a.w) for a in t.arcs) + 2
    return None


def arc_universe(t: ExplicitTriangulation) -> tuple:
    """Arcs that can possibly replace an arc of ``t``."""
    return enumerate_arcs(t.surface, _universe_bound(t))


def replacements(t: ExplicitTriangulation, arc: Arc) -> list:
    """Arcs ``b`` outside ``t`` such that ``t - {arc} + {b}`` is a triangulation."""
    if arc not in t:
        raise ArcNotInTriangulation(f"{arc.text()} is not in {t}")
    table = compatibility_table(t.surface, _universe_bound(t))
    rest = frozenset(c for c in t.arcs if c != arc)
    return [b for b in arc_universe(t) if b not in t and rest <= table[b]]


def flippable(t: ExplicitTriangulation, arc: Arc) -> bool:
    found = replacements(t, arc)
    if len(found) > 1:
        raise AmbiguousFlip(f"{arc.text()} in {t} has replacements {[b.text() for b in found]}")
    return len(found) == 1


def flip_partner(t: ExplicitTriangulation, arc: Arc) -> Arc:
    found = replacements(t, arc)
    if not found:
        raise NotFlippable(f"{arc.text()} cannot be flipped in {t}")
    if len(found) > 1:
        raise AmbiguousFlip(f"{arc.text()} in {t} has replacements {[b.text() for b in found]}")
    new = found[0]
    if iota(arc, new, t.surface) != 1:
        raise OracleMismatch(f"flip {arc.text()} -> {new.text()} has iota {iota(arc, new, t.surface)}")
    return new


def flip(t: ExplicitTriangulation, arc: Arc) -> ExplicitTriangulation:
    new = flip_partner(t, arc)
    return ExplicitTriangulation(t.surface, tuple(c for c in t.arcs if c != arc) + (new,))


# Glued triangulations ---------------------------------------------------------

@dataclass(frozen=True)
class GluedTriangulation:
    """Triangles are read counterclockwise; ``gluing`` holds pairs ``(a, b)`` with ``a < b``."""
    surface: CiliatedSurface
    triangles: tuple
    gluing: tuple
    _partner: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _where: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(tuple(t) for t in self.triangles))
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.gluing))
        object.__setattr__(self, "gluing", pairs)
        partner = {}
        for a, b in pairs:
            partner.setdefault(a, b)
            partner.setdefault(b, a)
        where = {}
        for k, tri in enumerate(self.triangles):
            for m, side in enumerate(tri):
                where.setdefault(side, (k, m))
        object.__setattr__(self, "_partner", partner)
        object.__setattr__(self, "_where", where)

    @property
    def sides(self) -> list:
        return [s for tri in self.triangles for s in tri]

    def partner(self, side: int) -> int | None:
        return self._partner.get(side)

    def locate(self, side: int) -> tuple[int, int]:
        try:
            return self._where[side]
        except KeyError:
            raise MalformedTriangulation(f"no side labelled {side}") from None

    @property
    def boundary_sides(self) -> list:
        return [s for s in self.sides if s not in self._partner]

    @property
    def arcs(self) -> tuple:
        """Interior arcs as gluing pairs, ordered by smaller label."""
        return self.gluing

    def arc_of(self, side: int) -> tuple[int, int]:
        other = self.partner(side)
        if other is None:
            raise MalformedTriangulation(f"side {side} is a boundary side")
        return (min(side, other), max(side, other))

    def to_text(self) -> str:
        lines = [f"surface {self.surface.descriptor()}"]
        for k, tri in enumerate(self.triangles):
            lines.append(f"T {k}: " + " ".join(str(s) for s in tri))
        for a, b in self.gluing:
            lines.append(f"G: {a}~{b}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> GluedTriangulation:
        surface = None
        triangles = {}
        gluing = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                if line.startswith("surface"):
                    surface = parse_surface(line[len("surface"):])
                elif line.startswith("T"):
                    head, _, body = line[1:].partition(":")
                    k = int(head)
                    if k in triangles:
                        raise ParseError(f"triangle {k} listed twice")
                    triangles[k] = tuple(int(x) for x in body.split())
                elif line.startswith("G:"):
                    a, b = line[2:].split("~")
                    gluing.append((int(a), int(b)))
                else:
                    raise ParseError("unrecognised line")
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {raw!r}: {exc}") from None
        if surface is None:
            raise ParseError("missing 'surface' header")
        if sorted(triangles) != list(range(len(triangles))):
            raise ParseError("triangles must be numbered 0..T-1")
        return cls(surface, tuple(triangles[k] for k in range(len(triangles))), tuple(gluing))

    def canonical_form(self, fix_boundary: bool = True) -> tuple:
        """Relabeling-invariant encoding.

        Minimises over the choice of starting triangle and rotation.  With
        ``fix_boundary`` the boundary side labels are kept, so for disks the
        form identifies isotopy classes.
        """
        best = None
        for start in range(len(self.triangles)):
            for rot in range(3):
                code = self._encode(start, rot, fix_boundary)
                if best is None or code < best:
                    best = code
        return best

    def _encode(self, start, rot, fix_boundary):
        order = {start: 0}
        rotation = {start: rot}
        queue = [start]
        code = []
        head = 0
        while head < len(queue):
            k = queue[head]
            head += 1
            tri = self.triangles[k]
            r = rotation[k]
            entry = []
            for m in range(3):
                side = tri[(r + m) % 3]
                other = self.partner(side)
                if other is None:
                    entry.append((-1, side if fix_boundary else 0))
                    continue
                u, pos = self.locate(other)
                if u not in order:
                    order[u] = len(order)
                    rotation[u] = pos
                    queue.append(u)
                entry.append((order[u], (pos - rotation[u]) % 3))
            code.append(tuple(entry))
        if len(queue) != len(self.triangles):
            raise MalformedTriangulation("triangulation is disconnected")
        return tuple(code)


def flip_quad(t: GluedTriangulation, side: int):
    """Flip the arc carrying ``side``; also return the quadrilateral sides.

    With the arc's triangles ``(e, a, b)`` and ``(e', c, d)`` the result holds
    ``(e, b, c)`` and ``(e', d, a)``, so every label keeps its arc.
    """
    other = t.partner(side)
    if other is None:
        raise NotFlippable(f"side {side} lies on the boundary")
    k1, m1 = t.locate(side)
    k2, m2 = t.locate(other)
    if k1 == k2:
        raise SelfFolded(f"arc {t.arc_of(side)} is the interior edge of a self-folded triangle")
    t1, t2 = t.triangles[k1], t.triangles[k2]
    a, b = t1[(m1 + 1) % 3], t1[(m1 + 2) % 3]
    c, d = t2[(m2 + 1) % 3], t2[(m2 + 2) % 3]
    triangles = list(t.triangles)
    triangles[k1] = (side, b, c)
    triangles[k2] = (other, d, a)
    return GluedTriangulation(t.surface, tuple(triangles), t.gluing), (a, b, c, d)


def flip_glued(t: GluedTriangulation, side: int) -> GluedTriangulation:
    return flip_quad(t, side)[0]


def flippable_sides(t: GluedTriangulation) -> list:
    """One representative side (the smaller label) per flippable arc."""
    out = []
    for a, b in t.gluing:
        if t.locate(a)[0] != t.locate(b)[0]:
            out.append(a)
    return out


# Validation -------------------------------------------------------------------

@dataclass
class ValidationReport:
    declared: CiliatedSurface
    recomputed: CiliatedSurface | None = None
    euler_characteristic: int | None = None
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, detail: str):
        self.violations.append({"code": code, "detail": detail})

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "declared": self.declared.descriptor(),
            "recomputed": self.recomputed.descriptor() if self.recomputed else None,
            "euler_characteristic": self.euler_characteristic,
            "violations": list(self.violations),
        }


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def corner_classes(t: GluedTriangulation) -> dict:
    """Map each corner ``(triangle, position)`` to its vertex class.

    Side ``m`` of a triangle runs from corner ``m`` to corner ``m + 1``; an
    orientable gluing reverses direction.
    """
    uf = _UnionFind()
    for k in range(len(t.triangles)):
        for m in range(3):
            uf.find((k, m))
    for a, b in t.gluing:
        k1, m1 = t.locate(a)
        k2, m2 = t.locate(b)
        uf.union((k1, m1), (k2, (m2 + 1) % 3))
        uf.union((k1, (m1 + 1) % 3), (k2, m2))
    return {c: uf.find(c) for c in uf.parent}


def side_endpoints(t: GluedTriangulation, side: int, classes: dict | None = None):
    classes = classes if classes is not None else corner_classes(t)
    k, m = t.locate(side)
    return classes[(k, m)], classes[(k, (m + 1) % 3)]


def _structural_violations(t: GluedTriangulation, report: ValidationReport) -> bool:
    bad = False
    if any(len(tri) != 3 for tri in t.triangles) or len(t.sides) % 3:
        report.add("NonIntegralTriangles",
                   f"triangle side counts {[len(tri) for tri in t.triangles]} are not all 3")
        bad = True
    seen = set()
    for s in t.sides:
        if s in seen:
            report.add("DuplicateSide", f"side {s} appears more than once")
            bad = True
        seen.add(s)
    used = defaultdict(int)
    for a, b in t.gluing:
        if a == b:
            report.add("SelfPairedSide", f"side {a} glued to itself")
            bad = True
        for x in (a, b):
            used[x] += 1
            if x not in seen:
                report.add("UnknownSide", f"gluing references missing side {x}")
                bad = True
    for x, count in sorted(used.items()):
        if count > 1:
            report.add("MultiplyGlued", f"side {x} appears in {count} gluing pairs")
            bad = True
    return bad


def validate(t: GluedTriangulation) -> ValidationReport:
    """Check every structural invariant and recompute the topological type."""
    report = ValidationReport(t.surface)
    if _structural_violations(t, report):
        return report
    try:
        n_arcs = arc_count(t.surface)
        n_tri = triangle_count(t.surface)
    except NegativeCount as exc:
        report.add("NegativeCount", str(exc))
        n_arcs = n_tri = None
    boundary = t.boundary_sides
    if n_arcs is not None:
        if len(t.gluing) != n_arcs:
            report.add("ArcCountMismatch", f"{len(t.gluing)} glued pairs, expected {n_arcs}")
        if len(boundary) != t.surface.total_marked:
            report.add("BoundarySideCountMismatch",
                       f"{len(boundary)} boundary sides, expected {t.surface.total_marked}")
        if len(t.triangles) != n_tri:
            report.add("TriangleCountMismatch", f"{len(t.triangles)} triangles, expected {n_tri}")
    if not t.triangles:
        report.add("Disconnected", "no triangles")
        return report
    try:
        t.canonical_form()
    except MalformedTriangulation:
        report.add("Disconnected", "the triangles do not form a connected surface")
        return report

    classes = corner_classes(t)
    vertices = set(classes.values())
    outgoing = {}
    for s in boundary:
        start, _ = side_endpoints(t, s, classes)
        if start in outgoing:
            report.add("NonManifoldBoundary", f"two boundary sides leave the vertex of side {s}")
            return report
        outgoing[start] = s
    cycles = []
    remaining = set(boundary)
    for s in boundary:
        if s not in remaining:
            continue
        length = 0
        cur = s
        while cur in remaining:
            remaining.discard(cur)
            length += 1
            end = side_endpoints(t, cur, classes)[1]
            if end not in outgoing:
                report.add("NonManifoldBoundary", f"boundary does not close up after side {cur}")
                return report
            cur = outgoing[end]
        cycles.append(length)
    boundary_vertices = set(outgoing)
    punctures = len(vertices - boundary_vertices)
    chi = len(vertices) - (len(t.gluing) + len(boundary)) + len(t.triangles)
    report.euler_characteristic = chi
    b = len(cycles)
    twice_genus = 2 - b - chi
    if b == 0:
        report.add("BoundaryMismatch", "the glued surface has no boundary")
        return report
    if twice_genus < 0 or twice_genus % 2:
        report.add("GenusMismatch", f"Euler characteristic {chi} gives non-integral genus")
        return report
    recomputed = CiliatedSurface(twice_genus // 2, b, punctures, tuple(sorted(cycles, reverse=True)))
    report.recomputed = recomputed
    declared = t.surface.canonical()
    if recomputed.genus != declared.genus:
        report.add("GenusMismatch", f"declared genus {declared.genus}, recomputed {recomputed.genus}")
    if recomputed.boundary_count != declared.boundary_count:
        report.add("BoundaryMismatch",
                   f"declared {declared.boundary_count} boundary components, recomputed {b}")
    if recomputed.puncture_count != declared.puncture_count:
        report.add("PunctureMismatch",
                   f"declared {declared.puncture_count} punctures, recomputed {punctures}")
    if recomputed.marked_points != declared.marked_points:
        report.add("MarkedPointMismatch",
                   f"declared {declared.marked_points}, recomputed {recomputed.marked_points}")
    return report


def require_valid(t: GluedTriangulation) -> None:
    report = validate(t)
    if not report.ok:
        codes = ", ".join(v["code"] for v in report.violations)
        raise MalformedTriangulation(f"invalid glued triangulation: {codes}")


# Conversion for polygons ------------------------------------------------------

def polygon_triangles(t: ExplicitTriangulation) -> list:
    """Vertex triples ``a < b < c`` bounding the triangles of a polygon triangulation."""
    if not t.surface.is_polygon:
        raise Unsupported("triangle extraction is only implemented for plain polygons")
    n = t.surface.marked_points[0]
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)} | {(a.i, a.j) for a in t.arcs}
    nbrs = defaultdict(set)
    for i, j in edges:
        nbrs[i].add(j)
        nbrs[j].add(i)
    out = []
    for a, b in sorted(edges):
        for c in sorted(nbrs[a] & nbrs[b]):
            if c > b:
                out.append((a, b, c))
    return out


def to_glued(t: ExplicitTriangulation):
    """Glued form of a polygon triangulation and the arc carried by each side.

    Boundary edge ``(i, i+1)`` gets label ``i``.  The k-th arc gets labels
    ``n + 2k`` (traversed upwards) and ``n + 2k + 1`` (traversed downwards).
    """
    n = t.surface.marked_points[0]
    index = {(a.i, a.j): k for k, a in enumerate(t.arcs)}
    names = {}

    def label(u, v):
        lo, hi = min(u, v), max(u, v)
        if (lo, hi) in index:
            k = index[(lo, hi)]
            side = n + 2 * k + (0 if u < v else 1)
            names[side] = t.arcs[k]
            return side
        return lo if hi == lo + 1 else n - 1

    triangles = [(label(a, b), label(b, c), label(c, a)) for a, b, c in polygon_triangles(t)]
    gluing = [(n + 2 * k, n + 2 * k + 1) for k in range(len(t.arcs))]
    return GluedTriangulation(t.surface, tuple(triangles), tuple(gluing)), names


def glued_polygon_chords(g: GluedTriangulation) -> tuple:
    """Recover the chords of a glued polygon triangulation.

    Vertex identities come from the boundary: label ``i`` must be the edge
    ``(i, i+1)``, as produced by :func:`to_glued`.
    """
    if not g.surface.is_polygon:
        raise Unsupported("chord recovery is only implemented for plain polygons")
    n = g.surface.marked_points[0]
    classes = corner_classes(g)
    vertex = {}
    for i in range(n):
        start, _ = side_endpoints(g, i, classes)
        vertex[start] = i
    chords = []
    for a, _ in g.gluing:
        u, v = side_endpoints(g, a, classes)
        i, j = sorted((vertex[u], vertex[v]))
        chords.append(Chord(i, j))
    return sort_arcs(chords)
