"""Arc complexes, flip graphs and flip-graph balls."""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .arcs import compatible, enumerate_arcs, iota, parse_arc
from .errors import EmptyComplex, InfiniteType, NotFlippable, OracleMismatch
from .surface import CiliatedSurface, SurfaceTag, classify, is_finite_type
from .triangulation import (ExplicitTriangulation, GluedTriangulation, fan, flip_partner, flip_quad,
                            flippable_sides, require_valid)

DEFAULT_WINDOW = 4


@dataclass(frozen=True)
class SimplicialComplex:
    """Arc complex given by its vertices and maximal simplices.

    ``facets`` are sorted tuples of vertex indices.  ``frontier`` marks the
    artificial endpoints of a finite window into an infinite complex.
    """
    surface: CiliatedSurface
    vertices: tuple
    facets: tuple
    frontier: frozenset = frozenset()

    @property
    def labels(self) -> list:
        return [v.text() for v in self.vertices]

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @property
    def edges(self) -> list:
        out = set()
        for f in self.facets:
            out.update(itertools.combinations(f, 2))
        return sorted(out)

    def adjacency(self) -> list:
        adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def facet_incidence(self) -> list:
        """Number of facets through each vertex."""
        counts = [0] * len(self.vertices)
        for f in self.facets:
            for v in f:
                counts[v] += 1
        return counts

    def faces(self) -> set:
        out = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        return out

    def f_vector(self) -> list:
        counts = Counter(len(face) for face in self.faces())
        return [counts[k] for k in range(1, self.dimension + 2)]

    def codim1_incidence(self) -> Counter:
        """How many facets contain each codimension-1 face."""
        counts = Counter()
        for f in self.facets:
            for v in f:
                counts[tuple(x for x in f if x != v)] += 1
        return counts

    def facet_adjacency(self) -> list:
        """Pairs of facets sharing a codimension-1 face."""
        by_face = {}
        for k, f in enumerate(self.facets):
            for v in f:
                by_face.setdefault(tuple(x for x in f if x != v), []).append(k)
        pairs = set()
        for ks in by_face.values():
            pairs.update(itertools.combinations(sorted(ks), 2))
        return sorted(pairs)

    def to_dict(self) -> dict:
        return {
            "surface": self.surface.descriptor(),
            "vertices": self.labels,
            "facets": [[self.vertices[v].text() for v in f] for f in self.facets],
            "frontier": [self.vertices[v].text() for v in sorted(self.frontier)],
        }


@dataclass(frozen=True)
class FlipGraph:
    """Triangulations as vertices, flips as edges.

    ``provenance[k]`` describes the flip producing ``edges[k]``.
    """
    vertices: tuple
    edges: tuple
    provenance: tuple
    triangulations: tuple = field(repr=False, default=())
    frontier: frozenset = frozenset()
    depth: tuple = ()

    def adjacency(self) -> list:
        adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def degrees(self) -> list:
        return [len(a) for a in self.adjacency()]

    def is_connected(self) -> bool:
        return _eccentricity(self.adjacency(), 0) is not None if self.vertices else True

    def to_dict(self) -> dict:
        out = {
            "vertices": list(self.vertices),
            "edges": [[self.vertices[i], self.vertices[j]] for i, j in self.edges],
            "flips": [list(p) for p in self.provenance],
            "frontier": [self.vertices[v] for v in sorted(self.frontier)],
        }
        if self.depth:
            out["depth"] = list(self.depth)
        return out


def _require_explicit(surface: CiliatedSurface, winding_bound):
    if surface.is_annulus_one_one:
        bound = DEFAULT_WINDOW if winding_bound is None else winding_bound
        if bound < 1:
            raise ValueError("the annulus window needs winding_bound >= 1")
        return bound
    if not is_finite_type(surface):
        raise InfiniteType(f"{surface} is not of finite type")
    if classify(surface).tag is SurfaceTag.EMPTY:
        raise EmptyComplex(f"the arc complex of {surface} is empty")
    return None


def _in_window(t: ExplicitTriangulation, bound):
    return bound is None or all(abs(a.w) <= bound for a in t.arcs)


def flip_closure(surface: CiliatedSurface, winding_bound: int | None = None):
    """Breadth-first flip closure from :func:`fan`.

    Returns the triangulations in discovery order and the flip edges as
    ``(i, j, removed_arc, added_arc)``.
    """
    bound = _require_explicit(surface, winding_bound)
    start = fan(surface)
    index = {start.arcs: 0}
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        t = queue.popleft()
        i = index[t.arcs]
        for arc in t.arcs:
            try:
                new_arc = flip_partner(t, arc)
            except NotFlippable:
                continue
            u = ExplicitTriangulation(surface, tuple(c for c in t.arcs if c != arc) + (new_arc,))
            if not _in_window(u, bound):
                continue
            if u.arcs not in index:
                index[u.arcs] = len(order)
                order.append(u)
                queue.append(u)
            j = index[u.arcs]
            if i < j:
                edges.append((i, j, arc, new_arc))
    return order, edges


def compatibility_cliques(surface: CiliatedSurface, vertices) -> set:
    """Maximal pairwise-compatible arc sets, straight from ``iota``."""
    g = nx.Graph()
    g.add_nodes_from(range(len(vertices)))
    for i, j in itertools.combinations(range(len(vertices)), 2):
        if compatible(vertices[i], vertices[j], surface):
            g.add_edge(i, j)
    return {tuple(sorted(c)) for c in nx.find_cliques(g)}


def build_arc_complex(surface: CiliatedSurface, winding_bound: int | None = None) -> SimplicialComplex:
    """Arc complex with facets found by flip closure, checked against clique enumeration."""
    bound = _require_explicit(surface, winding_bound)
    vertices = enumerate_arcs(surface, bound)
    index = {a: k for k, a in enumerate(vertices)}
    order, _ = flip_closure(surface, bound)
    by_flips = {tuple(sorted(index[a] for a in t.arcs)) for t in order}
    by_cliques = compatibility_cliques(surface, vertices)
    if by_flips != by_cliques:
        raise OracleMismatch(
            f"{surface}: flip closure found {len(by_flips)} facets, "
            f"compatibility cliques {len(by_cliques)}")
    frontier = frozenset()
    if bound is not None:
        frontier = frozenset(k for k, a in enumerate(vertices) if abs(a.w) == bound)
    return SimplicialComplex(surface, vertices, tuple(sorted(by_flips)), frontier)


def build_flip_graph(surface: CiliatedSurface, winding_bound: int | None = None) -> FlipGraph:
    order, edges = flip_closure(surface, winding_bound)
    keys = [tuple(a.key() for a in t.arcs) for t in order]
    rank = {k: r for r, k in enumerate(sorted(range(len(order)), key=lambda k: keys[k]))}
    ordered = sorted(order, key=lambda t: tuple(a.key() for a in t.arcs))
    rows = sorted((min(rank[i], rank[j]), max(rank[i], rank[j]), old.text(), new.text())
                  for i, j, old, new in edges)
    frontier = frozenset()
    if surface.is_annulus_one_one:
        bound = DEFAULT_WINDOW if winding_bound is None else winding_bound
        frontier = frozenset(k for k, t in enumerate(ordered) if any(abs(a.w) == bound for a in t.arcs))
    return FlipGraph(
        vertices=tuple(t.key() for t in ordered),
        edges=tuple((i, j) for i, j, _, _ in rows),
        provenance=tuple((old, new) for _, _, old, new in rows),
        triangulations=tuple(ordered),
        frontier=frontier,
    )


# Balls in flip graphs of glued triangulations ---------------------------------

def _fingerprint(t: GluedTriangulation, lam: dict) -> tuple:
    return tuple(sorted(lam[a] for a, _ in t.gluing))


def ball(t0: GluedTriangulation, radius: int, seed: int = 0) -> FlipGraph:
    """Every triangulation within ``radius`` flips of ``t0``.

    Glued data only identifies triangulations up to relabeling, which
    conflates triangulations related by a mapping class.  Vertices are
    therefore keyed by lambda lengths: generic positive weights on the sides of
    ``t0`` are propagated through each flip by the Ptolemy relation
    ``e * f = a * c + b * d``.  The weight of an arc depends only on its
    isotopy class, so the sorted weights of a triangulation identify it.

    ``provenance[k]`` is ``(arc, source)``: the gluing pair flipped and the
    vertex it was flipped from.  Labels are only meaningful relative to that
    source, since a vertex reached along two paths is stored once.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    require_valid(t0)
    rng = random.Random(seed)
    lam = {}
    for s in t0.boundary_sides:
        lam[s] = Fraction(rng.randint(2, 10 ** 6))
    for a, b in t0.gluing:
        lam[a] = lam[b] = Fraction(rng.randint(2, 10 ** 6))

    states = [(t0, lam)]
    index = {_fingerprint(t0, lam): 0}
    depth = [0]
    edges = {}
    head = 0
    while head < len(states):
        t, weights = states[head]
        i = head
        head += 1
        for side in flippable_sides(t):
            new, (a, b, c, d) = flip_quad(t, side)
            w = dict(weights)
            value = (w[a] * w[c] + w[b] * w[d]) / w[side]
            w[side] = w[new.partner(side)] = value
            key = _fingerprint(new, w)
            if key not in index:
                if depth[i] == radius:
                    continue
                index[key] = len(states)
                states.append((new, w))
                depth.append(depth[i] + 1)
            j = index[key]
            if i != j:
                edges.setdefault((min(i, j), max(i, j)), (f"{side}~{new.partner(side)}", f"t{i}"))
    items = sorted(edges.items())
    return FlipGraph(
        vertices=tuple(f"t{k}" for k in range(len(states))),
        edges=tuple(e for e, _ in items),
        provenance=tuple(p for _, p in items),
        triangulations=tuple(t for t, _ in states),
        depth=tuple(depth),
    )


# Statistics -------------------------------------------------------------------

def _eccentricity(adj, source):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if len(dist) < len(adj):
        return None
    return max(dist.values())


def graph_diameter(adj) -> int | None:
    """All-pairs BFS diameter; ``None`` when the graph is disconnected."""
    best = 0
    for v in range(len(adj)):
        e = _eccentricity(adj, v)
        if e is None:
            return None
        best = max(best, e)
    return best


def stats(c: SimplicialComplex) -> dict:
    if not c.facets:
        raise EmptyComplex("no statistics for the empty complex")
    f = c.f_vector()
    adj = c.adjacency()
    diameter = graph_diameter(adj)
    return {
        "surface": c.surface.descriptor(),
        "dim": c.dimension,
        "vertices": len(c.vertices),
        "edges": len(c.edges),
        "facets": len(c.facets),
        "f_vector": f,
        "chi": sum((-1) ** k * fk for k, fk in enumerate(f)),
        "diameter": diameter,
        "connected": diameter is not None,
        "degree_sequence": sorted((len(a) for a in adj), reverse=True),
    }


def flip_graph_stats(g: FlipGraph) -> dict:
    adj = g.adjacency()
    diameter = graph_diameter(adj)
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "diameter": diameter,
        "connected": diameter is not None,
        "degree_sequence": sorted((len(a) for a in adj), reverse=True),
    }


def dual_consistent(c: SimplicialComplex, g: FlipGraph) -> bool:
    """Flip-graph vertices are the facets and its edges the facet adjacencies."""
    # vertices are in canonical arc order, so facet index order is arc order
    position = {" ".join(c.vertices[v].text() for v in f): k for k, f in enumerate(c.facets)}
    if set(position) != set(g.vertices) or len(position) != len(g.vertices):
        return False
    mapped = {tuple(sorted((position[g.vertices[i]], position[g.vertices[j]]))) for i, j in g.edges}
    return mapped == set(c.facet_adjacency())


def flip_iota_checks(g: FlipGraph, surface: CiliatedSurface) -> list:
    """``iota(old, new)`` over every flip edge."""
    return [iota(parse_arc(old), parse_arc(new), surface) for old, new in g.provenance]
