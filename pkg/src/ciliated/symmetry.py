"""Automorphism groups, the dihedral mapping class action, and rigidity checks.

Groups are tiny here, so they are stored as explicit sets of permutations
(tuples of images) together with a generating set.  Isomorphisms are found by
backtracking on the 1-skeleton with invariant pruning; a complete map is
accepted only if it also carries facets onto facets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arcs import transform_arc
from .complexes import SimplicialComplex, build_arc_complex, build_flip_graph
from .errors import Inconclusive, InfiniteType, TooLarge, Unsupported
from .surface import CiliatedSurface, complex_dim, is_finite_type, same_homeo_type

DEFAULT_MAX_VERTICES = 64


def compose(p, q) -> tuple:
    """``p after q``."""
    return tuple(p[i] for i in q)


def inverse(p) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity(n: int) -> tuple:
    return tuple(range(n))


def closure(generators, degree: int) -> frozenset:
    elements = {identity(degree)}
    frontier = list(elements)
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = compose(g, x)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elements)


@dataclass(frozen=True)
class VertexPermutation:
    images: tuple
    simplicial: bool


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    elements: frozenset
    generators: tuple

    @classmethod
    def from_elements(cls, elements, degree: int, is_simplicial=None) -> PermutationGroup:
        elements = frozenset(tuple(e) for e in elements)
        gens = []
        span = frozenset({identity(degree)})
        for e in sorted(elements):
            if e not in span:
                gens.append(e)
                span = closure(gens, degree)
        flag = (lambda p: True) if is_simplicial is None else is_simplicial
        return cls(degree, elements, tuple(VertexPermutation(g, flag(g)) for g in gens))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self.elements

    def is_closed(self) -> bool:
        if identity(self.degree) not in self.elements:
            return False
        return all(compose(p, q) in self.elements and inverse(p) in self.elements
                   for p in self.elements for q in self.elements)

    def issubset(self, other: PermutationGroup) -> bool:
        return self.elements <= other.elements


# Backtracking isomorphism search ----------------------------------------------

def _search_order(adj, inv):
    n = len(adj)
    class_size = {}
    for x in inv:
        class_size[x] = class_size.get(x, 0) + 1
    placed = []
    seen = set()
    links = [0] * n
    while len(placed) < n:
        v = min((v for v in range(n) if v not in seen),
                key=lambda v: (-links[v], class_size[inv[v]], inv[v], v))
        placed.append(v)
        seen.add(v)
        for w in adj[v]:
            links[w] += 1
    return placed


def isomorphisms(adj1, adj2, inv1, inv2):
    """Yield every bijection ``V1 -> V2`` preserving adjacency and invariants."""
    n = len(adj1)
    if n != len(adj2) or sorted(inv1) != sorted(inv2):
        return
    order = _search_order(adj1, inv1)
    by_class = {}
    for w in range(n):
        by_class.setdefault(inv2[w], []).append(w)
    phi = [-1] * n
    used = [False] * n

    def candidates(v):
        anchor = next((u for u in adj1[v] if phi[u] >= 0), None)
        pool = sorted(adj2[phi[anchor]]) if anchor is not None else by_class.get(inv1[v], [])
        for w in pool:
            if used[w] or inv2[w] != inv1[v]:
                continue
            if all((u in adj1[v]) == (phi[u] in adj2[w]) for u in placed_so_far):
                yield w

    placed_so_far = []

    def extend(depth):
        if depth == n:
            yield tuple(phi)
            return
        v = order[depth]
        for w in list(candidates(v)):
            phi[v] = w
            used[w] = True
            placed_so_far.append(v)
            yield from extend(depth + 1)
            placed_so_far.pop()
            used[w] = False
            phi[v] = -1

    yield from extend(0)


def _complex_invariants(c: SimplicialComplex):
    adj = c.adjacency()
    incidence = c.facet_incidence()
    return adj, [(len(adj[v]), incidence[v], v in c.frontier) for v in range(len(c.vertices))]


def maps_facets(c1: SimplicialComplex, c2: SimplicialComplex, perm) -> bool:
    target = set(c2.facets)
    return all(tuple(sorted(perm[v] for v in f)) in target for f in c1.facets) \
        and len(c1.facets) == len(c2.facets)


def automorphisms(c: SimplicialComplex, max_vertices: int = DEFAULT_MAX_VERTICES) -> PermutationGroup:
    """Full group of vertex bijections carrying facets onto facets."""
    n = len(c.vertices)
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds the automorphism search bound {max_vertices}")
    adj, inv = _complex_invariants(c)
    found = [p for p in isomorphisms(adj, adj, inv, inv) if maps_facets(c, c, p)]
    return PermutationGroup.from_elements(found, n, lambda p: maps_facets(c, c, p))


def graph_automorphisms(adj, max_vertices: int = DEFAULT_MAX_VERTICES) -> PermutationGroup:
    n = len(adj)
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds the automorphism search bound {max_vertices}")
    inv = [len(a) for a in adj]
    return PermutationGroup.from_elements(isomorphisms(adj, adj, inv, inv), n)


# The dihedral action -----------------------------------------------------------

def dihedral_elements(n: int):
    """``(name, map)`` for the 2n relabelings ``i -> (+-i + k) mod n``."""
    out = []
    for reflect in (False, True):
        for k in range(n):
            name = f"r^{k}" + (" f" if reflect else "")
            if reflect:
                out.append((name, lambda i, k=k: (-i + k) % n))
            else:
                out.append((name, lambda i, k=k: (i + k) % n))
    return out


def _require_disk(surface: CiliatedSurface):
    if not (surface.is_polygon or surface.is_punctured_polygon):
        raise Unsupported(f"the mapping class action is only generated for (punctured) polygons, not {surface}")


def dihedral_action(surface: CiliatedSurface, c: SimplicialComplex | None = None):
    """Vertex permutation induced by every dihedral relabeling."""
    _require_disk(surface)
    c = c if c is not None else build_arc_complex(surface)
    n = surface.marked_points[0]
    index = {a: k for k, a in enumerate(c.vertices)}
    return [(name, tuple(index[transform_arc(a, n, sigma)] for a in c.vertices))
            for name, sigma in dihedral_elements(n)]


def flip_graph_action(surface: CiliatedSurface, graph=None):
    """Permutation of triangulations induced by every dihedral relabeling."""
    _require_disk(surface)
    graph = graph if graph is not None else build_flip_graph(surface)
    n = surface.marked_points[0]
    index = {t.arcs: k for k, t in enumerate(graph.triangulations)}
    out = []
    for name, sigma in dihedral_elements(n):
        perm = []
        for t in graph.triangulations:
            image = tuple(sorted((transform_arc(a, n, sigma) for a in t.arcs), key=lambda a: a.key()))
            perm.append(index[image])
        out.append((name, tuple(perm)))
    return out


def mcg_action(surface: CiliatedSurface, c: SimplicialComplex | None = None) -> PermutationGroup:
    """Image of the mapping class group, generated by rotation and reflection."""
    c = c if c is not None else build_arc_complex(surface)
    action = dihedral_action(surface, c)
    n = surface.marked_points[0]
    rotation = dict(action)["r^1" if n > 1 else "r^0"]
    reflection = dict(action)["r^0 f"]
    elements = closure([rotation, reflection], len(c.vertices))
    group = PermutationGroup.from_elements(elements, len(c.vertices), lambda p: maps_facets(c, c, p))
    gens = tuple(VertexPermutation(g, maps_facets(c, c, g)) for g in (rotation, reflection))
    return PermutationGroup(group.degree, group.elements, gens)


# Reports ------------------------------------------------------------------------

def _require_finite(surface):
    if not is_finite_type(surface):
        raise InfiniteType(f"{surface} is not of finite type")


def rigidity_report(surface: CiliatedSurface, max_vertices: int = DEFAULT_MAX_VERTICES) -> dict:
    _require_finite(surface)
    c = build_arc_complex(surface)
    aut = automorphisms(c, max_vertices)
    image = mcg_action(surface, c)
    action = dihedral_action(surface, c)
    ident = identity(len(c.vertices))
    kernel = [name for name, p in action if p == ident]
    dim = complex_dim(surface)
    report = {
        "surface": surface.descriptor(),
        "dim": dim,
        "autA": aut.order,
        "modImage": image.order,
        "dihedralOrder": len(action),
        "equal": aut.order == image.order and image.issubset(aut),
        "imageSimplicial": all(g.simplicial for g in image.generators),
        "kernel": kernel,
        "kernelTrivial": kernel == ["r^0"],
        "inRigidityRange": dim >= 2,
    }
    if dim >= 1:
        graph = build_flip_graph(surface)
        flip_ident = identity(len(graph.vertices))
        flip_kernel = [name for name, p in flip_graph_action(surface, graph) if p == flip_ident]
        report["flipKernel"] = flip_kernel
        report["flipKernelTrivial"] = flip_kernel == ["r^0"]
    if dim < 2:
        report["note"] = "outside the dim >= 2 rigidity range; reported as observed"
    return report


def induced_flip_permutation(c: SimplicialComplex, graph, perm) -> tuple:
    """Permutation of flip-graph vertices induced by a complex automorphism."""
    key = {}
    for k, f in enumerate(c.facets):
        key[f] = k
    position = {" ".join(c.vertices[v].text() for v in f): k for k, f in enumerate(c.facets)}
    facet_of_vertex = [position[v] for v in graph.vertices]
    vertex_of_facet = {f: i for i, f in enumerate(facet_of_vertex)}
    out = []
    for f_index in facet_of_vertex:
        image = tuple(sorted(perm[v] for v in c.facets[f_index]))
        out.append(vertex_of_facet[key[image]])
    return tuple(out)


def flipgraph_aut_check(surface: CiliatedSurface, max_vertices: int = DEFAULT_MAX_VERTICES) -> dict:
    """Compare Aut of the flip graph with Aut of the arc complex.

    Beyond comparing orders, each complex automorphism is pushed to the flip
    graph and the resulting map is checked to land injectively in Aut(F).
    """
    _require_finite(surface)
    if complex_dim(surface) < 1:
        raise Unsupported(f"the flip graph of {surface} needs dim A >= 1")
    c = build_arc_complex(surface)
    graph = build_flip_graph(surface)
    aut_a = automorphisms(c, max_vertices)
    aut_f = graph_automorphisms(graph.adjacency(), max_vertices)
    induced = {induced_flip_permutation(c, graph, p) for p in aut_a.elements}
    return {
        "surface": surface.descriptor(),
        "autA": aut_a.order,
        "autF": aut_f.order,
        "equal": aut_a.order == aut_f.order,
        "inducedInjective": len(induced) == aut_a.order,
        "inducedContained": induced <= aut_f.elements,
    }


def invariant_vector(c: SimplicialComplex) -> dict:
    adj = c.adjacency()
    facet_degree = [0] * len(c.facets)
    for i, j in c.facet_adjacency():
        facet_degree[i] += 1
        facet_degree[j] += 1
    return {
        "vertices": len(c.vertices),
        "facets": len(c.facets),
        "degree_sequence": sorted((len(a) for a in adj), reverse=True),
        "facet_adjacency_degrees": sorted(facet_degree, reverse=True),
    }


def find_isomorphism(c1: SimplicialComplex, c2: SimplicialComplex, max_vertices: int = DEFAULT_MAX_VERTICES):
    """First facet-preserving vertex bijection, or ``None``."""
    if max(len(c1.vertices), len(c2.vertices)) > max_vertices:
        raise Inconclusive(f"isomorphism search aborted: more than {max_vertices} vertices")
    adj1, inv1 = _complex_invariants(c1)
    adj2, inv2 = _complex_invariants(c2)
    for p in isomorphisms(adj1, adj2, inv1, inv2):
        if maps_facets(c1, c2, p):
            return p
    return None


def distinguish(a: CiliatedSurface, b: CiliatedSurface, max_vertices: int = DEFAULT_MAX_VERTICES,
                force_search: bool = False) -> dict:
    """Decide whether the arc complexes of two finite-type surfaces are isomorphic.

    Differing invariant vectors certify non-isomorphism on their own; otherwise
    (or with ``force_search``) an exhaustive search decides.
    """
    _require_finite(a)
    _require_finite(b)
    ca, cb = build_arc_complex(a), build_arc_complex(b)
    va, vb = invariant_vector(ca), invariant_vector(cb)
    differing = sorted(k for k in va if va[k] != vb[k])
    result = {
        "a": a.descriptor(),
        "b": b.descriptor(),
        "sameHomeoType": same_homeo_type(a, b),
        "invariants": {"a": va, "b": vb},
        "differing": differing,
    }
    if differing and not force_search:
        result.update(isomorphic=False, certificate="invariant_vector")
        return result
    iso = find_isomorphism(ca, cb, max_vertices)
    if iso is None:
        result.update(isomorphic=False,
                      certificate="invariant_vector+exhaustive_search" if differing else "exhaustive_search")
    else:
        result.update(isomorphic=True, certificate="isomorphism",
                      isomorphism={ca.vertices[i].text(): cb.vertices[j].text() for i, j in enumerate(iso)})
    return result
