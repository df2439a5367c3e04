import itertools

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from ciliated.complexes import build_arc_complex, build_flip_graph
from ciliated.errors import Inconclusive, TooLarge, Unsupported
from ciliated.surface import ANNULUS_ONE_ONE, polygon
from ciliated.symmetry import (automorphisms, compose, dihedral_action, distinguish,
                               find_isomorphism, flipgraph_aut_check, graph_automorphisms,
                               inverse, maps_facets, mcg_action, rigidity_report)


def _nx(adj):
    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((i, j) for i, nbrs in enumerate(adj) for j in nbrs)
    return g


def oracle_aut_order(adj):
    g = _nx(adj)
    return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())


SMALL = [polygon(n) for n in range(4, 8)] + [polygon(n, 1) for n in range(1, 5)]


@pytest.mark.parametrize("surface, order", [
    (polygon(4), 2), (polygon(5), 10), (polygon(6), 12),
])
def test_automorphism_examples(surface, order):
    assert automorphisms(build_arc_complex(surface)).order == order


@pytest.mark.parametrize("surface", SMALL, ids=lambda s: s.descriptor())
def test_automorphisms_match_graph_matcher(surface):
    # arc complexes are flag complexes: facets are the maximal cliques
    c = build_arc_complex(surface)
    group = automorphisms(c)
    assert group.order == oracle_aut_order(c.adjacency())
    assert group.is_closed()
    assert all(maps_facets(c, c, p) for p in group.elements)


@pytest.mark.parametrize("surface", SMALL[:3] + SMALL[5:7], ids=lambda s: s.descriptor())
def test_flip_graph_automorphisms_match_graph_matcher(surface):
    adj = build_flip_graph(surface).adjacency()
    assert graph_automorphisms(adj).order == oracle_aut_order(adj)


@pytest.mark.parametrize("surface, order", [
    (polygon(6), 12), (polygon(3, 1), 6), (polygon(5), 10),
])
def test_mcg_action_examples(surface, order):
    group = mcg_action(surface)
    assert group.order == order
    assert all(g.simplicial for g in group.generators)


@pytest.mark.parametrize("surface", SMALL, ids=lambda s: s.descriptor())
def test_mcg_image_is_a_simplicial_subgroup(surface):
    c = build_arc_complex(surface)
    image = mcg_action(surface, c)
    aut = automorphisms(c)
    assert image.issubset(aut)
    assert aut.order % image.order == 0
    assert all(maps_facets(c, c, p) for p in image.elements)
    for p, q in itertools.product(image.elements, repeat=2):
        assert compose(p, q) in image
        assert inverse(p) in image


def test_mcg_action_refuses_other_surfaces():
    with pytest.raises(Unsupported):
        mcg_action(ANNULUS_ONE_ONE)


@pytest.mark.parametrize("n", [6, 7])
def test_rigidity_polygons(n):
    r = rigidity_report(polygon(n))
    assert r["autA"] == r["modImage"] == 2 * n
    assert r["equal"] and r["kernelTrivial"] and r["inRigidityRange"]


@pytest.mark.parametrize("n", [3, 4])
def test_rigidity_punctured(n):
    r = rigidity_report(polygon(n, 1))
    assert r["autA"] == r["modImage"] == 2 * n
    assert r["equal"] and r["kernelTrivial"]


def test_rigidity_square_outside_scope():
    r = rigidity_report(polygon(4))
    assert r["autA"] == r["modImage"] == 2 and r["equal"]
    assert not r["inRigidityRange"] and "note" in r
    # the half turn fixes both diagonals
    assert not r["kernelTrivial"]


def test_dihedral_action_kernel_on_punctured_digon():
    action = dict(dihedral_action(polygon(2, 1)))
    ident = tuple(range(4))
    assert [name for name, p in action.items() if p == ident] == ["r^0", "r^0 f"]


@pytest.mark.parametrize("surface", [polygon(5), polygon(6), polygon(3, 1), polygon(2, 1)],
                         ids=lambda s: s.descriptor())
def test_flipgraph_aut_check(surface):
    r = flipgraph_aut_check(surface)
    assert r["equal"] and r["inducedInjective"] and r["inducedContained"]


def test_flipgraph_aut_orders():
    assert flipgraph_aut_check(polygon(5))["autF"] == 10
    assert flipgraph_aut_check(polygon(6))["autF"] == 12


def test_too_large():
    with pytest.raises(TooLarge):
        automorphisms(build_arc_complex(polygon(7)), max_vertices=5)


def test_distinguish_examples():
    r = distinguish(polygon(6), polygon(3, 1))
    assert r["isomorphic"] is False
    assert r["invariants"]["a"]["vertices"] == r["invariants"]["b"]["vertices"] == 9
    assert "facets" in r["differing"]
    forced = distinguish(polygon(6), polygon(3, 1), force_search=True)
    assert forced["isomorphic"] is False
    assert forced["certificate"] == "invariant_vector+exhaustive_search"

    same = distinguish(polygon(5), polygon(5))
    assert same["isomorphic"] is True and same["sameHomeoType"]

    r = distinguish(polygon(4), polygon(1, 1))
    assert r["isomorphic"] is False and "vertices" in r["differing"]


def test_find_isomorphism_bound():
    c = build_arc_complex(polygon(6))
    with pytest.raises(Inconclusive):
        find_isomorphism(c, c, max_vertices=4)
    iso = find_isomorphism(c, c)
    assert iso is not None and maps_facets(c, c, iso)
