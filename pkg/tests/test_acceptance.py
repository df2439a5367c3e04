"""Acceptance criteria 1-9.

Each test prints one ``ACn PASS/FAIL`` line with its wall time and then
asserts.  Library caches are cleared first so timings are cold.
"""

import itertools
import random
import time
from math import comb

import networkx as nx
import numpy as np
import pytest

from ciliated import arcs as arcs_mod
from ciliated.cluster import Seed, b_matrix, exchange_check, mutate
from ciliated.complexes import (build_arc_complex, build_flip_graph, compatibility_cliques,
                                flip_iota_checks, stats)
from ciliated.errors import EmptyComplex
from ciliated.surface import (ANNULUS_ONE_ONE, SurfaceTag, arc_count, classify, complex_dim,
                              polygon)
from ciliated.symmetry import distinguish, flipgraph_aut_check, rigidity_report
from ciliated.triangulation import flip, flip_partner, flippable

POLYGONS = [polygon(n) for n in range(4, 10)]
PUNCTURED = [polygon(n, 1) for n in range(1, 7)]
FINITE = POLYGONS + PUNCTURED


@pytest.fixture
def report(capsys):
    arcs_mod._iota.cache_clear()
    arcs_mod.compatibility_table.cache_clear()
    start = time.perf_counter()

    def emit(name, ok, limit, detail=""):
        elapsed = time.perf_counter() - start
        passed = ok and (limit is None or elapsed < limit)
        bound = f" (limit {limit:g}s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\n{name} {'PASS' if passed else 'FAIL'} {elapsed:.2f}s{bound} {detail}".rstrip())
        return passed

    return emit


def test_ac1_low_dimensional_table(report):
    checks = {}
    for p in (1, 2, 3):
        s = polygon(p)
        refused = False
        try:
            build_arc_complex(s)
        except EmptyComplex:
            refused = True
        checks[f"empty p={p}"] = classify(s).tag is SurfaceTag.EMPTY and complex_dim(s) == -1 and refused
    checks["empty only there"] = all(classify(s).tag is not SurfaceTag.EMPTY
                                     for s in POLYGONS + PUNCTURED + [ANNULUS_ONE_ONE])
    monogon = build_arc_complex(polygon(1, 1))
    checks["monogon single vertex"] = len(monogon.vertices) == 1 and monogon.edges == []
    square = build_arc_complex(polygon(4))
    checks["square two isolated vertices"] = len(square.vertices) == 2 and square.edges == []
    pentagon = stats(build_arc_complex(polygon(5)))
    checks["pentagon diameter 2"] = pentagon["diameter"] == 2
    digon_c = build_arc_complex(polygon(2, 1))
    digon = stats(digon_c)
    checks["punctured digon diameter 3"] = digon["diameter"] == 3
    window = build_arc_complex(ANNULUS_ONE_ONE)
    adj = window.adjacency()
    checks["annulus path"] = (all(len(adj[k]) == 2 for k in range(len(adj)) if k not in window.frontier)
                              and nx.is_isomorphic(nx.Graph(window.edges), nx.path_graph(len(adj))))
    # the oracle, not the textual description, fixes the shapes reported here
    shape = (f"pentagon={'cycle' if set(pentagon['degree_sequence']) == {2} else 'other'} "
             f"digon_degrees={digon['degree_sequence']}")
    ok = all(checks.values())
    assert report("AC1", ok, 1.0, shape), checks


def test_ac2_counting_formulas(report):
    bad = []
    for s in FINITE:
        g = build_flip_graph(s)
        c = build_arc_complex(s)
        if any(len(t.arcs) != arc_count(s) for t in g.triangulations):
            bad.append((s.descriptor(), "size"))
        if c.dimension != complex_dim(s) or arc_count(s) != complex_dim(s) + 1:
            bad.append((s.descriptor(), "dim"))
    assert report("AC2", not bad, 10.0, f"{len(FINITE)} surfaces"), bad


def test_ac3_sphere_euler_characteristic(report):
    chis = {}
    for n in range(5, 10):
        chis[n] = stats(build_arc_complex(polygon(n)))["chi"]
    hexagon = build_arc_complex(polygon(6)).f_vector()
    ok = all(chis[n] == 1 + (-1) ** n for n in chis) and hexagon == [9, 21, 14] and chis[6] == 2
    assert report("AC3", ok, 10.0, f"chi={chis} hexagon={hexagon}"), (chis, hexagon)


def test_ac4_structural_propositions(report):
    failures = []
    for s in FINITE + [ANNULUS_ONE_ONE]:
        c = build_arc_complex(s)
        g = build_flip_graph(s)
        if len({len(f) for f in c.facets}) != 1:
            failures.append((s.descriptor(), "purity"))
        if max(c.codim1_incidence().values(), default=0) > 2:
            failures.append((s.descriptor(), "codim-1 incidence"))
        if not g.is_connected():
            failures.append((s.descriptor(), "connectivity"))
        if set(flip_iota_checks(g, s)) - {1}:
            failures.append((s.descriptor(), "iota"))
        for t in g.triangulations:
            for a in t.arcs:
                if flippable(t, a):
                    b = flip_partner(t, a)
                    if flip(flip(t, a), b) != t:
                        failures.append((s.descriptor(), "involution"))
    assert report("AC4", not failures, 30.0, f"{len(FINITE) + 1} complexes"), failures


@pytest.mark.parametrize("surface", [polygon(6), polygon(7), polygon(8), polygon(3, 1), polygon(4, 1)],
                         ids=lambda s: s.descriptor())
def test_ac5_rigidity(report, surface):
    n = surface.marked_points[0]
    r = rigidity_report(surface)
    ok = r["autA"] == r["modImage"] == 2 * n and r["equal"] and r["kernelTrivial"]
    assert report(f"AC5[{surface.descriptor()}]", ok, 60.0,
                  f"autA={r['autA']} modImage={r['modImage']} kernel={r['kernel']}"), r


def test_ac5_pentagon_observed(report):
    r = rigidity_report(polygon(5))
    ok = r["autA"] == 10 and not r["inRigidityRange"]
    assert report("AC5[0,1,0;5 observed]", ok, 60.0, f"autA={r['autA']} (dim 1, outside scope)"), r


@pytest.mark.parametrize("surface", [polygon(5), polygon(6), polygon(3, 1)], ids=lambda s: s.descriptor())
def test_ac6_flip_graph_automorphisms(report, surface):
    r = flipgraph_aut_check(surface)
    assert report(f"AC6[{surface.descriptor()}]", r["equal"], 60.0,
                  f"autA={r['autA']} autF={r['autF']}"), r


def test_ac7_non_isomorphism_certificates(report):
    sharp = distinguish(polygon(6), polygon(3, 1), force_search=True)
    ok = (sharp["isomorphic"] is False and "exhaustive_search" in sharp["certificate"]
          and sharp["invariants"]["a"]["vertices"] == sharp["invariants"]["b"]["vertices"] == 9)
    small = [s for s in FINITE if len(build_arc_complex(s).vertices) <= 9]
    pairs = 0
    failures = []
    for a, b in itertools.combinations(small, 2):
        r = distinguish(a, b)
        pairs += 1
        if r["isomorphic"] or r["certificate"] not in ("invariant_vector", "invariant_vector+exhaustive_search",
                                                        "exhaustive_search"):
            failures.append((a.descriptor(), b.descriptor()))
    ok = ok and not failures
    assert report("AC7", ok, 120.0, f"hexagon vs 0,1,1;3 by {sharp['certificate']}; "
                  f"{len(small)} complexes, {pairs} pairs certified"), failures


def test_ac8_cluster_dictionary(report):
    skew_ok = all(b_matrix(t).is_skew_symmetric()
                  for s in POLYGONS for t in build_flip_graph(s).triangulations)
    rng = random.Random(2024)
    involution_ok = True
    for _ in range(1000):
        n = rng.randint(1, 8)
        m = np.zeros((n, n), dtype=np.int64)
        for i, j in itertools.combinations(range(n), 2):
            v = rng.randint(-3, 3)
            m[i, j], m[j, i] = v, -v
        seed = Seed(tuple(map(str, range(n))), m)
        k = rng.randrange(n)
        involution_ok &= np.array_equal(mutate(mutate(seed, k), k).matrix, m)
    checks = [exchange_check(s) for s in POLYGONS]
    exchange_ok = all(r["ok"] and r["verified"] == r["edges"] for r in checks)
    edges = sum(r["edges"] for r in checks)
    ok = skew_ok and involution_ok and exchange_ok
    assert report("AC8", ok, 30.0, f"{edges} flip edges verified"), (skew_ok, involution_ok, checks)


def test_ac9_oracle_agreement(report):
    mismatches = []
    for s in FINITE:
        c = build_arc_complex(s)
        if set(c.facets) != compatibility_cliques(s, c.vertices):
            mismatches.append(s.descriptor())
    # closed forms as a third, independent witness: Catalan numbers and C(2n-1, n)
    third = all(len(build_arc_complex(polygon(n)).facets) == comb(2 * n - 4, n - 2) // (n - 1)
                for n in range(4, 10))
    third &= all(len(build_arc_complex(polygon(n, 1)).facets) == comb(2 * n - 1, n) for n in range(1, 7))
    ok = not mismatches and third
    assert report("AC9", ok, None, f"{len(FINITE)} instances"), mismatches
