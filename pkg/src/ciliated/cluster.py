"""Signed adjacency matrices of triangulations and matrix mutation.

Sign convention: triangles are read counterclockwise, and a triangle
contributes ``+1`` to ``B[i, j]`` when side ``j`` follows side ``i`` in the
clockwise order, i.e. when ``j`` immediately precedes ``i`` in the
counterclockwise listing.  Reversing the global orientation negates ``B``;
mutation commutes with negation, so the flip/mutation dictionary holds in
either convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import ball, build_flip_graph
from .errors import IndexOutOfRange, MalformedTriangulation, ParseError, Punctured, SelfFolded, UnlabeledSide
from .surface import CiliatedSurface
from .triangulation import ExplicitTriangulation, GluedTriangulation, flip_glued, require_valid, to_glued


@dataclass(frozen=True, eq=False)
class Seed:
    labels: tuple
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.int64)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", tuple(self.labels))
        if m.shape != (len(self.labels), len(self.labels)):
            raise ValueError(f"matrix shape {m.shape} does not match {len(self.labels)} labels")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def is_skew_symmetric(self) -> bool:
        return bool(np.array_equal(self.matrix, -self.matrix.T))

    def __eq__(self, other):
        if not isinstance(other, Seed):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.matrix, other.matrix)

    def to_text(self) -> str:
        rows = [" ".join(str(int(x)) for x in row) for row in self.matrix]
        return "\n".join(["labels: " + " ".join(self.labels)] + rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Seed:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("labels:"):
            raise ParseError("seed text must start with 'labels:'")
        labels = lines[0][len("labels:"):].split()
        try:
            rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
        except ValueError as exc:
            raise ParseError(f"bad matrix entry: {exc}") from None
        if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
            raise ParseError(f"expected a {len(labels)}x{len(labels)} matrix")
        return cls(tuple(labels), np.array(rows, dtype=np.int64).reshape(len(labels), len(labels)))

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.matrix.tolist()}


def glued_b_matrix(t: GluedTriangulation, names: dict | None = None) -> Seed:
    """Sum of the per-triangle contributions over all triangles.

    ``names`` maps side labels to arc labels; by default an arc is named
    ``"a~b"`` after its gluing pair.  Rows follow the order of ``t.gluing``.
    """
    if t.surface.puncture_count > 0:
        raise Punctured(f"B-matrices are built for unpunctured surfaces only, got {t.surface}")
    index = {}
    labels = []
    for k, (a, b) in enumerate(t.gluing):
        index[a] = index[b] = k
        labels.append(names[a].text() if names else f"{a}~{b}")
    sides = set(t.sides)
    for side in index:
        if side not in sides:
            raise UnlabeledSide(f"gluing mentions side {side}, which no triangle carries")
    n = len(labels)
    m = np.zeros((n, n), dtype=np.int64)
    for tri in t.triangles:
        if len(tri) != 3:
            raise MalformedTriangulation(f"triangle {tri} does not have three sides")
        arcs = [index.get(s) for s in tri]
        internal = [x for x in arcs if x is not None]
        if len(set(internal)) < len(internal):
            raise SelfFolded(f"triangle {tri} carries the same arc twice")
        for pos in range(3):
            i, j = arcs[pos], arcs[pos - 1]
            if i is None or j is None:
                continue
            m[i, j] += 1
            m[j, i] -= 1
    return Seed(tuple(labels), m)


def b_matrix(t, surface: CiliatedSurface | None = None) -> Seed:
    """Seed of an explicit polygon triangulation or a glued triangulation.

    Explicit triangulations are labelled by arc text forms in canonical order.
    """
    if isinstance(t, ExplicitTriangulation):
        surface = surface or t.surface
        if surface.puncture_count > 0:
            raise Punctured(f"B-matrices are built for unpunctured surfaces only, got {surface}")
        # to_glued numbers arcs in canonical order already
        glued, names = to_glued(t)
        return glued_b_matrix(glued, names)
    return glued_b_matrix(t)


def mutate(seed: Seed, k: int, new_label: str | None = None) -> Seed:
    """Matrix mutation at index ``k``.

    ``B'[i, j] = -B[i, j]`` if ``k`` is ``i`` or ``j``; otherwise
    ``B[i, j] + sgn(B[i, k]) * max(0, B[i, k] * B[k, j])``.
    """
    n = seed.rank
    if not 0 <= k < n:
        raise IndexOutOfRange(f"mutation index {k} outside 0..{n - 1}")
    b = seed.matrix
    col = b[:, k]
    row = b[k, :]
    out = b + np.sign(col)[:, None] * np.maximum(0, np.outer(col, row))
    out[k, :] = -b[k, :]
    out[:, k] = -b[:, k]
    labels = list(seed.labels)
    labels[k] = new_label if new_label is not None else labels[k] + "'"
    return Seed(tuple(labels), out)


def exchange_check(surface: CiliatedSurface | None = None, glued: GluedTriangulation | None = None,
                   radius: int = 2) -> dict:
    """Verify ``B(flip_k t) = mutate(B(t), k)`` on every flip edge.

    For an unpunctured polygon the whole flip graph is used; for a glued
    triangulation the flip ball of the given radius.
    """
    checked = 0
    failures = []
    if glued is not None:
        if glued.surface.puncture_count > 0:
            raise Punctured(f"exchange check needs an unpunctured surface, got {glued.surface}")
        require_valid(glued)
        graph = ball(glued, radius)
        for (i, j), (flipped, source) in zip(graph.edges, graph.provenance):
            side = int(flipped.split("~")[0])
            src = graph.triangulations[graph.vertices.index(source)]
            k = [a for a, _ in src.gluing].index(side)
            before, after = glued_b_matrix(src), glued_b_matrix(flip_glued(src, side))
            checked += 1
            if not np.array_equal(mutate(before, k).matrix, after.matrix):
                failures.append({"edge": [graph.vertices[i], graph.vertices[j]], "arc": flipped})
        target = glued.surface.descriptor()
    else:
        if surface.puncture_count > 0:
            raise Punctured(f"exchange check needs an unpunctured surface, got {surface}")
        graph = build_flip_graph(surface)
        for (i, j), (old, new) in zip(graph.edges, graph.provenance):
            src, dst = graph.triangulations[i], graph.triangulations[j]
            # edges are stored with i < j; orient them so src loses ``old``
            if old not in [a.text() for a in src.arcs]:
                src, dst = dst, src
            before, after = b_matrix(src), b_matrix(dst)
            k = before.labels.index(old)
            mutated = mutate(before, k, new_label=new)
            order = [after.labels.index(label) for label in mutated.labels]
            aligned = after.matrix[np.ix_(order, order)]
            checked += 1
            if not np.array_equal(mutated.matrix, aligned):
                failures.append({"edge": [graph.vertices[i], graph.vertices[j]], "flip": [old, new]})
        target = surface.descriptor()
    return {
        "surface": target,
        "edges": len(graph.edges),
        "verified": checked - len(failures),
        "failures": failures,
        "ok": not failures,
    }
