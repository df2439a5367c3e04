"""DOT export with stable node ids."""

from __future__ import annotations


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(name: str, nodes, edges) -> str:
    lines = [f"graph {_quote(name)} {{"]
    for v in nodes:
        lines.append(f"  {_quote(v)};")
    for a, b in edges:
        lines.append(f"  {_quote(a)} -- {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_dot(c) -> str:
    labels = c.labels
    return to_dot(f"A({c.surface.descriptor()})", labels, [(labels[i], labels[j]) for i, j in c.edges])


def flip_graph_dot(g, name: str) -> str:
    return to_dot(name, g.vertices, [(g.vertices[i], g.vertices[j]) for i, j in g.edges])
