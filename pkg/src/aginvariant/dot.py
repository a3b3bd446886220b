"""Graphviz DOT text for bound quivers and angulations."""

from __future__ import annotations

from .angulation import Angulation
from .quiver import BoundQuiver


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def quiver_dot(bq: BoundQuiver, name: str = "Q") -> str:
    """Arrows as solid edges; each relation ``ab`` as a dashed edge from the
    source of ``a`` to the target of ``b``."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    lines += [f"  {_q(v)};" for v in bq.vertices]
    for a in bq.arrows:
        lines.append(f"  {_q(a.source)} -> {_q(a.target)} [label={_q(a.id)}];")
    for x, y in bq.relations:
        s, t = bq.arrow(x).source, bq.arrow(y).target
        lines.append(f"  {_q(s)} -> {_q(t)} [style=dashed, arrowhead=none, "
                     f"color=gray, label={_q(x + ' ' + y)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def angulation_dot(a: Angulation, name: str = "T") -> str:
    """Boundary circles as clusters of marked points, arcs as labelled bold
    undirected edges."""
    lines = [f"graph {_q(name)} {{", "  node [shape=point, width=0.08];"]
    ends = a.arc_endpoints
    for b in a.boundaries:
        lines.append(f"  subgraph {_q('cluster_' + b.name)} {{")
        lines.append(f"    label={_q(b.name)};")
        for p in b.points:
            fill = "black" if p in ends else "white"
            lines.append(f"    {_q(p)} [xlabel={_q(p)}, style=filled, fillcolor={fill}];")
        pts = b.points
        for j, p in enumerate(pts):
            lines.append(f"    {_q(p)} -- {_q(pts[(j + 1) % len(pts)])} [color=gray];")
        lines.append("  }")
    for arc in a.arcs:
        lines.append(f"  {_q(arc.u)} -- {_q(arc.v)} [label={_q(arc.id)}, penwidth=2];")
    lines.append("}")
    return "\n".join(lines) + "\n"
