"""Bound quivers of angulations and partial triangulations, and inflation of
partial triangulations into (m+2)-angulations."""

from __future__ import annotations

from dataclasses import dataclass

from .angulation import (
    Angulation,
    ArcSide,
    Boundary,
    BoundaryEdge,
    Edge,
    Face,
    FreshNames,
    boundary_segments,
    face_runs,
    validate,
)
from .errors import InfeasibleParameters, ValidationError
from .quiver import Arrow, BoundQuiver


def arrow_id(x: ArcSide, y: ArcSide) -> str:
    """Name of the arrow at the corner where the walk turns from ``x`` to ``y``.

    A traversal occurs once in the whole map, so ``x`` alone identifies the
    corner; ``y`` is included for readability.
    """
    return f"{x.arc}{'+' if x.forward else '-'}{y.arc}"


def _arrow_key(a: Angulation, x: ArcSide) -> tuple[int, int]:
    return (a.arc_index[x.arc], 0 if x.forward else 1)


def _build(a: Angulation, relate) -> BoundQuiver:
    arrows: list[tuple[tuple[int, int], Arrow]] = []
    relations: list[tuple[tuple[int, int], tuple[str, str]]] = []
    for f in a.faces:
        edges = f.edges
        n = len(edges)
        for i in range(n):
            x, y = edges[i], edges[(i + 1) % n]
            if not (isinstance(x, ArcSide) and isinstance(y, ArcSide)):
                continue
            arrows.append((_arrow_key(a, x), Arrow(arrow_id(x, y), x.arc, y.arc)))
            z = edges[(i + 2) % n]
            if isinstance(z, ArcSide) and relate(f):
                relations.append((_arrow_key(a, x), (arrow_id(x, y), arrow_id(y, z))))
    arrows.sort(key=lambda t: t[0])
    relations.sort(key=lambda t: t[0])
    return BoundQuiver(tuple(x.id for x in a.arcs), tuple(ar for _, ar in arrows),
                       tuple(r for _, r in relations))


def build_quiver(a: Angulation) -> BoundQuiver:
    """One vertex per arc, one arrow per arc-arc corner (following the face
    walk), and a relation for every pair of consecutive corners of a face."""
    if a.partial:
        return build_quiver_partial(a)
    return _build(a, lambda f: True)


@dataclass(frozen=True)
class PartialViolation:
    face: str
    message: str

    def __str__(self) -> str:
        return f"face {self.face}: {self.message}"


def validate_partial(p: Angulation) -> list[PartialViolation]:
    out = []
    for f in p.faces:
        nb = f.boundary_edge_count
        if len(f) == 4 and nb != 1:
            out.append(PartialViolation(f.id, f"square with {nb} boundary edges (need exactly 1)"))
        elif len(f) == 3 and nb == 0:
            out.append(PartialViolation(f.id, "internal triangle (need a boundary edge)"))
        elif len(f) not in (3, 4):
            out.append(PartialViolation(f.id, f"{len(f)}-gon in a partial triangulation"))
    return out


def build_quiver_partial(p: Angulation) -> BoundQuiver:
    """Corners give arrows as for angulations; only corners inside squares
    compose to zero."""
    return _build(p, lambda f: len(f) == 4)


def inflate(p: Angulation, m: int) -> Angulation:
    """Realise a partial triangulation as an (m+2)-angulation with the same
    quiver by adding ``m + 2 - len(face)`` points to each face's boundary run."""
    if m < 2:
        raise InfeasibleParameters(f"inflation needs m >= 2, got {m}")
    if not p.partial:
        raise ValidationError("inflate expects a partial triangulation")
    bad = validate_partial(p)
    if bad:
        raise ValidationError("; ".join(map(str, bad)))
    fresh = FreshNames(p.points)
    inserted: dict[str, list[str]] = {}
    faces = []
    for f in p.faces:
        runs = [es for kind, es in face_runs(f) if kind == "boundary"]
        if len(runs) != 1:
            raise ValidationError(f"face {f.id!r} has {len(runs)} boundary runs")
        first: BoundaryEdge = runs[0][0]
        new_pts = [fresh() for _ in range(m + 2 - len(f))]
        inserted[first.tail] = new_pts
        chain = [first.tail, *new_pts, first.head]
        edges: list[Edge] = []
        for e in f.edges:
            if e == first:
                edges += [BoundaryEdge(u, v) for u, v in zip(chain, chain[1:])]
            else:
                edges.append(e)
        faces.append(Face(f.id, tuple(edges)))
    boundaries = []
    for b in p.boundaries:
        pts = []
        for q in b.points:
            pts.append(q)
            pts += inserted.get(q, [])
        boundaries.append(Boundary(b.name, tuple(pts)))
    out = Angulation(m, tuple(boundaries), p.arcs, tuple(faces))
    validate(out)
    return out


def run_insertions(p: Angulation, inflated: Angulation) -> list[int]:
    """Points added to each boundary segment, in counter-clockwise order."""
    old = set(p.points)
    return [sum(q not in old for q in seg.interior) for seg in boundary_segments(inflated)]


__all__ = [
    "arrow_id",
    "build_quiver",
    "build_quiver_partial",
    "inflate",
    "run_insertions",
    "validate_partial",
]
