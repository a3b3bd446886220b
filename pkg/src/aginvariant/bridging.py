"""Boundary bridges and the closed-form AG-invariant of an angulation."""

from __future__ import annotations

import logging
from typing import Sequence

from .angulation import (
    Angulation,
    ArcSide,
    BoundaryEdge,
    Edge,
    Face,
    FreshNames,
    boundary_segments,
    face_runs,
    internal_faces,
    marked_points_MT,
    rebuild,
)
from .errors import InfeasibleParameters, ValidationError
from .quiver import AGFunction

log = logging.getLogger(__name__)


def _fresh_run(tail: str, head: str, count: int, fresh: FreshNames) -> tuple[list[str], list[Edge]]:
    pts = [fresh() for _ in range(count)]
    chain = [tail, *pts, head]
    return pts, [BoundaryEdge(u, v) for u, v in zip(chain, chain[1:])]


def _run_interior(a: Angulation, run: Sequence[Edge]) -> list[str]:
    return [a.head(e) for e in run[:-1]]


def remove_boundary_bridges(a: Angulation) -> Angulation:
    """Cut every degenerate face along its arc runs.

    A face ``t_1 B_1 ... t_r B_r`` with ``r >= 2`` is replaced by the faces
    ``t_i`` + a new boundary run from the head of ``t_i`` back to its tail
    carrying ``m + 1 - k_i`` new points, where ``k_i`` counts the arcs of
    ``t_i``.  The old runs ``B_i`` and their interior points disappear.
    """
    if a.partial:
        raise ValidationError("boundary bridges are defined for (m+2)-angulations only")
    runs_by_face = [face_runs(f) for f in a.faces]
    if all(sum(k == "boundary" for k, _ in runs) < 2 for runs in runs_by_face):
        return a
    if a.m == 1:
        log.info("removing boundary bridges with m = 1")
    fresh = FreshNames(a.points)
    face_ids = FreshNames([f.id for f in a.faces], prefix="")
    dropped: set[str] = set()
    added: list[str] = []
    faces: list[Face] = []
    for f, runs in zip(a.faces, runs_by_face):
        if sum(k == "boundary" for k, _ in runs) < 2:
            faces.append(f)
            continue
        for kind, edges in runs:
            if kind == "boundary":
                dropped.update(_run_interior(a, edges))
        arc_runs = [edges for kind, edges in runs if kind == "arc"]
        for i, t in enumerate(arc_runs, 1):
            pts, new_edges = _fresh_run(a.head(t[-1]), a.tail(t[0]), a.m + 1 - len(t), fresh)
            added += pts
            fid = f"{f.id}.{i}"
            if fid in face_ids.used:
                fid = face_ids()
            face_ids.used.add(fid)
            faces.append(Face(fid, tuple(t) + tuple(new_edges)))
    order = [p for p in a.points if p not in dropped] + added
    return rebuild(a, faces, point_order=order)


def _component_pairs(a: Angulation) -> list[tuple[int, int]]:
    mt = marked_points_MT(a)
    weights: dict[str, list[int]] = {}
    for seg in boundary_segments(a):
        weights.setdefault(seg.component, []).append(seg.weight)
    pairs = []
    for b in a.boundaries:
        if not mt[b.name]:
            log.warning("boundary %s has no arc endpoints and contributes nothing", b.name)
            continue
        pairs.append((len(mt[b.name]), sum(a.m - w for w in weights[b.name])))
    return pairs


def ag_invariant_formula(a: Angulation) -> AGFunction:
    """``t (0, m+2)* + sum_i (a_i, b_i)*`` over the boundary circles of the
    bridged surface, with ``a_i`` its arc endpoints and ``b_i`` the sum of
    ``m - w`` over its segments."""
    if a.partial:
        raise ValidationError("the formula needs an (m+2)-angulation; inflate partial triangulations first")
    bridged = remove_boundary_bridges(a)
    pairs = [(0, a.m + 2)] * internal_faces(bridged)
    return AGFunction.from_pairs(pairs + _component_pairs(bridged))


def naive_per_component(a: Angulation) -> AGFunction:
    """The per-boundary formula applied without removing bridges.

    Only correct for non-degenerate angulations; kept to reproduce the
    annulus counterexample.
    """
    if a.partial:
        raise ValidationError("the formula needs an (m+2)-angulation")
    pairs = [(0, a.m + 2)] * internal_faces(a)
    return AGFunction.from_pairs(pairs + _component_pairs(a))


def merge_inverse_bridge(a: Angulation, face_ids: Sequence[str],
                         weights: Sequence[int]) -> Angulation:
    """Glue faces ``t_i + B_i`` into one degenerate face ``t_1 B'_1 ... t_r B'_r``.

    ``B'_i`` is a new boundary run from the head of ``t_i`` to the tail of
    ``t_{i+1}`` with ``weights[i]`` interior points.  The old runs ``B_i`` are
    deleted.  The arcs, and therefore the quiver, are untouched.
    """
    if a.partial:
        raise InfeasibleParameters("merging needs an (m+2)-angulation")
    r = len(face_ids)
    if r < 2 or len(set(face_ids)) != r:
        raise InfeasibleParameters("need at least two distinct faces")
    if len(weights) != r or any(w < 0 for w in weights):
        raise InfeasibleParameters("need one non-negative weight per face")
    arc_runs = []
    dropped: set[str] = set()
    for fid in face_ids:
        f = a.face_map.get(fid)
        if f is None:
            raise InfeasibleParameters(f"no face {fid!r}")
        runs = face_runs(f)
        if [k for k, _ in runs] != ["arc", "boundary"]:
            raise InfeasibleParameters(f"face {fid!r} must consist of one arc run and one boundary run")
        arc_runs.append(runs[0][1])
        dropped.update(_run_interior(a, runs[1][1]))
    total = sum(len(t) for t in arc_runs) + sum(w + 1 for w in weights)
    if total != a.m + 2:
        raise InfeasibleParameters(f"merged face would have {total} edges, expected {a.m + 2}")
    fresh = FreshNames(a.points)
    added: list[str] = []
    edges: list[Edge] = []
    for i, t in enumerate(arc_runs):
        nxt = arc_runs[(i + 1) % r]
        pts, run = _fresh_run(a.head(t[-1]), a.tail(nxt[0]), weights[i], fresh)
        added += pts
        edges += list(t) + run
    chosen = set(face_ids)
    faces = [f for f in a.faces if f.id not in chosen]
    faces.append(Face("_".join(face_ids), tuple(edges)))
    order = [p for p in a.points if p not in dropped] + added
    return rebuild(a, faces, point_order=order)


def single_run_faces(a: Angulation) -> list[Face]:
    """Faces made of one arc run followed by one boundary run."""
    out = []
    for f in a.faces:
        if [k for k, _ in face_runs(f)] == ["arc", "boundary"]:
            out.append(f)
    return out


def arc_run_length(f: Face) -> int:
    return sum(isinstance(e, ArcSide) for e in f.edges)
