"""(m+2)-angulations of marked surfaces as oriented combinatorial maps.

A surface is described by its faces: each face is a closed walk of directed
edges with the face interior on the left.  An edge is either one traversal
of an arc (``ArcSide``) or a boundary edge between consecutive marked points
(``BoundaryEdge``), traversed in the boundary's counter-clockwise direction.
Every arc is traversed exactly once in each direction and every boundary
edge exactly once.

Marked points carry global string labels; fresh points created by
transformations are named ``fresh<k>``.  A partial triangulation is stored
with ``m = None`` and faces of size 3 or 4.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    ComponentWithoutArcEndpoints,
    CrossingDiagonals,
    InfeasibleParameters,
    NotAnAngulation,
    ParseError,
    ValidationError,
)

log = logging.getLogger(__name__)

_BAD_ID = re.compile(r"[\s:+\-−#]")


@dataclass(frozen=True)
class Arc:
    id: str
    u: str
    v: str


@dataclass(frozen=True)
class ArcSide:
    arc: str
    forward: bool

    def reverse(self) -> "ArcSide":
        return ArcSide(self.arc, not self.forward)


@dataclass(frozen=True)
class BoundaryEdge:
    tail: str
    head: str


Edge = Union[ArcSide, BoundaryEdge]


@dataclass(frozen=True)
class Face:
    id: str
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def boundary_edge_count(self) -> int:
        return sum(isinstance(e, BoundaryEdge) for e in self.edges)


@dataclass(frozen=True)
class Boundary:
    name: str
    points: tuple[str, ...]

    def default_labels(self) -> tuple[str, ...]:
        return tuple(f"{self.name}.{i}" for i in range(len(self.points)))


@dataclass(frozen=True)
class BoundarySegment:
    """A maximal boundary run between consecutive arc endpoints."""

    component: str
    start: str
    end: str
    interior: tuple[str, ...]
    face: str

    @property
    def weight(self) -> int:
        return len(self.interior)


@dataclass(frozen=True)
class Angulation:
    m: int | None
    boundaries: tuple[Boundary, ...]
    arcs: tuple[Arc, ...]
    faces: tuple[Face, ...]

    def __post_init__(self) -> None:
        for name in ("boundaries", "arcs", "faces"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def partial(self) -> bool:
        return self.m is None

    @cached_property
    def arc_map(self) -> dict[str, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def arc_index(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arcs)}

    @cached_property
    def points(self) -> tuple[str, ...]:
        return tuple(p for b in self.boundaries for p in b.points)

    @cached_property
    def point_component(self) -> dict[str, str]:
        return {p: b.name for b in self.boundaries for p in b.points}

    @cached_property
    def boundary_next(self) -> dict[str, str]:
        nxt = {}
        for b in self.boundaries:
            k = len(b.points)
            for i, p in enumerate(b.points):
                nxt[p] = b.points[(i + 1) % k]
        return nxt

    @cached_property
    def face_map(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def location(self) -> dict[Edge, tuple[int, int]]:
        """Edge -> (face index, position in walk)."""
        loc = {}
        for fi, f in enumerate(self.faces):
            for pos, e in enumerate(f.edges):
                loc[e] = (fi, pos)
        return loc

    @cached_property
    def arc_endpoints(self) -> frozenset[str]:
        return frozenset(p for a in self.arcs for p in (a.u, a.v))

    def tail(self, e: Edge) -> str:
        if isinstance(e, BoundaryEdge):
            return e.tail
        a = self.arc_map[e.arc]
        return a.u if e.forward else a.v

    def head(self, e: Edge) -> str:
        if isinstance(e, BoundaryEdge):
            return e.head
        a = self.arc_map[e.arc]
        return a.v if e.forward else a.u

    def next_edge(self, e: Edge) -> Edge:
        fi, pos = self.location[e]
        edges = self.faces[fi].edges
        return edges[(pos + 1) % len(edges)]

    def face_of(self, e: Edge) -> Face:
        return self.faces[self.location[e][0]]

    def boundary_edges(self) -> Iterator[BoundaryEdge]:
        for b in self.boundaries:
            k = len(b.points)
            for i, p in enumerate(b.points):
                yield BoundaryEdge(p, b.points[(i + 1) % k])


# -- face structure ------------------------------------------------------------


def face_runs(face: Face) -> list[tuple[str, tuple[Edge, ...]]]:
    """Split a face walk into maximal cyclic runs of arcs and of boundary edges.

    The result alternates ``("arc", ...)`` and ``("boundary", ...)`` and starts
    with an arc run when the face has one.  A face with no arc is a single
    boundary run; a face with no boundary edge is a single arc run.
    """
    edges = face.edges
    kinds = [isinstance(e, ArcSide) for e in edges]
    if all(kinds):
        return [("arc", edges)]
    if not any(kinds):
        return [("boundary", edges)]
    n = len(edges)
    # rotate so the walk starts at the first edge of an arc run
    start = next(i for i in range(n) if kinds[i] and not kinds[i - 1])
    rotated = edges[start:] + edges[:start]
    runs: list[tuple[str, list[Edge]]] = []
    for e in rotated:
        kind = "arc" if isinstance(e, ArcSide) else "boundary"
        if runs and runs[-1][0] == kind:
            runs[-1][1].append(e)
        else:
            runs.append((kind, [e]))
    return [(k, tuple(es)) for k, es in runs]


def boundary_run_count(face: Face) -> int:
    return sum(1 for kind, _ in face_runs(face) if kind == "boundary")


def corners(a: Angulation, face: Face) -> list[tuple[Edge, Edge]]:
    n = len(face.edges)
    return [(face.edges[i], face.edges[(i + 1) % n]) for i in range(n)]


# -- validation ----------------------------------------------------------------


def _check_id(kind: str, ident: str) -> None:
    if not ident or _BAD_ID.search(ident):
        raise ValidationError(f"{kind} id {ident!r} may not contain whitespace, ':', '+', '-' or '#'")


def validate(a: Angulation) -> list[str]:
    """Check the combinatorial map; raise on errors, return warnings."""
    warnings: list[str] = []
    names = [b.name for b in a.boundaries]
    if len(set(names)) != len(names):
        raise ValidationError("duplicate boundary name")
    for b in a.boundaries:
        if not b.points:
            raise ValidationError(f"boundary {b.name!r} has no marked points")
    if len(set(a.points)) != len(a.points):
        raise ValidationError("duplicate marked point label")
    known = set(a.points)
    if len(a.arc_map) != len(a.arcs):
        raise ValidationError("duplicate arc id")
    for arc in a.arcs:
        _check_id("arc", arc.id)
        for p in (arc.u, arc.v):
            if p not in known:
                raise ValidationError(f"arc {arc.id!r} ends at unknown point {p!r}")
    if len(a.face_map) != len(a.faces):
        raise ValidationError("duplicate face id")
    if a.m is not None and a.m < 1:
        raise ValidationError("m must be a positive integer")

    boundary = set(a.boundary_edges())
    seen: set[Edge] = set()
    for f in a.faces:
        if not f.edges:
            raise ValidationError(f"face {f.id!r} is empty")
        for e in f.edges:
            if isinstance(e, ArcSide):
                if e.arc not in a.arc_map:
                    raise ValidationError(f"face {f.id!r} uses unknown arc {e.arc!r}")
            elif e not in boundary:
                raise ValidationError(f"face {f.id!r} uses {e.tail}->{e.head}, not a boundary edge")
            if e in seen:
                raise ValidationError(f"edge {_edge_text(a, e)} occurs in more than one face position")
            seen.add(e)
        for i, e in enumerate(f.edges):
            nxt = f.edges[(i + 1) % len(f.edges)]
            if a.head(e) != a.tail(nxt):
                raise ValidationError(f"face {f.id!r} is not a closed walk at position {i}")
        if a.m is not None and len(f) != a.m + 2:
            raise NotAnAngulation(f"face {f.id!r} has {len(f)} edges, expected {a.m + 2}")
        if a.m is None and len(f) not in (3, 4):
            raise NotAnAngulation(f"face {f.id!r} has {len(f)} edges; partial triangulations "
                                  "have triangles and squares only")
    for arc in a.arcs:
        for side in (ArcSide(arc.id, True), ArcSide(arc.id, False)):
            if side not in seen:
                raise ValidationError(f"arc {arc.id!r} is not used {'+' if side.forward else '-'} by any face")
    for e in boundary:
        if e not in seen:
            raise ValidationError(f"boundary edge {e.tail}->{e.head} lies in no face")

    _check_links(a)

    if a.m is not None and is_disc(a) and len(a.points) % a.m != 2 % a.m:
        raise NotAnAngulation(f"a disc with {len(a.points)} points has no {a.m + 2}-angulation")
    for f in a.faces:
        if f.boundary_edge_count == len(f):
            warnings.append(f"face {f.id!r} has no arcs: its algebra is empty")
    for w in warnings:
        log.warning(w)
    return warnings


def _check_links(a: Angulation) -> None:
    """Around each marked point the corners must form one fan from the
    incoming boundary edge to the outgoing one."""
    corner_count: dict[str, int] = {p: 0 for p in a.points}
    for f in a.faces:
        for e, _ in corners(a, f):
            corner_count[a.head(e)] += 1
    prev = {nxt: p for p, nxt in a.boundary_next.items()}
    for p in a.points:
        e: Edge = BoundaryEdge(prev[p], p)
        steps = 0
        while True:
            nxt = a.next_edge(e)
            steps += 1
            if isinstance(nxt, BoundaryEdge):
                break
            e = nxt.reverse()
            if steps > corner_count[p]:
                break
        if steps != corner_count[p]:
            raise ValidationError(f"the faces around point {p!r} do not form a single fan "
                                  f"({steps} of {corner_count[p]} corners reached)")


def surface_components(a: Angulation) -> list[list[str]]:
    """Face ids grouped by connectivity through shared arcs."""
    parent = {f.id: f.id for f in a.faces}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for arc in a.arcs:
        f1 = a.face_of(ArcSide(arc.id, True)).id
        f2 = a.face_of(ArcSide(arc.id, False)).id
        r1, r2 = find(f1), find(f2)
        if r1 != r2:
            parent[r2] = r1
    groups: dict[str, list[str]] = {}
    for f in a.faces:
        groups.setdefault(find(f.id), []).append(f.id)
    return list(groups.values())


def euler_characteristic(a: Angulation) -> int:
    n = len(a.points)
    return n - (n + len(a.arcs)) + len(a.faces)


def is_disc(a: Angulation) -> bool:
    return (len(a.boundaries) == 1 and len(surface_components(a)) == 1
            and euler_characteristic(a) == 1)


# -- queries -------------------------------------------------------------------


def marked_points_MT(a: Angulation) -> dict[str, list[str]]:
    """Arc endpoints, grouped by boundary component in boundary order."""
    ends = a.arc_endpoints
    return {b.name: [p for p in b.points if p in ends] for b in a.boundaries}


def _is_bare_component(a: Angulation, b: Boundary) -> bool:
    f = a.face_of(BoundaryEdge(b.points[0], b.points[1 % len(b.points)]))
    return f.boundary_edge_count == len(f) == len(b.points)


def boundary_segments(a: Angulation) -> list[BoundarySegment]:
    segs = []
    ends = a.arc_endpoints
    for b in a.boundaries:
        idx = [i for i, p in enumerate(b.points) if p in ends]
        n = len(b.points)
        if not idx:
            if _is_bare_component(a, b):
                log.warning("boundary %s carries no arc endpoints; it has no segments", b.name)
                continue
            raise ComponentWithoutArcEndpoints(f"boundary {b.name!r} carries no arc endpoints")
        for j, i in enumerate(idx):
            k = idx[(j + 1) % len(idx)]
            span = (k - i) % n or n
            interior = tuple(b.points[(i + s) % n] for s in range(1, span))
            face = a.face_of(BoundaryEdge(b.points[i], b.points[(i + 1) % n]))
            segs.append(BoundarySegment(b.name, b.points[i], b.points[k], interior, face.id))
    return segs


def internal_faces(a: Angulation) -> int:
    return sum(1 for f in a.faces if f.boundary_edge_count == 0)


def degenerate_faces(a: Angulation) -> list[str]:
    return [f.id for f in a.faces if boundary_run_count(f) >= 2]


def is_degenerate(a: Angulation) -> tuple[bool, list[str]]:
    bad = degenerate_faces(a)
    return bool(bad), bad


def _walk_components(a: Angulation, order: Iterable[str]) -> list[tuple[str, ...]]:
    """Trace boundary circles by hopping corners around each marked point."""
    out_edge: dict[str, BoundaryEdge] = {}
    for f in a.faces:
        for e in f.edges:
            if isinstance(e, BoundaryEdge):
                out_edge[e.tail] = e
    visited: set[str] = set()
    comps = []
    for p in order:
        if p in visited or p not in out_edge:
            continue
        start = out_edge[p]
        cycle = [start.tail]
        visited.add(start.tail)
        e: Edge = start
        while True:
            nxt = a.next_edge(e)
            while isinstance(nxt, ArcSide):
                nxt = a.next_edge(nxt.reverse())
            if nxt == start:
                break
            cycle.append(nxt.tail)
            visited.add(nxt.tail)
            e = nxt
        comps.append(tuple(cycle))
    return comps


def boundary_components_by_walk(a: Angulation) -> list[tuple[str, ...]]:
    return _walk_components(a, a.points)


class FreshNames:
    """Deterministic generator of unused labels ``<prefix><k>``."""

    def __init__(self, used: Iterable[str], prefix: str = "fresh"):
        self.used = set(used)
        self.prefix = prefix
        self.k = 0

    def __call__(self) -> str:
        while f"{self.prefix}{self.k}" in self.used:
            self.k += 1
        name = f"{self.prefix}{self.k}"
        self.used.add(name)
        return name


def rebuild(a: Angulation, faces: Sequence[Face], arcs: Sequence[Arc] | None = None,
            point_order: Sequence[str] | None = None, m: int | None | type = ...) -> Angulation:
    """Assemble an angulation from new faces, recomputing boundary circles.

    Circles identical to one of ``a``'s boundaries keep its name and
    rotation; every other circle gets a fresh name ``c<k>`` and starts at its
    earliest point in ``point_order``.
    """
    arcs = tuple(a.arcs if arcs is None else arcs)
    order = list(a.points if point_order is None else point_order)
    draft = Angulation(a.m if m is ... else m, (), arcs, tuple(faces))
    cycles = _walk_components(draft, order)
    existing = {}
    for b in a.boundaries:
        existing[frozenset(b.points)] = b
    names = FreshNames([b.name for b in a.boundaries], prefix="c")
    boundaries = []
    for cyc in cycles:
        old = existing.get(frozenset(cyc))
        if old is not None and _same_cycle(old.points, cyc):
            boundaries.append(old)
        else:
            boundaries.append(Boundary(names(), cyc))
    return Angulation(draft.m, tuple(boundaries), arcs, tuple(faces))


def _same_cycle(xs: Sequence[str], ys: Sequence[str]) -> bool:
    if len(xs) != len(ys):
        return False
    if not xs:
        return True
    try:
        k = list(ys).index(xs[0])
    except ValueError:
        return False
    return tuple(ys[k:]) + tuple(ys[:k]) == tuple(xs)


# -- discs from diagonal lists --------------------------------------------------


def faces_from_disc_diagonals(m: int | None, point_count: int,
                              diagonals: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Faces of the polygon dissection, as counter-clockwise vertex cycles.

    Each face starts at its least vertex; faces are sorted.  With ``m`` set,
    every face must have ``m + 2`` edges.
    """
    n = point_count
    if n < 3:
        raise NotAnAngulation("a polygon needs at least 3 marked points")
    norm = []
    for i, j in diagonals:
        if not (0 <= i < n and 0 <= j < n):
            raise ValidationError(f"diagonal ({i},{j}) has an endpoint outside 0..{n - 1}")
        if i == j or (i - j) % n in (1, n - 1):
            raise ValidationError(f"({i},{j}) joins equal or adjacent points")
        norm.append((min(i, j), max(i, j)))
    if len(set(norm)) != len(norm):
        raise ValidationError("repeated diagonal")
    for x in range(len(norm)):
        a, b = norm[x]
        for y in range(x + 1, len(norm)):
            c, d = norm[y]
            if a < c < b < d or c < a < d < b:
                raise CrossingDiagonals(f"diagonals ({a},{b}) and ({c},{d}) cross")
    faces = [list(range(n))]
    for a, b in norm:
        for fi, poly in enumerate(faces):
            if a in poly and b in poly:
                i, j = poly.index(a), poly.index(b)
                i, j = min(i, j), max(i, j)
                faces[fi] = poly[i:j + 1]
                faces.append(poly[j:] + poly[:i + 1])
                break
    out = []
    for poly in faces:
        k = poly.index(min(poly))
        out.append(tuple(poly[k:] + poly[:k]))
        if m is not None and len(poly) != m + 2:
            raise NotAnAngulation(f"face {out[-1]} has {len(poly)} edges, expected {m + 2}")
    return sorted(out)


def disc_angulation(m: int | None, point_count: int,
                    arcs: Sequence[tuple[str, int, int]]) -> Angulation:
    """Build a disc from ``(arc id, endpoint, endpoint)`` triples.

    Points are labelled ``"0" .. "N-1"`` counter-clockwise.
    """
    cycles = faces_from_disc_diagonals(m, point_count, [(i, j) for _, i, j in arcs])
    lookup = {}
    tails = {}
    arc_objs = []
    for aid, i, j in arcs:
        arc_objs.append(Arc(aid, str(i), str(j)))
        lookup[frozenset((i, j))] = aid
        tails[aid] = i
    n = point_count
    faces = []
    for fi, cyc in enumerate(cycles):
        edges: list[Edge] = []
        for s in range(len(cyc)):
            x, y = cyc[s], cyc[(s + 1) % len(cyc)]
            if y == (x + 1) % n:
                edges.append(BoundaryEdge(str(x), str(y)))
            else:
                aid = lookup[frozenset((x, y))]
                edges.append(ArcSide(aid, tails[aid] == x))
        faces.append(Face(f"f{fi}", tuple(edges)))
    ang = Angulation(m, (Boundary("d", tuple(str(i) for i in range(n))),), tuple(arc_objs), tuple(faces))
    validate(ang)
    return ang


def random_disc_angulation(m: int, arc_count: int, seed: int) -> Angulation:
    """Uniformly split an ``(arc_count*m + m + 2)``-gon at random m-allowable
    diagonals until every piece is an (m+2)-gon."""
    if m < 1 or arc_count < 0:
        raise InfeasibleParameters(f"need m >= 1 and arc_count >= 0, got m={m}, arcs={arc_count}")
    rng = random.Random(seed)
    n = arc_count * m + m + 2
    stack = [list(range(n))]
    diagonals = []
    while stack:
        poly = stack.pop()
        k = len(poly)
        if k == m + 2:
            continue
        choices = []
        for i in range(k):
            for j in range(i + 2, k):
                s1, s2 = j - i + 1, k - (j - i) + 1
                if s1 >= m + 2 and s2 >= m + 2 and (s1 - 2) % m == 0 and (s2 - 2) % m == 0:
                    choices.append((i, j))
        i, j = rng.choice(choices)
        diagonals.append((poly[i], poly[j]))
        stack.append(poly[i:j + 1])
        stack.append(poly[j:] + poly[:i + 1])
    arcs = [(str(t + 1), x, y) for t, (x, y) in enumerate(diagonals)]
    return disc_angulation(m, n, arcs)


# -- structural edits -------------------------------------------------------------


def relabel(a: Angulation, prefix: str) -> Angulation:
    """Prefix every point, arc, face and boundary label."""
    pt = lambda p: f"{prefix}{p}"  # noqa: E731

    def edge(e: Edge) -> Edge:
        if isinstance(e, ArcSide):
            return ArcSide(f"{prefix}{e.arc}", e.forward)
        return BoundaryEdge(pt(e.tail), pt(e.head))

    return Angulation(
        a.m,
        tuple(Boundary(f"{prefix}{b.name}", tuple(map(pt, b.points))) for b in a.boundaries),
        tuple(Arc(f"{prefix}{x.id}", pt(x.u), pt(x.v)) for x in a.arcs),
        tuple(Face(f"{prefix}{f.id}", tuple(map(edge, f.edges))) for f in a.faces),
    )


def disjoint_union(*parts: Angulation, prefixes: Sequence[str] | None = None) -> Angulation:
    if not parts:
        raise ValueError("disjoint_union needs at least one angulation")
    ms = {p.m for p in parts}
    if len(ms) != 1:
        raise InfeasibleParameters(f"cannot unite angulations with different m: {sorted(ms, key=str)}")
    prefixes = prefixes or [f"s{i}_" for i in range(len(parts))]
    rel = [relabel(p, x) for p, x in zip(parts, prefixes)]
    return Angulation(parts[0].m,
                      tuple(b for r in rel for b in r.boundaries),
                      tuple(x for r in rel for x in r.arcs),
                      tuple(f for r in rel for f in r.faces))


def ear_arcs(a: Angulation) -> list[str]:
    """Arcs cutting off a face that holds no other arc and one boundary run."""
    out = []
    for arc in a.arcs:
        for side in (ArcSide(arc.id, True), ArcSide(arc.id, False)):
            f = a.face_of(side)
            if (sum(isinstance(e, ArcSide) for e in f.edges) == 1
                    and a.face_of(side.reverse()) is not f):
                out.append(arc.id)
                break
    return out


def remove_ear(a: Angulation, arc_id: str) -> Angulation:
    """Delete an ear face together with its arc; the arc becomes boundary."""
    for side in (ArcSide(arc_id, True), ArcSide(arc_id, False)):
        f = a.face_of(side)
        if sum(isinstance(e, ArcSide) for e in f.edges) == 1 and a.face_of(side.reverse()) is not f:
            break
    else:
        raise ValueError(f"arc {arc_id!r} does not cut off an ear")
    dropped = {a.head(e) for e in f.edges if isinstance(e, BoundaryEdge)} - {a.tail(side)}
    rev = side.reverse()
    new_edge = BoundaryEdge(a.tail(rev), a.head(rev))
    faces = []
    for g in a.faces:
        if g is f:
            continue
        faces.append(Face(g.id, tuple(new_edge if e == rev else e for e in g.edges)))
    arcs = [x for x in a.arcs if x.id != arc_id]
    order = [p for p in a.points if p not in dropped]
    return rebuild(a, faces, arcs, order)


# -- file formats -------------------------------------------------------------------


def _side_token(e: ArcSide) -> str:
    return f"a:{e.arc}:{'+' if e.forward else '-'}"


def _edge_text(a: Angulation, e: Edge) -> str:
    if isinstance(e, ArcSide):
        return _side_token(e)
    return f"{e.tail}->{e.head}"


def parse_angulation(text: str) -> Angulation:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line.split()))
    if not lines:
        raise ParseError("empty input, expected 'angulation disc' or 'angulation surface'", 1)
    lineno, head = lines[0]
    if len(head) != 2 or head[0] != "angulation" or head[1] not in ("disc", "surface"):
        raise ParseError("expected header 'angulation disc' or 'angulation surface'", lineno)
    if head[1] == "disc":
        return _parse_disc(lines[1:])
    return _parse_surface(lines[1:])


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None


def _parse_m(tok: list[str], lineno: int) -> int | None:
    if tok[0] == "partial":
        if len(tok) != 1:
            raise ParseError("usage: partial", lineno)
        return None
    if len(tok) != 2:
        raise ParseError("usage: m <int>", lineno)
    m = _int(tok[1], lineno, "m")
    if m < 1:
        raise ParseError("m must be positive", lineno)
    return m


def _parse_disc(lines: list[tuple[int, list[str]]]) -> Angulation:
    m: int | None | type = ...
    n = None
    arcs: list[tuple[str, int, int]] = []
    ids: set[str] = set()
    for lineno, tok in lines:
        if tok[0] in ("m", "partial"):
            m = _parse_m(tok, lineno)
        elif tok[0] == "points":
            if len(tok) != 2:
                raise ParseError("usage: points <int>", lineno)
            n = _int(tok[1], lineno, "points")
        elif tok[0] == "arc":
            if len(tok) != 4:
                raise ParseError("usage: arc <id> <point> <point>", lineno)
            if tok[1] in ids:
                raise ParseError(f"duplicate arc {tok[1]!r}", lineno)
            ids.add(tok[1])
            if n is None:
                raise ParseError("'points' must precede arcs", lineno)
            i, j = _int(tok[2], lineno, "point"), _int(tok[3], lineno, "point")
            arcs.append((tok[1], i, j))
        else:
            raise ParseError(f"unknown directive {tok[0]!r}", lineno)
    if m is ...:
        raise ParseError("missing 'm <int>' (or 'partial')", lines[0][0] if lines else 1)
    if n is None:
        raise ParseError("missing 'points <int>'", lines[0][0] if lines else 1)
    for aid, _, _ in arcs:
        _check_id("arc", aid)
    return disc_angulation(m, n, arcs)


_SIGNS = {"+": True, "-": False, "−": False}


def _parse_surface(lines: list[tuple[int, list[str]]]) -> Angulation:
    m: int | None | type = ...
    boundaries: list[Boundary] = []
    by_name: dict[str, Boundary] = {}
    labels: dict[str, str] = {}
    arcs: list[Arc] = []
    faces: list[Face] = []
    arc_ids: set[str] = set()
    for lineno, tok in lines:
        kind = tok[0]
        if kind in ("m", "partial"):
            m = _parse_m(tok, lineno)
        elif kind == "boundary":
            if len(tok) < 3:
                raise ParseError("usage: boundary <name> <pointCount> [labels...]", lineno)
            name, count = tok[1], _int(tok[2], lineno, "pointCount")
            if name in by_name:
                raise ParseError(f"duplicate boundary {name!r}", lineno)
            if ":" in name:
                raise ParseError("boundary names may not contain ':'", lineno)
            if count < 1:
                raise ParseError("a boundary needs at least one marked point", lineno)
            pts = tuple(tok[3:]) if len(tok) > 3 else tuple(f"{name}.{i}" for i in range(count))
            if len(pts) != count:
                raise ParseError(f"boundary {name!r} lists {len(pts)} labels for {count} points", lineno)
            for i, p in enumerate(pts):
                if p in labels:
                    raise ParseError(f"duplicate point label {p!r}", lineno)
                labels[p] = p
                labels.setdefault(f"{name}.{i}", p)
            b = Boundary(name, pts)
            boundaries.append(b)
            by_name[name] = b
        elif kind == "arc":
            if len(tok) != 4:
                raise ParseError("usage: arc <id> <point> <point>", lineno)
            if tok[1] in arc_ids:
                raise ParseError(f"duplicate arc {tok[1]!r}", lineno)
            ends = []
            for t in tok[2:]:
                if t not in labels:
                    raise ParseError(f"unknown point {t!r}", lineno)
                ends.append(labels[t])
            arc_ids.add(tok[1])
            arcs.append(Arc(tok[1], ends[0], ends[1]))
        elif kind == "face":
            if len(tok) < 3:
                raise ParseError("usage: face <id> <edge> ...", lineno)
            edges: list[Edge] = []
            for t in tok[2:]:
                edges.append(_parse_edge(t, by_name, arc_ids, lineno))
            faces.append(Face(tok[1], tuple(edges)))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if m is ...:
        raise ParseError("missing 'm <int>' (or 'partial')", lines[0][0] if lines else 1)
    ang = Angulation(m, tuple(boundaries), tuple(arcs), tuple(faces))
    validate(ang)
    return ang


def _parse_edge(t: str, by_name: dict[str, Boundary], arc_ids: set[str], lineno: int) -> Edge:
    parts = t.split(":")
    if len(parts) != 3 or parts[0] not in ("a", "b"):
        raise ParseError(f"bad edge token {t!r}; use a:<arc>:+|- or b:<boundary>:<idx>", lineno)
    if parts[0] == "a":
        if parts[1] not in arc_ids:
            raise ParseError(f"unknown arc {parts[1]!r}", lineno)
        if parts[2] not in _SIGNS:
            raise ParseError(f"arc direction must be + or -, got {parts[2]!r}", lineno)
        return ArcSide(parts[1], _SIGNS[parts[2]])
    b = by_name.get(parts[1])
    if b is None:
        raise ParseError(f"unknown boundary {parts[1]!r}", lineno)
    i = _int(parts[2], lineno, "boundary index")
    if not 0 <= i < len(b.points):
        raise ParseError(f"boundary index {i} out of range for {b.name!r}", lineno)
    return BoundaryEdge(b.points[i], b.points[(i + 1) % len(b.points)])


def _as_disc_arcs(a: Angulation) -> list[tuple[str, int, int]] | None:
    if len(a.boundaries) != 1:
        return None
    b = a.boundaries[0]
    if b.points != tuple(str(i) for i in range(len(b.points))):
        return None
    arcs = [(x.id, int(x.u), int(x.v)) for x in a.arcs]
    try:
        if disc_angulation(a.m, len(b.points), arcs) != a:
            return None
    except ValidationError:
        return None
    return arcs


def serialize_angulation(a: Angulation, style: str = "auto") -> str:
    """Write ``a`` in the disc format when it round-trips, else as a surface."""
    if style not in ("auto", "disc", "surface"):
        raise ValueError(f"unknown style {style!r}")
    head = "partial" if a.m is None else f"m {a.m}"
    if style != "surface":
        arcs = _as_disc_arcs(a)
        if arcs is not None:
            lines = ["angulation disc", head, f"points {len(a.points)}"]
            lines += [f"arc {aid} {i} {j}" for aid, i, j in arcs]
            return "\n".join(lines) + "\n"
        if style == "disc":
            raise ValueError("angulation is not a disc in canonical labelling")
    lines = ["angulation surface", head]
    where: dict[str, tuple[str, int]] = {}
    for b in a.boundaries:
        if b.points == b.default_labels():
            lines.append(f"boundary {b.name} {len(b.points)}")
        else:
            lines.append(f"boundary {b.name} {len(b.points)} " + " ".join(b.points))
        for i, p in enumerate(b.points):
            where[p] = (b.name, i)
    lines += [f"arc {x.id} {x.u} {x.v}" for x in a.arcs]
    for f in a.faces:
        toks = []
        for e in f.edges:
            if isinstance(e, ArcSide):
                toks.append(_side_token(e))
            else:
                name, i = where[e.tail]
                toks.append(f"b:{name}:{i}")
        lines.append(f"face {f.id} " + " ".join(toks))
    return "\n".join(lines) + "\n"
