"""Threads of a gentle bound quiver and the sign functions sigma / epsilon
on its arrows and threads."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NotGentle, SignConflict
from .quiver import Arrow, BoundQuiver

PERMITTED = "permitted"
FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class Thread:
    kind: str
    arrows: tuple[str, ...]
    start: str
    end: str
    wraps_cycle: bool = False

    @property
    def trivial(self) -> bool:
        return not self.arrows

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def name(self) -> str:
        if self.trivial:
            return ("h_" if self.kind == PERMITTED else "p_") + self.start
        return " ".join(self.arrows)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FullRelationCycle:
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)


def thread_key(bq: BoundQuiver, t: Thread) -> tuple[int, int, int]:
    first = bq.arrow_index[t.arrows[0]] if t.arrows else -1
    return (bq.vertex_index[t.start], first, t.length)


def trivial_thread(kind: str, v: str) -> Thread:
    return Thread(kind, (), v, v)


def _unique(candidates: list[Arrow], what: str) -> Arrow | None:
    if len(candidates) > 1:
        raise NotGentle(f"{what}: {[a.id for a in candidates]}")
    return candidates[0] if candidates else None


def permitted_successor(bq: BoundQuiver, a: str) -> Arrow | None:
    return _unique([c for c in bq.successors(a) if not bq.is_relation(a, c.id)],
                   f"ambiguous permitted successor of {a}")


def permitted_predecessor(bq: BoundQuiver, a: str) -> Arrow | None:
    return _unique([c for c in bq.predecessors(a) if not bq.is_relation(c.id, a)],
                   f"ambiguous permitted predecessor of {a}")


def forbidden_successor(bq: BoundQuiver, a: str) -> Arrow | None:
    return _unique([c for c in bq.successors(a) if bq.is_relation(a, c.id)],
                   f"ambiguous forbidden successor of {a}")


def forbidden_predecessor(bq: BoundQuiver, a: str) -> Arrow | None:
    return _unique([c for c in bq.predecessors(a) if bq.is_relation(c.id, a)],
                   f"ambiguous forbidden predecessor of {a}")


def _chains(bq: BoundQuiver, succ, pred) -> tuple[list[list[str]], list[str]]:
    """Split the arrows into maximal chains under a partial successor map.

    Returns the chains (in canonical order of their first arrow) and the
    arrows left over, which lie on closed cycles of the successor map.
    """
    chains = []
    covered: set[str] = set()
    for a in bq.arrows:
        if pred(bq, a.id) is not None:
            continue
        chain = [a.id]
        nxt = succ(bq, a.id)
        while nxt is not None:
            chain.append(nxt.id)
            nxt = succ(bq, nxt.id)
        chains.append(chain)
        covered.update(chain)
    return chains, [a.id for a in bq.arrows if a.id not in covered]


def _path_thread(bq: BoundQuiver, kind: str, arrows: list[str], wraps: bool = False) -> Thread:
    return Thread(kind, tuple(arrows), bq.arrow(arrows[0]).source,
                  bq.arrow(arrows[-1]).target, wraps)


def _trivial_allowed(bq: BoundQuiver, v: str, related: bool) -> bool:
    ins, outs = bq.in_arrows(v), bq.out_arrows(v)
    if len(ins) > 1 or len(outs) > 1:
        return False
    if ins and outs:
        return bq.is_relation(ins[0].id, outs[0].id) == related
    return True


def permitted_threads(bq: BoundQuiver) -> list[Thread]:
    chains, rest = _chains(bq, permitted_successor, permitted_predecessor)
    if rest:
        raise NotGentle(f"oriented cycle without relations through {rest[0]}: "
                        "the algebra is infinite-dimensional")
    threads = [_path_thread(bq, PERMITTED, c) for c in chains]
    threads += [trivial_thread(PERMITTED, v) for v in bq.vertices
                if _trivial_allowed(bq, v, related=False)]
    return sorted(threads, key=lambda t: thread_key(bq, t))


def full_relation_cycles(bq: BoundQuiver) -> list[FullRelationCycle]:
    _, rest = _chains(bq, forbidden_successor, forbidden_predecessor)
    cycles = []
    seen: set[str] = set()
    for a in rest:  # canonical order, so ``a`` is the least arrow of its cycle
        if a in seen:
            continue
        cyc = [a]
        nxt = forbidden_successor(bq, a)
        while nxt.id != a:
            cyc.append(nxt.id)
            nxt = forbidden_successor(bq, nxt.id)
        seen.update(cyc)
        cycles.append(FullRelationCycle(tuple(cyc)))
    return cycles


def forbidden_threads(bq: BoundQuiver, include_cycle_wraps: bool = True) -> list[Thread]:
    chains, _ = _chains(bq, forbidden_successor, forbidden_predecessor)
    threads = [_path_thread(bq, FORBIDDEN, c) for c in chains]
    if include_cycle_wraps:
        for cyc in full_relation_cycles(bq):
            arrows = list(cyc.arrows)
            for i in range(len(arrows)):
                threads.append(_path_thread(bq, FORBIDDEN, arrows[i:] + arrows[:i], True))
    threads += [trivial_thread(FORBIDDEN, v) for v in bq.vertices
                if _trivial_allowed(bq, v, related=True)]
    return sorted(threads, key=lambda t: thread_key(bq, t))


# -- signs ---------------------------------------------------------------------

SIGMA = "sigma"
EPSILON = "epsilon"
Variable = tuple[str, str]  # (SIGMA | EPSILON, arrow id)


def sign_constraints(bq: BoundQuiver) -> list[tuple[Variable, Variable, int]]:
    """Constraints ``x = parity * y`` between sign variables.

    Beside the three standard conditions this includes ``sigma(b) = eps(a)``
    whenever ``ab`` is a relation; without it epsilon is free at relation-only
    junctions and the pairing step can fail.
    """
    cons = []
    for v in bq.vertices:
        outs, ins = bq.out_arrows(v), bq.in_arrows(v)
        for i, a in enumerate(outs):
            for b in outs[i + 1:]:
                cons.append(((SIGMA, a.id), (SIGMA, b.id), -1))
        for i, a in enumerate(ins):
            for b in ins[i + 1:]:
                cons.append(((EPSILON, a.id), (EPSILON, b.id), -1))
        for b in ins:
            for c in outs:
                parity = 1 if bq.is_relation(b.id, c.id) else -1
                cons.append(((SIGMA, c.id), (EPSILON, b.id), parity))
    return cons


@dataclass(frozen=True)
class SignAssignment:
    quiver: BoundQuiver
    sigma: Mapping[str, int]
    epsilon: Mapping[str, int]

    def value(self, var: Variable) -> int:
        kind, a = var
        return self.sigma[a] if kind == SIGMA else self.epsilon[a]

    def negated(self, variables: Iterable[Variable]) -> "SignAssignment":
        sigma, epsilon = dict(self.sigma), dict(self.epsilon)
        for kind, a in variables:
            if kind == SIGMA:
                sigma[a] = -sigma[a]
            else:
                epsilon[a] = -epsilon[a]
        return SignAssignment(self.quiver, sigma, epsilon)


def _adjacency(bq: BoundQuiver) -> dict[Variable, list[tuple[Variable, int]]]:
    adj: dict[Variable, list[tuple[Variable, int]]] = {}
    for a in bq.arrows:
        adj[(SIGMA, a.id)] = []
        adj[(EPSILON, a.id)] = []
    for x, y, p in sign_constraints(bq):
        adj[x].append((y, p))
        adj[y].append((x, p))
    return adj


def _seed_order(bq: BoundQuiver) -> list[Variable]:
    return [(SIGMA, a.id) for a in bq.arrows] + [(EPSILON, a.id) for a in bq.arrows]


def sign_components(bq: BoundQuiver) -> list[list[Variable]]:
    """Connected components of the sign-constraint graph, in seeding order."""
    adj = _adjacency(bq)
    seen: set[Variable] = set()
    comps = []
    for start in _seed_order(bq):
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def assign_signs(bq: BoundQuiver) -> SignAssignment:
    adj = _adjacency(bq)
    values: dict[Variable, int] = {}
    for start in _seed_order(bq):
        if start in values:
            continue
        values[start] = 1
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, p in adj[x]:
                want = p * values[x]
                if y not in values:
                    values[y] = want
                    queue.append(y)
                elif values[y] != want:
                    raise SignConflict(f"constraint between {x} and {y} cannot be satisfied")
    sigma = {a.id: values[(SIGMA, a.id)] for a in bq.arrows}
    epsilon = {a.id: values[(EPSILON, a.id)] for a in bq.arrows}
    return SignAssignment(bq, sigma, epsilon)


def check_signs(sa: SignAssignment) -> list[str]:
    """List every violated sign constraint (empty when the assignment is valid)."""
    bad = []
    for x, y, p in sign_constraints(sa.quiver):
        if sa.value(x) != p * sa.value(y):
            bad.append(f"{x[0]}({x[1]}) != {p:+d} * {y[0]}({y[1]})")
    return bad


def sigma_of(t: Thread, sa: SignAssignment) -> int:
    if not t.trivial:
        return sa.sigma[t.arrows[0]]
    bq = sa.quiver
    outs, ins = bq.out_arrows(t.start), bq.in_arrows(t.start)
    if t.kind == PERMITTED:
        if outs:
            return -sa.sigma[outs[0].id]
        if ins:
            return sa.epsilon[ins[0].id]
        return 1
    if outs:
        return -sa.sigma[outs[0].id]
    if ins:
        return -sa.epsilon[ins[0].id]
    return -1


def epsilon_of(t: Thread, sa: SignAssignment) -> int:
    if not t.trivial:
        return sa.epsilon[t.arrows[-1]]
    s = sigma_of(t, sa)
    return -s if t.kind == PERMITTED else s


def format_thread_report(bq: BoundQuiver, sa: SignAssignment | None = None) -> str:
    """Plain-text tables of H, F, full-relation cycles and signs."""
    sa = sa or assign_signs(bq)
    hs, fs = permitted_threads(bq), forbidden_threads(bq)
    lines = []

    def table(title: str, rows: list[tuple[str, int, int]]) -> None:
        width = max([len(title)] + [len(r[0]) for r in rows])
        lines.append(f"{title:>{width}}  sigma  eps")
        lines.append("-" * (width + 12))
        for name, s, e in rows:
            lines.append(f"{name:>{width}}  {s:>5d}  {e:>3d}")
        lines.append("")

    table("arrow", [(a.id, sa.sigma[a.id], sa.epsilon[a.id]) for a in bq.arrows])
    table("H", [(t.name, sigma_of(t, sa), epsilon_of(t, sa)) for t in hs])
    table("F", [(t.name + (" (cycle)" if t.wraps_cycle else ""), sigma_of(t, sa),
                 epsilon_of(t, sa)) for t in fs])
    cycles = full_relation_cycles(bq)
    lines.append("full-relation cycles:" + ("" if cycles else " none"))
    for c in cycles:
        lines.append("  " + " ".join(c.arrows))
    return "\n".join(lines) + "\n"
