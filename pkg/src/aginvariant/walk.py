"""The AG pairing walk on a gentle bound quiver.

Starting from a permitted thread ``H``, ``phi`` moves backwards along the
forbidden thread ending where ``H`` ends, ``psi`` moves forwards along the
permitted thread starting where that forbidden thread starts; each closed
orbit contributes ``(#H visited, total forbidden length)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import NotGentle, PairingFailure
from .quiver import AGFunction, BoundQuiver, validate_gentle
from .threads import (
    FullRelationCycle,
    SignAssignment,
    Thread,
    assign_signs,
    epsilon_of,
    forbidden_threads,
    full_relation_cycles,
    permitted_threads,
    sigma_of,
    trivial_thread,
    FORBIDDEN,
    PERMITTED,
)


@dataclass
class WalkContext:
    quiver: BoundQuiver
    signs: SignAssignment | None = None
    permitted: list[Thread] = field(init=False)
    forbidden: list[Thread] = field(init=False)
    cycles: list[FullRelationCycle] = field(init=False)

    def __post_init__(self) -> None:
        bad = validate_gentle(self.quiver)
        if bad:
            raise NotGentle("; ".join(map(str, bad)))
        if self.signs is None:
            self.signs = assign_signs(self.quiver)
        self.permitted = permitted_threads(self.quiver)
        self.forbidden = [f for f in forbidden_threads(self.quiver) if not f.wraps_cycle]
        self.cycles = full_relation_cycles(self.quiver)

    @cached_property
    def _forbidden_by_end(self) -> dict[str, list[Thread]]:
        idx: dict[str, list[Thread]] = {}
        for f in self.forbidden:
            idx.setdefault(f.end, []).append(f)
        return idx

    @cached_property
    def _permitted_by_start(self) -> dict[str, list[Thread]]:
        idx: dict[str, list[Thread]] = {}
        for h in self.permitted:
            idx.setdefault(h.start, []).append(h)
        return idx


def phi(h: Thread, ctx: WalkContext) -> Thread:
    if h.trivial and ctx.quiver.is_isolated(h.start):
        return trivial_thread(FORBIDDEN, h.start)
    want = -epsilon_of(h, ctx.signs)
    found = [f for f in ctx._forbidden_by_end.get(h.end, [])
             if epsilon_of(f, ctx.signs) == want]
    if len(found) != 1:
        raise PairingFailure(f"phi({h}) has {len(found)} candidates: {[str(f) for f in found]}")
    return found[0]


def psi(f: Thread, ctx: WalkContext) -> Thread:
    if f.trivial and ctx.quiver.is_isolated(f.start):
        return trivial_thread(PERMITTED, f.start)
    want = -sigma_of(f, ctx.signs)
    found = [h for h in ctx._permitted_by_start.get(f.start, [])
             if sigma_of(h, ctx.signs) == want]
    if len(found) != 1:
        raise PairingFailure(f"psi({f}) has {len(found)} candidates: {[str(h) for h in found]}")
    return found[0]


@dataclass(frozen=True)
class Walk:
    """One closed orbit: ``permitted[i]`` is paired with ``forbidden[i]``."""

    permitted: tuple[Thread, ...]
    forbidden: tuple[Thread, ...]

    @property
    def pair(self) -> tuple[int, int]:
        return (len(self.permitted), sum(f.length for f in self.forbidden))


def walks(ctx: WalkContext) -> list[Walk]:
    visited: set[Thread] = set()
    out = []
    for start in ctx.permitted:
        if start in visited:
            continue
        hs, fs = [], []
        h = start
        while True:
            if h in visited:
                # the orbit re-entered somewhere other than its start
                raise PairingFailure(f"walk from {start} revisits {h}")
            visited.add(h)
            f = phi(h, ctx)
            hs.append(h)
            fs.append(f)
            h = psi(f, ctx)
            if h == start:
                break
        out.append(Walk(tuple(hs), tuple(fs)))
    return out


def ag_invariant_direct(bq: BoundQuiver, signs: SignAssignment | None = None) -> AGFunction:
    ctx = WalkContext(bq, signs)
    pairs = [w.pair for w in walks(ctx)]
    pairs += [(0, c.length) for c in ctx.cycles]
    return AGFunction.from_pairs(pairs)


def format_trace(bq: BoundQuiver, signs: SignAssignment | None = None) -> str:
    """The H_i / F_i tables of every walk, followed by the cycle pairs."""
    ctx = WalkContext(bq, signs)
    blocks = []
    for w in walks(ctx):
        rows = [(str(i), str(h), str(f)) for i, (h, f) in
                enumerate(zip(w.permitted, w.forbidden))]
        rows.append((str(len(w.permitted)), str(w.permitted[0]), ""))
        wi = max(len(r[0]) for r in rows)
        wh = max([3] + [len(r[1]) for r in rows])
        lines = [f"{'':>{wi}}  {'H_i':<{wh}}  F_i"]
        lines.append("-" * (wi + wh + 8))
        lines += [f"{a:>{wi}}  {b:<{wh}}  {c}".rstrip() for a, b, c in rows]
        lines.append(f"({w.pair[0]},{w.pair[1]})")
        blocks.append("\n".join(lines))
    for c in ctx.cycles:
        blocks.append(f"cycle {' '.join(c.arrows)}\n(0,{c.length})")
    return "\n\n".join(blocks) + "\n"
