"""Bound quivers with length-2 relations, checked against the gentle axioms.
Also home of the AG-function value type.

Identifiers are opaque strings.  Vertices and arrows keep their declaration
order, which every downstream enumeration uses as the canonical order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Violation:
    axiom: str  # "G1" .. "G4"
    subject: str  # offending vertex or arrow id
    message: str

    def __str__(self) -> str:
        return f"{self.axiom} at {self.subject}: {self.message}"


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver ``Q`` together with the length-2 relations generating ``I``."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex id")
        known = set(self.vertices)
        ids = set()
        for a in self.arrows:
            if a.id in ids:
                raise ValidationError(f"duplicate arrow id {a.id!r}")
            ids.add(a.id)
            if a.source not in known or a.target not in known:
                raise ValidationError(f"arrow {a.id!r} has an undeclared endpoint")
        seen = set()
        for alpha, beta in self.relations:
            if alpha not in ids or beta not in ids:
                raise ValidationError(f"unknown arrow in relation ({alpha}, {beta})")
            if (alpha, beta) in seen:
                raise ValidationError(f"duplicate relation ({alpha}, {beta})")
            seen.add((alpha, beta))
            if self.arrow(alpha).target != self.arrow(beta).source:
                raise ValidationError(f"relation ({alpha}, {beta}) is not composable")

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    @cached_property
    def relation_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.relations)

    @cached_property
    def _out(self) -> dict[str, tuple[Arrow, ...]]:
        out: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a)
        return {v: tuple(xs) for v, xs in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[Arrow, ...]]:
        inc: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a)
        return {v: tuple(xs) for v, xs in inc.items()}

    def arrow(self, arrow_id: str) -> Arrow:
        return self._arrow_map[arrow_id]

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._out[v]

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._in[v]

    def is_relation(self, alpha: str, beta: str) -> bool:
        return (alpha, beta) in self.relation_set

    def successors(self, arrow_id: str) -> tuple[Arrow, ...]:
        return self._out[self.arrow(arrow_id).target]

    def predecessors(self, arrow_id: str) -> tuple[Arrow, ...]:
        return self._in[self.arrow(arrow_id).source]

    def is_isolated(self, v: str) -> bool:
        return not self._out[v] and not self._in[v]

    def __len__(self) -> int:
        return len(self.vertices)


# -- axioms ------------------------------------------------------------------


def _g1(bq: BoundQuiver) -> list[Violation]:
    out = []
    for v in bq.vertices:
        if len(bq.out_arrows(v)) > 2:
            out.append(Violation("G1", v, f"{len(bq.out_arrows(v))} arrows start here"))
        if len(bq.in_arrows(v)) > 2:
            out.append(Violation("G1", v, f"{len(bq.in_arrows(v))} arrows stop here"))
    return out


def _g3_g4(bq: BoundQuiver, axiom: str) -> list[Violation]:
    related = axiom == "G3"
    out = []
    for b in bq.arrows:
        before = [a.id for a in bq.predecessors(b.id) if bq.is_relation(a.id, b.id) == related]
        after = [c.id for c in bq.successors(b.id) if bq.is_relation(b.id, c.id) == related]
        word = "in I" if related else "not in I"
        if len(before) > 1:
            out.append(Violation(axiom, b.id, f"arrows {before} precede it with composition {word}"))
        if len(after) > 1:
            out.append(Violation(axiom, b.id, f"arrows {after} follow it with composition {word}"))
    return out


def validate_gentle(bq: BoundQuiver) -> list[Violation]:
    """Return every failed instance of G1, G3 and G4; empty means gentle.

    G2 holds by construction because relations are stored as arrow pairs.
    """
    return _g1(bq) + _g3_g4(bq, "G3") + _g3_g4(bq, "G4")


def validate_string(bq: BoundQuiver) -> list[Violation]:
    return _g1(bq) + _g3_g4(bq, "G4")


def is_gentle(bq: BoundQuiver) -> bool:
    return not validate_gentle(bq)


def connected_components(bq: BoundQuiver) -> list[BoundQuiver]:
    parent = {v: v for v in bq.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in bq.arrows:
        ra, rb = find(a.source), find(a.target)
        if ra != rb:
            # keep the earliest-declared vertex as root
            if bq.vertex_index[ra] < bq.vertex_index[rb]:
                parent[rb] = ra
            else:
                parent[ra] = rb
    groups: dict[str, list[str]] = {}
    for v in bq.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = []
    for root in sorted(groups, key=bq.vertex_index.__getitem__):
        vs = set(groups[root])
        arrows = tuple(a for a in bq.arrows if a.source in vs)
        ids = {a.id for a in arrows}
        rels = tuple(r for r in bq.relations if r[0] in ids)
        comps.append(BoundQuiver(tuple(groups[root]), arrows, rels))
    return comps


# -- file format ---------------------------------------------------------------


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_quiver(text: str) -> BoundQuiver:
    vertices: list[str] = []
    arrows: list[Arrow] = []
    relations: list[tuple[str, str]] = []
    vset: set[str] = set()
    amap: dict[str, Arrow] = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        if not header_seen:
            if tok != ["quiver"]:
                raise ParseError("expected header 'quiver'", lineno)
            header_seen = True
            continue
        kind = tok[0]
        if kind == "vertex":
            if len(tok) != 2:
                raise ParseError("usage: vertex <id>", lineno)
            if tok[1] in vset:
                raise ParseError(f"duplicate vertex {tok[1]!r}", lineno)
            vset.add(tok[1])
            vertices.append(tok[1])
        elif kind == "arrow":
            if len(tok) != 4:
                raise ParseError("usage: arrow <id> <src> <tgt>", lineno)
            _, aid, s, t = tok
            if aid in amap:
                raise ParseError(f"duplicate arrow {aid!r}", lineno)
            for v in (s, t):
                if v not in vset:
                    raise ParseError(f"undeclared vertex {v!r}", lineno)
            amap[aid] = Arrow(aid, s, t)
            arrows.append(amap[aid])
        elif kind == "relation":
            if len(tok) != 3:
                raise ParseError("relations must have exactly two arrows", lineno)
            alpha, beta = tok[1], tok[2]
            for a in (alpha, beta):
                if a not in amap:
                    raise ParseError(f"unknown arrow {a!r}", lineno)
            if amap[alpha].target != amap[beta].source:
                raise ParseError(f"relation {alpha} {beta} is not composable", lineno)
            if (alpha, beta) in relations:
                raise ParseError(f"duplicate relation {alpha} {beta}", lineno)
            relations.append((alpha, beta))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if not header_seen:
        raise ParseError("empty input, expected 'quiver'", 1)
    return BoundQuiver(tuple(vertices), tuple(arrows), tuple(relations))


def serialize_quiver(bq: BoundQuiver) -> str:
    lines = ["quiver"]
    lines += [f"vertex {v}" for v in bq.vertices]
    lines += [f"arrow {a.id} {a.source} {a.target}" for a in bq.arrows]
    lines += [f"relation {a} {b}" for a, b in bq.relations]
    return "\n".join(lines) + "\n"


# -- AG function -----------------------------------------------------------------


@dataclass(frozen=True)
class AGFunction:
    """Finite multiset of pairs ``(n, m)``; ``f[(n, m)]`` is the multiplicity."""

    counts: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (n, m), c in self.counts.items():
            if n < 0 or m < 0 or c < 0:
                raise ValueError(f"negative entry in AG function: ({n},{m})x{c}")
            if c:
                clean[(int(n), int(m))] = int(c)
        object.__setattr__(self, "counts", dict(sorted(clean.items())))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "AGFunction":
        return cls(Counter(tuple(p) for p in pairs))

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return self.counts.get(tuple(pair), 0)

    def __add__(self, other: "AGFunction") -> "AGFunction":
        return AGFunction(Counter(self.counts) + Counter(other.counts))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AGFunction):
            return NotImplemented
        return self.counts == other.counts

    def __hash__(self) -> int:
        return hash(tuple(self.counts.items()))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for pair, c in self.counts.items():
            for _ in range(c):
                yield pair

    def __len__(self) -> int:
        return sum(self.counts.values())

    def difference(self, other: "AGFunction") -> "AGFunction":
        return AGFunction(Counter(self.counts) - Counter(other.counts))

    def serialize(self) -> str:
        return "".join(f"{n} {m} {c}\n" for (n, m), c in self.counts.items())

    @classmethod
    def parse(cls, text: str) -> "AGFunction":
        counts: Counter = Counter()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = _strip(raw)
            if not line:
                continue
            try:
                n, m, c = (int(x) for x in line.split())
            except ValueError:
                raise ParseError("expected '<n> <m> <count>'", lineno) from None
            counts[(n, m)] += c
        return cls(counts)

    def __str__(self) -> str:
        if not self.counts:
            return "0"
        parts = []
        for (n, m), c in self.counts.items():
            parts.append(f"({n},{m})*" if c == 1 else f"{c}({n},{m})*")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AGFunction({self.counts!r})"
