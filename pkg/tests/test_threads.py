from __future__ import annotations

import pytest

from aginvariant.errors import NotGentle, SignConflict
from aginvariant.threads import (
    SIGMA,
    Thread,
    assign_signs,
    check_signs,
    epsilon_of,
    forbidden_threads,
    format_thread_report,
    full_relation_cycles,
    permitted_threads,
    sign_components,
    sigma_of,
)

from conftest import make_quiver


def names(threads):
    return {t.name for t in threads}


def by_name(threads, name) -> Thread:
    return next(t for t in threads if t.name == name)


def test_e1_permitted(e1):
    assert names(permitted_threads(e1)) == {"a2 a1 a3 a4", "a5", "h_1", "h_3", "h_5"}


def test_e1_forbidden(e1):
    assert names(forbidden_threads(e1)) == {"a4 a2", "a3 a5", "a1", "p_2", "p_5"}
    assert full_relation_cycles(e1) == []


def test_a7_threads(a7):
    assert names(permitted_threads(a7)) == {"a4 a3", "h_1", "a1", "a2", "h_4", "a5", "a6", "h_7"}
    assert names(forbidden_threads(a7)) == {"a1 a2", "a3", "a4", "a5 a6", "p_1", "p_2", "p_6", "p_7"}


def test_single_vertex_threads():
    q = make_quiver(1, [])
    assert names(permitted_threads(q)) == {"h_1"}
    assert names(forbidden_threads(q)) == {"p_1"}


def test_three_cycle(three_cycle):
    fs = forbidden_threads(three_cycle)
    assert {t.name for t in fs if t.wraps_cycle} == {"x y z", "y z x", "z x y"}
    assert {t.name for t in fs if not t.wraps_cycle} == {"p_1", "p_2", "p_3"}
    assert [c.arrows for c in full_relation_cycles(three_cycle)] == [("x", "y", "z")]
    assert names(permitted_threads(three_cycle)) == {"x", "y", "z"}


def test_acyclic_has_no_cycles(a7):
    assert full_relation_cycles(a7) == []


def test_permitted_cycle_is_rejected():
    q = make_quiver(2, [("a", 1, 2), ("b", 2, 1)])
    with pytest.raises(NotGentle):
        permitted_threads(q)


def test_every_arrow_in_one_permitted_and_one_forbidden_structure(e1, a7, three_cycle):
    for q in (e1, a7, three_cycle):
        hs = [a for t in permitted_threads(q) for a in t.arrows]
        fs = [a for t in forbidden_threads(q, include_cycle_wraps=False) for a in t.arrows]
        fs += [a for c in full_relation_cycles(q) for a in c.arrows]
        assert sorted(hs) == sorted(a.id for a in q.arrows)
        assert sorted(fs) == sorted(a.id for a in q.arrows)


def test_canonical_order_is_deterministic(e1):
    assert [t.name for t in permitted_threads(e1)] == ["h_1", "a2 a1 a3 a4", "h_3", "a5", "h_5"]


def test_e1_signs(e1):
    sa = assign_signs(e1)
    assert check_signs(sa) == []
    assert sa.sigma["a1"] == 1 and sa.epsilon["a2"] == -1
    assert sa.sigma["a4"] == -sa.sigma["a5"]
    assert sa.epsilon["a4"] == sa.sigma["a2"]


def test_e1_thread_signs(e1):
    """Thread signs of E1 once the a5 component is oriented with sigma(a5) = +1."""
    sa = assign_signs(e1)
    hs, fs = permitted_threads(e1), forbidden_threads(e1)
    expected_h = {"a2 a1 a3 a4": (1, 1), "a5": (1, 1), "h_5": (1, -1),
                  "h_1": (-1, 1), "h_3": (-1, 1)}
    expected_f = {"a4 a2": (-1, -1), "a3 a5": (1, 1), "a1": (1, -1),
                  "p_2": (-1, -1), "p_5": (-1, -1)}
    # propagation may orient the a4/a5 component either way; fix sigma(a5) = +1
    if sa.sigma["a5"] != 1:
        comp = next(c for c in sign_components(e1) if (SIGMA, "a5") in c)
        sa = sa.negated(comp)
    assert check_signs(sa) == []
    for name, want in expected_h.items():
        t = by_name(hs, name)
        assert (sigma_of(t, sa), epsilon_of(t, sa)) == want, name
    for name, want in expected_f.items():
        t = by_name(fs, name)
        assert (sigma_of(t, sa), epsilon_of(t, sa)) == want, name


def test_two_out_arrows_get_opposite_sigma():
    q = make_quiver(3, [("a", 1, 2), ("b", 1, 3)])
    sa = assign_signs(q)
    assert sa.sigma["a"] == -sa.sigma["b"]


def test_negating_a_component_stays_valid(e1, a7, three_cycle):
    for q in (e1, a7, three_cycle):
        sa = assign_signs(q)
        for comp in sign_components(q):
            assert check_signs(sa.negated(comp)) == []


def test_sign_components_are_vertex_local(e1):
    for comp in sign_components(e1):
        touching = set()
        for kind, a in comp:
            arrow = e1.arrow(a)
            touching.add(arrow.source if kind == SIGMA else arrow.target)
        assert len(touching) == 1


def test_sign_conflict_on_non_gentle_input():
    # two arrows out of 2, one related to a and one not: satisfiable
    q = make_quiver(3, [("a", 1, 2), ("b", 2, 3), ("c", 2, 3)], [("a", "b")])
    assert check_signs(assign_signs(q)) == []
    # three parallel arrows cannot have pairwise opposite sigma
    bad = make_quiver(2, [("a", 1, 2), ("b", 1, 2), ("c", 1, 2)])
    with pytest.raises(SignConflict):
        assign_signs(bad)


def test_thread_report_mentions_everything(e1):
    text = format_thread_report(e1)
    for name in ("a2 a1 a3 a4", "h_5", "p_2", "a4 a2"):
        assert name in text
    assert "full-relation cycles: none" in text
    assert "cycle" in format_thread_report(make_quiver(3, [("x", 1, 2), ("y", 2, 3), ("z", 3, 1)],
                                                       [("x", "y"), ("y", "z"), ("z", "x")]))
