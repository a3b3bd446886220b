from __future__ import annotations

import pytest

from aginvariant import build_quiver, build_quiver_partial, inflate, parse_angulation
from aginvariant.angulation import random_disc_angulation, validate
from aginvariant.construct import run_insertions, validate_partial
from aginvariant.errors import InfeasibleParameters, ValidationError
from aginvariant.quiver import is_gentle

from conftest import load_angulation


def shape(q):
    """Arrows as (source, target) and relations as vertex triples."""
    arrows = sorted((a.source, a.target) for a in q.arrows)
    rels = sorted((q.arrow(x).source, q.arrow(x).target, q.arrow(y).target) for x, y in q.relations)
    return arrows, rels


def test_d2_is_the_a7_quiver():
    q = build_quiver(load_angulation("d2.ang"))
    assert q.vertices == tuple("1234567")
    assert shape(q) == (
        [("1", "2"), ("2", "3"), ("4", "3"), ("5", "4"), ("5", "6"), ("6", "7")],
        [("1", "2", "3"), ("5", "6", "7")],
    )


def test_ann_is_a3_with_one_relation():
    q = build_quiver(load_angulation("ann.ang"))
    assert shape(q) == ([("t1", "t2"), ("t2", "t3")], [("t1", "t2", "t3")])


def test_pinwheel_is_a_full_relation_three_cycle():
    q = build_quiver(load_angulation("hex.ang"))
    assert shape(q) == ([("1", "2"), ("2", "3"), ("3", "1")],
                        [("1", "2", "3"), ("2", "3", "1"), ("3", "1", "2")])


def test_p1_quiver():
    p = load_angulation("p1.ang")
    assert validate_partial(p) == []
    q = build_quiver_partial(p)
    assert q == build_quiver(p)
    assert shape(q) == ([("t2", "t1"), ("t3", "t2"), ("t4", "t3")], [("t4", "t3", "t2")])


def test_arrow_ids_follow_the_face_walk():
    q = build_quiver(load_angulation("ann.ang"))
    assert [a.id for a in q.arrows] == ["t1+t2", "t2+t3"]


def test_partial_violations():
    text = ("angulation surface\npartial\nboundary d 4\narc x d.0 d.2\n"
            "face f0 b:d:0 b:d:1 a:x:-\nface f1 a:x:+ b:d:2 b:d:3\n")
    p = parse_angulation(text)
    assert validate_partial(p) == []
    # two squares with three boundary edges each
    sq = ("angulation surface\npartial\nboundary d 6\narc x d.0 d.3\n"
          "face f0 b:d:0 b:d:1 b:d:2 a:x:-\nface f1 a:x:+ b:d:3 b:d:4 b:d:5\n")
    bad = validate_partial(parse_angulation(sq))
    assert [v.face for v in bad] == ["f0", "f1"]
    with pytest.raises(ValidationError):
        inflate(parse_angulation(sq), 3)


def test_internal_triangle_is_flagged():
    p = parse_angulation("angulation disc\npartial\npoints 6\narc a 0 2\narc b 2 4\narc c 4 0\n")
    assert [v.face for v in validate_partial(p)] == ["f1"]


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_inflation_keeps_the_quiver(m):
    p = load_angulation("p1.ang")
    a = inflate(p, m)
    validate(a)
    assert a.m == m and all(len(f) == m + 2 for f in a.faces)
    assert build_quiver(a) == build_quiver(p)
    assert is_gentle(build_quiver(a))


def test_inflation_point_counts():
    p = load_angulation("p1.ang")
    a3 = inflate(p, 3)
    assert len(a3.points) == 17
    assert run_insertions(p, a3) == [2, 2, 1, 2, 2]
    assert len(inflate(p, 2).points) == 12


def test_inflation_rejects_small_m_and_full_angulations():
    p = load_angulation("p1.ang")
    with pytest.raises(InfeasibleParameters):
        inflate(p, 1)
    with pytest.raises(ValidationError):
        inflate(load_angulation("d2.ang"), 3)


def test_built_quivers_are_gentle():
    for seed in range(40):
        a = random_disc_angulation(1 + seed % 4, 2 + seed % 9, seed)
        assert is_gentle(build_quiver(a))
