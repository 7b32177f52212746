import pytest
from hypothesis import given, strategies as st

from brauerlab.rootsystem import (CoxeterDiagram, UnsupportedDiagram, format_root, inner,
                                  parse_root, reflect, root_height, root_system, weyl_group_order)


@pytest.mark.parametrize("kind,count", [("A2", 3), ("A5", 15), ("D4", 12), ("D6", 30),
                                        ("E6", 36), ("E7", 63), ("E8", 120)])
def test_positive_root_counts(kind, count):
    assert len(root_system(kind).positive_roots) == count


def test_a2_roots():
    assert set(root_system("A2").positive_roots) == {(1, 0), (0, 1), (1, 1)}


@pytest.mark.parametrize("kind,h", [("E6", 11), ("E7", 17), ("E8", 29)])
def test_highest_root_height(kind, h):
    assert root_height(root_system(kind).highest_root) == h


def test_bourbaki_labels():
    d = CoxeterDiagram.of("E6")
    assert d.neighbors(4) == [2, 3, 5]
    assert d.neighbors(2) == [4]


def test_inner_products(e6):
    a = {i: e6.simple_root(i) for i in e6.nodes}
    assert inner(e6, a[3], a[3]) == 2
    assert inner(e6, a[1], a[2]) == 0
    a13 = tuple(x + y for x, y in zip(a[1], a[3]))
    assert inner(e6, a13, a[3]) == 1


def test_reflect_examples(e6):
    a1, a3, a6 = e6.simple_root(1), e6.simple_root(3), e6.simple_root(6)
    assert reflect(e6, a1, a1) == tuple(-x for x in a1)
    assert reflect(e6, a3, a1) == tuple(x + y for x, y in zip(a1, a3))
    assert reflect(e6, a6, a1) == a1


def test_reflect_rejects_non_root(e6):
    with pytest.raises(ValueError):
        reflect(e6, (2, 0, 0, 0, 0, 0), e6.simple_root(1))


@given(st.integers(0, 119), st.integers(0, 119))
def test_reflection_is_an_isometric_involution(i, j):
    e8 = root_system("E8")
    a, b = e8.positive_roots[i], e8.positive_roots[j]
    rb = reflect(e8, a, b)
    assert reflect(e8, a, rb) == b
    assert inner(e8, rb, rb) == 2
    assert e8.is_root(rb)


def test_root_height_example():
    assert root_height((1, 1, 2, 2, 1, 0)) == 7


def test_parse_and_format(e6):
    assert parse_root(e6, "a3") == (0, 0, 1, 0, 0, 0)
    assert parse_root(e6, "0,1,1,2,1,0") == (0, 1, 1, 2, 1, 0)
    assert format_root((0, 1, 1, 2, 1, 0)) == "0,1,1,2,1,0"
    for bad in ["a7", "1,2", "x", "1,,2,3,4,5"]:
        with pytest.raises(ValueError):
            parse_root(e6, bad)


@pytest.mark.parametrize("kind", ["E9", "D3", "B3", "A0", ""])
def test_unsupported_kinds(kind):
    with pytest.raises(UnsupportedDiagram):
        CoxeterDiagram.of(kind)


@pytest.mark.parametrize("kind,order", [("A1", 2), ("A2", 6), ("A5", 720), ("D4", 192),
                                        ("D6", 23040), ("E6", 51840), ("E7", 2903040),
                                        ("E8", 696729600)])
def test_weyl_orders(kind, order):
    assert weyl_group_order(CoxeterDiagram.of(kind)) == order


def test_weyl_order_of_disconnected_and_empty():
    e7 = CoxeterDiagram.of("E7")
    assert weyl_group_order(e7.induced([1, 3, 5, 6, 7])) == 6 * 24
    assert weyl_group_order(e7.induced([])) == 1


def test_component_types():
    e7 = CoxeterDiagram.of("E7")
    assert e7.induced([2, 3, 5, 7]).kind == "A1 A1 A1 A1"
    assert e7.induced([1, 3, 5, 6, 7]).kind == "A2 A3"
    assert e7.induced([]).kind == "empty"
