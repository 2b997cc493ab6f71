import itertools

import pytest
from hypothesis import given, strategies as st

from leavitt.errors import CompositionError, ParseError
from leavitt.graph import (
    Digraph,
    FinPath,
    SimpleClosedPath,
    compose,
    paths_up_to,
    primitive_root,
    rotate,
    simple_cycles,
)

from conftest import cyc


def brute_force_cycle_classes(g, max_len):
    """Oracle: enumerate all closed edge words, drop proper powers, dedupe
    rotation classes; returns the set of canonical (lex-least) words."""
    classes = set()
    for n in range(1, max_len + 1):
        for word in itertools.product(sorted(g.edges), repeat=n):
            ok = all(g.dst(word[i]) == g.src(word[i + 1]) for i in range(n - 1))
            if not ok or g.dst(word[-1]) != g.src(word[0]):
                continue
            if any(n % d == 0 and word == word[:d] * (n // d) for d in range(1, n)):
                continue
            classes.add(min(word[i:] + word[:i] for i in range(n)))
    return classes


def test_compose_basic(R1, A2):
    e = cyc(R1, "e")
    ee = compose(e, e)
    assert ee.edges == ("e", "e") and len(ee) == 2
    triv = FinPath.trivial(R1, "v")
    assert compose(triv, e) == e
    assert compose(e, triv) == e
    a = cyc(A2, "e")
    with pytest.raises(CompositionError):
        compose(a, a)  # r(e) = v2 != v1 = s(e)


def test_compose_associative(R2):
    ps = [p for p in paths_up_to(R2, 2)]
    for p in ps:
        for q in ps:
            if p.range() != q.source():
                continue
            for r in ps:
                if q.range() != r.source():
                    continue
                assert compose(compose(p, q), r) == compose(p, compose(q, r))


def test_simple_cycles_r1(R1):
    got = {c.cycle.edges for c in simple_cycles(R1, 3)}
    assert got == brute_force_cycle_classes(R1, 3) == {("e",)}


def test_simple_cycles_acyclic(A2):
    assert simple_cycles(A2, 5) == set()


def test_simple_cycles_r2(R2):
    got = {c.cycle.edges for c in simple_cycles(R2, 2)}
    assert got == brute_force_cycle_classes(R2, 2) == {("e",), ("f",), ("e", "f")}


def test_simple_cycles_r2_longer_matches_oracle(R2):
    got = {c.cycle.edges for c in simple_cycles(R2, 4)}
    assert got == brute_force_cycle_classes(R2, 4)


def test_rotate():
    g = Digraph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")])
    c = SimpleClosedPath(cyc(g, "e1", "e2", "e3"))
    assert rotate(c, 1).edges == ("e2", "e3", "e1")
    assert rotate(c, 3) == c.cycle
    with pytest.raises(IndexError):
        rotate(c, 0)
    with pytest.raises(IndexError):
        rotate(c, 4)


def test_rotate_two_loops(R2, R1):
    c = SimpleClosedPath(cyc(R2, "e", "f"))
    assert rotate(c, 1).edges == ("f", "e")
    c1 = SimpleClosedPath(cyc(R1, "e"))
    assert rotate(c1, 1).edges == ("e",)


def test_primitive_root(R2, R1):
    root, m = primitive_root(cyc(R2, "e", "f", "e", "f"))
    assert root.cycle.edges == ("e", "f") and m == 2
    root, m = primitive_root(cyc(R1, "e"))
    assert root.cycle.edges == ("e",) and m == 1
    root, m = primitive_root(cyc(R2, "e", "e", "f"))
    assert root.cycle.edges == ("e", "e", "f") and m == 1
    with pytest.raises(CompositionError):
        primitive_root(FinPath.trivial(R1, "v"))


def test_primitive_root_keeps_phase(R2):
    d = cyc(R2, "f", "e", "f", "e")
    root, m = primitive_root(d)
    assert root.cycle.edges * m == d.edges
    assert root.canonical().cycle.edges == ("e", "f")


def test_simple_cycles_are_primitive_and_canonical(R2):
    for c in simple_cycles(R2, 4):
        root, m = primitive_root(c.cycle)
        assert m == 1 and root.cycle == c.cycle
        assert c.canonical() == c


def test_rotation_classes_partition(R2):
    """Every closed word's primitive root appears exactly once (canonically)."""
    listed = {c.cycle.edges for c in simple_cycles(R2, 4)}
    for n in range(1, 5):
        for word in itertools.product(["e", "f"], repeat=n):
            root, _ = primitive_root(cyc(R2, *word))
            canon = root.canonical().cycle.edges
            assert canon in listed


def test_special_edge_and_sinks(A2, T):
    assert A2.special_edge("v1") == "e"
    assert A2.special_edge("v2") is None
    assert A2.is_sink("v2") and not A2.is_sink("v1")
    assert T.sinks() == ["w"]
    assert T.special_edge("u") == "e"  # least out-edge id


def test_graph_json_roundtrip(T):
    assert Digraph.from_json(T.to_json()) == T


def test_graph_json_rejects_duplicates_and_dangles():
    with pytest.raises(ParseError):
        Digraph.from_json({"vertices": ["v", "v"], "edges": []})
    with pytest.raises(ParseError):
        Digraph.from_json(
            {"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "zz"}]}
        )
    with pytest.raises(ParseError):
        Digraph.from_json(
            {
                "vertices": ["v"],
                "edges": [
                    {"id": "e", "src": "v", "dst": "v"},
                    {"id": "e", "src": "v", "dst": "v"},
                ],
            }
        )


def test_isolated_vertex_is_a_sink():
    g = Digraph(["v", "iso"], [("e", "v", "v")])
    assert g.is_sink("iso")


@given(st.lists(st.sampled_from(["e", "f"]), min_size=1, max_size=8))
def test_primitive_root_reconstructs_word(word):
    g = Digraph(["v"], [("e", "v", "v"), ("f", "v", "v")])
    d = FinPath.of_edges(g, word)
    root, m = primitive_root(d)
    assert root.cycle.edges * m == tuple(word)
    assert root.period * m == len(word)
