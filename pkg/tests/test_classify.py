import pytest

from leavitt.classify import (
    CatalogEntry,
    admissible_polys,
    catalog,
    catalog_json,
    finite_dim_report,
    has_aperiodic_paths,
    orbit_reps,
)
from leavitt.errors import CannotCertifyError, ParseError
from leavitt.field import PrimeField, Rationals, parse_poly, poly_str
from leavitt.graph import Digraph

Q = Rationals()
F2 = PrimeField(2)
F3 = PrimeField(3)


def kinds(entries):
    return [e.kind for e in entries]


def test_orbit_reps_examples(A2, R1, T, R2):
    r = orbit_reps(A2, 4)
    assert r.sinks == ("v2",) and r.cycles == () and r.irrational_note is None
    r = orbit_reps(R1, 4)
    assert r.sinks == () and [c.cycle.edges for c in r.cycles] == [("e",)]
    r = orbit_reps(T, 4)
    assert r.sinks == ("w",) and [c.cycle.edges for c in r.cycles] == [("e",)]
    assert orbit_reps(R2, 2).irrational_note is not None


def test_aperiodic_detection():
    R2 = Digraph(["v"], [("e", "v", "v"), ("f", "v", "v")])
    assert has_aperiodic_paths(R2)
    T = Digraph(["u", "w"], [("e", "u", "u"), ("g", "u", "w")])
    assert not has_aperiodic_paths(T)
    # two disjoint loops: every infinite path is eventually periodic
    two = Digraph(["a", "b"], [("p", "a", "a"), ("q", "b", "b")])
    assert not has_aperiodic_paths(two)
    # one cycle feeding another one-way: still no aperiodic paths
    chain = Digraph(
        ["a", "b"],
        [("p", "a", "a"), ("m", "a", "b"), ("q", "b", "b")],
    )
    assert not has_aperiodic_paths(chain)
    # parallel edges within one component do give aperiodic paths
    par = Digraph(["a", "b"], [("p", "a", "b"), ("q", "a", "b"), ("r", "b", "a")])
    assert has_aperiodic_paths(par)


def test_catalog_a2_single_entry(A2):
    entries = catalog(A2, Q, 3, 4)
    assert kinds(entries) == ["sink"]
    assert entries[0].finite_dim is True and entries[0].dim == 2


def test_catalog_a3(A3):
    entries = catalog(A3, Q, 3, 4)
    assert len(entries) == 1 and entries[0].dim == 3


def test_line_graphs_have_one_entry():
    for n in range(2, 6):
        vs = [f"v{i}" for i in range(1, n + 1)]
        es = [(f"e{i}", f"v{i}", f"v{i+1}") for i in range(1, n)]
        g = Digraph(vs, es)
        entries = catalog(g, Q, 3, 4)
        assert len(entries) == 1
        assert entries[0].dim == n


def test_catalog_r1_f2(R1):
    entries = catalog(R1, F2, 2, 4)
    assert kinds(entries) == ["rational_chen", "rational_quotient"]
    assert poly_str(entries[1].poly) == "t^2+t+1"
    entries3 = catalog(R1, F2, 3, 4)
    assert len(entries3) == 4
    assert sorted(e.dim for e in entries3) == [1, 2, 3, 3]


def test_catalog_t_f2(T):
    entries = catalog(T, F2, 2, 4)
    assert kinds(entries) == ["sink", "rational_chen", "rational_quotient"]
    sink, chen, quot = entries
    assert sink.finite_dim is False
    assert chen.finite_dim is True and chen.dim == 1
    assert quot.finite_dim is True and quot.dim == 2


def test_catalog_r2_quotients_infinite_dim(R2):
    entries = catalog(R2, F2, 2, 2)
    quots = [e for e in entries if e.kind == "rational_quotient"]
    assert quots and all(e.finite_dim is False for e in quots)
    assert entries[-1].kind == "irrational_family"
    assert entries[-1].finite_dim is False


def test_finite_dim_report_examples(A2, R1, R2):
    e = catalog(A2, Q, 3, 4)[0]
    assert finite_dim_report(e, A2) == (True, 2)
    entries = catalog(R1, F2, 2, 4)
    quot = entries[1]
    assert finite_dim_report(quot, R1) == (True, 2)
    r2entries = catalog(R2, F2, 2, 2)
    quot2 = next(e for e in r2entries if e.kind == "rational_quotient")
    fin, dim = finite_dim_report(quot2, R2)
    assert fin is False and dim is None


def test_catalog_over_q_with_cycles_needs_polys(R1):
    with pytest.raises(CannotCertifyError):
        catalog(R1, Q, 3, 4)
    entries = catalog(R1, Q, 3, 4, quotient_polys=[parse_poly(Q, "t^2-2")])
    assert kinds(entries) == ["rational_chen", "rational_quotient"]
    with pytest.raises(ParseError):
        catalog(R1, Q, 3, 4, quotient_polys=[parse_poly(Q, "t^2-1")])


def test_admissible_polys_exclusions():
    polys = admissible_polys(F2, 2)
    assert [poly_str(f) for f in polys] == ["t^2+t+1"]  # t and t+1=t-1 dropped
    polys3 = admissible_polys(F3, 1)
    assert [poly_str(f) for f in polys3] == ["t+1"]  # t, t-1=t+2 dropped


def test_noniso_witnesses_pairwise_distinct(T, R1):
    for g, K in [(T, F2), (R1, F2)]:
        entries = catalog(g, K, 3, 4)
        tags = set()
        for e in entries:
            tag = (e.kind, str(e.data_json()))
            assert tag not in tags
            tags.add(tag)
            assert e.noniso_witness


def relabel(g: Digraph, mapping):
    return Digraph(
        sorted(g.vertices),
        [(mapping.get(e.id, e.id), e.src, e.dst) for e in g.edges.values()],
    )


def entry_key(e: CatalogEntry, mapping):
    if e.kind == "sink":
        return ("sink", e.sink)
    if e.kind == "irrational_family":
        return ("family",)
    word = tuple(mapping.get(x, x) for x in e.cycle.cycle.edges)
    canon = min(word[i:] + word[:i] for i in range(len(word)))
    f = poly_str(e.poly) if e.poly is not None else None
    return (e.kind, canon, f, e.finite_dim, e.dim)


def test_catalog_stable_under_relabeling(R1, R2, T):
    cases = [
        (R1, {"e": "z"}),
        (R2, {"e": "b", "f": "a"}),
        (T, {"e": "x9", "g": "a0"}),
    ]
    for g, mapping in cases:
        g2 = relabel(g, mapping)
        c1 = catalog(g, F2, 2, 4)
        c2 = catalog(g2, F2, 2, 4)
        ident = {e: e for e in mapping.values()}
        assert {entry_key(e, mapping) for e in c1} == {
            entry_key(e, ident) for e in c2
        }


def test_catalog_json_shape(T):
    data = catalog_json(catalog(T, F2, 2, 4), F2)
    assert data["label"] == "spectral simple modules"
    assert data["field"] == "F2"
    for row in data["entries"]:
        assert set(row) == {"kind", "data", "finite_dim", "dim", "noniso_witness"}
    sink_row = data["entries"][0]
    assert sink_row["dim"] == "infinite" and sink_row["finite_dim"] is False
