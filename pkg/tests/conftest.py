"""Reference graphs and shared helpers for the test suite.

R1: one vertex, one loop.        R2: one vertex, two loops.
A2/A3: oriented line graphs.     T: Toeplitz graph (loop + exit to a sink).
"""

import random

import pytest

from leavitt.boundary import IrrationalPath, RationalPath, SinkPath, ThueMorseLikeRule
from leavitt.field import Poly, PrimeField, QuotientField, Rationals, Scalar
from leavitt.graph import Digraph, FinPath, paths_up_to
from leavitt.lpa import AlgebraElement, Monomial


@pytest.fixture(scope="session")
def R1():
    return Digraph(["v"], [("e", "v", "v")])


@pytest.fixture(scope="session")
def R2():
    return Digraph(["v"], [("e", "v", "v"), ("f", "v", "v")])


@pytest.fixture(scope="session")
def A2():
    return Digraph(["v1", "v2"], [("e", "v1", "v2")])


@pytest.fixture(scope="session")
def A3():
    return Digraph(["v1", "v2", "v3"], [("e1", "v1", "v2"), ("e2", "v2", "v3")])


@pytest.fixture(scope="session")
def T():
    return Digraph(["u", "w"], [("e", "u", "u"), ("g", "u", "w")])


@pytest.fixture(scope="session")
def Q():
    return Rationals()


@pytest.fixture(scope="session")
def F2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def F5():
    return PrimeField(5)


def cyc(graph, *edges):
    return FinPath.of_edges(graph, edges)


def rational(graph, *cycle_edges, prefix=()):
    c = FinPath.of_edges(graph, cycle_edges)
    if prefix:
        p = FinPath.of_edges(graph, prefix)
    else:
        p = FinPath.trivial(graph, c.source())
    return RationalPath.make(p, c)


def sink_point(graph, *edges, vertex=None):
    if edges:
        return SinkPath(FinPath.of_edges(graph, edges))
    return SinkPath(FinPath.trivial(graph, vertex))


def tm_point(graph, e="e", f="f"):
    return IrrationalPath.make(ThueMorseLikeRule(graph, (e, f)))


def rand_scalar(field, rng, nonzero=False):
    if isinstance(field, QuotientField):
        while True:
            coeffs = tuple(rand_scalar(field.base, rng) for _ in range(field.degree()))
            s = Scalar.make(field, Poly(field.base, coeffs))
            if not nonzero or not s.is_zero():
                return s
    if isinstance(field, PrimeField):
        lo = 1 if nonzero else 0
        return Scalar.make(field, rng.randrange(lo, field.p))
    num = rng.randint(-6, 6)
    while nonzero and num == 0:
        num = rng.randint(-6, 6)
    from fractions import Fraction

    return Scalar.make(field, Fraction(num, rng.randint(1, 5)))


def rand_element(graph, field, rng, max_path_len=2, max_terms=3):
    """A random normal-form element with small monomials."""
    paths = paths_up_to(graph, max_path_len)
    out = AlgebraElement.zero(graph, field)
    for _ in range(rng.randint(1, max_terms)):
        mu = rng.choice(paths)
        nus = [p for p in paths if p.range() == mu.range()]
        nu = rng.choice(nus)
        out = out + AlgebraElement.from_monomial(
            graph, field, Monomial(mu, nu), rand_scalar(field, rng)
        )
    return out


def seeded(name):
    return random.Random(name if isinstance(name, int) else hash(name) & 0xFFFF)
