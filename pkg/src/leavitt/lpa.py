"""Leavitt path algebra elements in Cuntz-Krieger normal form.

Elements are K-linear combinations of monomials mu*nu^* with
r(mu) = r(nu).  The normal form forbids both paths of a monomial from
ending in the special edge of a regular vertex (the out-edge with least
id); rewriting uses the CK2 relation

    v = sum_{s(e)=v} e e^*        (v regular)

in the oriented form  mu'g (nu'g)^* -> mu'nu'^* - sum_{e != g} mu'e (nu'e)^*,
g the special edge.  Each rewrite either lowers total degree or removes a
violation at equal degree, so reduction terminates; the surviving
monomials are the standard linear basis of L_K(E).
"""

from dataclasses import dataclass

from .errors import CompositionError, FieldMismatchError, ParseError
from .field import Scalar, one, parse_scalar
from .graph import Digraph, FinPath, compose


@dataclass(frozen=True)
class Monomial:
    """mu * nu^* with r(mu) = r(nu)."""

    mu: FinPath
    nu: FinPath

    def __post_init__(self):
        if self.mu.graph != self.nu.graph:
            raise CompositionError("monomial paths over different graphs")
        if self.mu.range() != self.nu.range():
            raise CompositionError(
                f"monomial needs r(mu) = r(nu), got {self.mu.range()!r} != {self.nu.range()!r}"
            )

    @property
    def graph(self):
        return self.mu.graph

    def degree(self):
        return len(self.mu) - len(self.nu)

    def star(self):
        return Monomial(self.nu, self.mu)

    def __repr__(self):
        return f"<{self.mu}*~{self.nu}>"


def monomial_key(m: Monomial):
    return (len(m.mu), m.mu.edges, len(m.nu), m.nu.edges, m.mu.base, m.nu.base)


def vertex_mono(g: Digraph, v: str) -> Monomial:
    t = FinPath.trivial(g, v)
    return Monomial(t, t)


def edge_mono(g: Digraph, eid: str) -> Monomial:
    p = FinPath.of_edges(g, [eid])
    return Monomial(p, FinPath.trivial(g, p.range()))


def ghost_mono(g: Digraph, eid: str) -> Monomial:
    p = FinPath.of_edges(g, [eid])
    return Monomial(FinPath.trivial(g, p.range()), p)


def _violates(m: Monomial) -> bool:
    """True when both paths end in the special edge of their source vertex."""
    if not m.mu.edges or not m.nu.edges:
        return False
    last = m.mu.edges[-1]
    if last != m.nu.edges[-1]:
        return False
    return m.graph.special_edge(m.graph.src(last)) == last


def _rewrite(m: Monomial):
    """One CK2 step on a violating monomial: list of (Monomial, sign)."""
    g = m.graph
    last = m.mu.edges[-1]
    v = g.src(last)
    mu1 = m.mu.prefix(len(m.mu) - 1)
    nu1 = m.nu.prefix(len(m.nu) - 1)
    out = [(Monomial(mu1, nu1), 1)]
    for eid in g.out_edges(v):
        if eid == last:
            continue
        e = FinPath.of_edges(g, [eid])
        out.append((Monomial(compose(mu1, e), compose(nu1, e)), -1))
    return out


class AlgebraElement:
    """A normal-form element of L_K(E) over an exact field.

    `terms` maps Monomial -> nonzero Scalar; construction reduces to
    normal form, so structural equality is equality in the algebra.
    """

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph, field, terms=None, _reduced=False):
        self.graph = graph
        self.field = field
        raw = dict(terms or {})
        self.terms = raw if _reduced else _reduce_terms(graph, field, raw)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, graph, field):
        return cls(graph, field, {}, _reduced=True)

    @classmethod
    def from_monomial(cls, graph, field, m: Monomial, coeff=None):
        c = one(field) if coeff is None else Scalar.make(field, coeff)
        return cls(graph, field, {m: c})

    @classmethod
    def vertex(cls, graph, field, v):
        return cls.from_monomial(graph, field, vertex_mono(graph, v))

    @classmethod
    def edge(cls, graph, field, eid):
        return cls.from_monomial(graph, field, edge_mono(graph, eid))

    @classmethod
    def ghost(cls, graph, field, eid):
        return cls.from_monomial(graph, field, ghost_mono(graph, eid))

    @classmethod
    def path(cls, graph, field, p: FinPath):
        return cls.from_monomial(
            graph, field, Monomial(p, FinPath.trivial(graph, p.range()))
        )

    @classmethod
    def unit(cls, graph, field):
        """1 = sum of all vertices (the graph is finite)."""
        terms = {vertex_mono(graph, v): one(field) for v in graph.vertices}
        return cls(graph, field, terms, _reduced=True)

    # -- algebra ------------------------------------------------------

    def _check(self, other):
        if self.graph != other.graph:
            raise CompositionError("elements over different graphs")
        if self.field != other.field:
            raise FieldMismatchError("elements over different fields")

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return AlgebraElement(self.graph, self.field, out, _reduced=True)

    def __neg__(self):
        return self.scale(-one(self.field))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = Scalar.make(self.field, c)
        if c.is_zero():
            return AlgebraElement.zero(self.graph, self.field)
        out = {m: x * c for m, x in self.terms.items()}
        return AlgebraElement(self.graph, self.field, out, _reduced=True)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = _mono_mul_raw(m1, m2)
                if prod is not None:
                    _accumulate(out, prod, c1 * c2)
        return AlgebraElement(self.graph, self.field, out)

    def star(self):
        out = {m.star(): c for m, c in self.terms.items()}
        return AlgebraElement(self.graph, self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.graph == other.graph
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.graph, self.field, tuple(sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0])))))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __repr__(self):
        return element_str(self)


def _accumulate(terms: dict, m: Monomial, c: Scalar):
    cur = terms.get(m)
    new = c if cur is None else cur + c
    if new.is_zero():
        terms.pop(m, None)
    else:
        terms[m] = new


def _mono_mul_raw(m1: Monomial, m2: Monomial):
    """(alpha beta^*)(gamma delta^*) before CK2 reduction, or None for 0."""
    beta, gamma = m1.nu, m2.mu
    if len(gamma.edges) >= len(beta.edges):
        if gamma.edges[: len(beta.edges)] == beta.edges and (
            beta.edges or gamma.source() == beta.base
        ):
            rest = gamma.suffix_from(len(beta.edges))
            return Monomial(compose(m1.mu, rest), m2.nu)
    else:
        if beta.edges[: len(gamma.edges)] == gamma.edges and (
            gamma.edges or beta.source() == gamma.base
        ):
            rest = beta.suffix_from(len(gamma.edges))
            return Monomial(m1.mu, compose(m2.nu, rest))
    return None


def _reduce_terms(graph, field, terms: dict) -> dict:
    done = {}
    work = [(m, c) for m, c in terms.items() if not c.is_zero()]
    while work:
        m, c = work.pop()
        if c.is_zero():
            continue
        if _violates(m):
            for m2, sign in _rewrite(m):
                work.append((m2, c if sign > 0 else -c))
        else:
            _accumulate(done, m, c)
    return done


def mono_mul(m1: Monomial, m2: Monomial, field) -> AlgebraElement:
    """Product of two monomials as a normal-form element."""
    prod = _mono_mul_raw(m1, m2)
    g = m1.graph
    if prod is None:
        return AlgebraElement.zero(g, field)
    return AlgebraElement.from_monomial(g, field, prod)


def reduce(x: AlgebraElement) -> AlgebraElement:
    """Normal form (elements reduce on construction; provided for clarity)."""
    return AlgebraElement(x.graph, x.field, x.terms)


def mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def scale(c, x: AlgebraElement) -> AlgebraElement:
    return x.scale(c)


def star(x: AlgebraElement) -> AlgebraElement:
    return x.star()


# ---------------------------------------------------------------------------
# twists


class TwistParam:
    """An edge-indexed family of nonzero scalars a = (a_e); absent edges
    default to 1."""

    def __init__(self, graph, field, values=None):
        self.graph = graph
        self.field = field
        vals = {}
        for eid, raw in (values or {}).items():
            if eid not in graph.edges:
                raise ParseError(f"twist names unknown edge {eid!r}")
            s = Scalar.make(field, raw)
            if s.is_zero():
                raise ZeroDivisionError(f"twist value for {eid!r} is zero")
            vals[eid] = s
        self.values = vals

    def weight(self, eid) -> Scalar:
        return self.values.get(eid, one(self.field))

    def is_trivial(self):
        return all(v == one(self.field) for v in self.values.values())

    def pointwise_mul(self, other: "TwistParam") -> "TwistParam":
        if self.graph != other.graph or self.field != other.field:
            raise FieldMismatchError("twists over different graph/field")
        vals = {e: self.weight(e) * other.weight(e)
                for e in set(self.values) | set(other.values)}
        return TwistParam(self.graph, self.field, vals)

    def __repr__(self):
        inner = ", ".join(f"{e}={v}" for e, v in sorted(self.values.items()))
        return f"TwistParam({inner})"


def path_weight(a: TwistParam, q: FinPath) -> Scalar:
    """a_q = product of edge weights along q; 1 on trivial paths."""
    w = one(a.field)
    for eid in q.edges:
        w = w * a.weight(eid)
    return w


def q_stable(a: TwistParam, q: FinPath) -> bool:
    return path_weight(a, q) == one(a.field)


def sigma_twist(a: TwistParam, x: AlgebraElement) -> AlgebraElement:
    """The automorphism v -> v, e -> a_e e, e* -> a_e^{-1} e*, applied
    termwise: mu nu^* -> a_mu a_nu^{-1} mu nu^*."""
    if a.field != x.field:
        raise FieldMismatchError("twist over a different field")
    out = {}
    for m, c in x.terms.items():
        factor = path_weight(a, m.mu) * path_weight(a, m.nu).inv()
        _accumulate(out, m, c * factor)
    return AlgebraElement(x.graph, x.field, out, _reduced=True)


# ---------------------------------------------------------------------------
# element syntax: "2*e1.e2*~e3 + 1/3*v2"


import re as _re

_PLAIN_NUMBER = _re.compile(r"^-?\d+(/\d+)?$")


def element_str(x: AlgebraElement) -> str:
    """Canonical printer: terms sorted by (|mu|, mu, |nu|, nu)."""
    if x.is_zero():
        return "0"
    parts = []
    for m, c in x.sorted_terms():
        body = _mono_str(m)
        cs = str(c)
        neg = False
        if _PLAIN_NUMBER.match(cs):
            if cs.startswith("-"):
                neg, cs = True, cs[1:]
        elif not cs.startswith("("):
            cs = f"({cs})"
        piece = body if cs == "1" else f"{cs}*{body}"
        if not parts:
            parts.append(("-" if neg else "") + piece)
        else:
            parts.append(("- " if neg else "+ ") + piece)
    return " ".join(parts)


def _mono_str(m: Monomial) -> str:
    if m.mu.is_trivial() and m.nu.is_trivial():
        return m.mu.base
    mu = ".".join(m.mu.edges)
    nu = ".".join(m.nu.edges)
    if not m.nu.edges:
        return mu
    if not m.mu.edges:
        return f"~{nu}"
    return f"{mu}*~{nu}"


def parse_element(graph: Digraph, field, text: str) -> AlgebraElement:
    """Parse the CLI element syntax into a normal-form element.

    Terms are separated by +/-; within a term "*" separates factors, "."
    composes edges into a path, "~" stars the following path, vertices
    stand for trivial paths, and scalars appear as fractions or
    parenthesized polynomials.  A "." directly before "~" is read as "*".
    """
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty element expression")
    if s == "0":
        return AlgebraElement.zero(graph, field)
    s = s.replace(".~", "*~")
    total = AlgebraElement.zero(graph, field)
    for sign, chunk in _signed_chunks(s):
        term = _parse_term(graph, field, chunk)
        total = total + (term if sign > 0 else -term)
    return total


def _signed_chunks(s: str):
    chunks, cur, sign, depth = [], "", 1, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "*.~+-(/^":
            chunks.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
        elif ch in "+-" and depth == 0 and i == 0:
            sign = 1 if ch == "+" else -1
        else:
            cur += ch
    chunks.append((sign, cur))
    if any(not c for _, c in chunks):
        raise ParseError(f"empty term in {s!r}")
    return chunks


def _split_factors(chunk: str):
    out, cur, depth = [], "", 0
    for ch in chunk:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    if any(not f for f in out):
        raise ParseError(f"empty factor in {chunk!r}")
    return out


def _parse_term(graph, field, chunk: str) -> AlgebraElement:
    acc = None
    coeff = one(field)
    for fac in _split_factors(chunk):
        if fac.startswith("(") and fac.endswith(")"):
            coeff = coeff * parse_scalar(field, fac[1:-1])
            continue
        if fac.startswith("~"):
            p = _parse_path(graph, fac[1:])
            el = AlgebraElement.from_monomial(
                graph, field, Monomial(FinPath.trivial(graph, p.range()), p)
            )
        else:
            ids = fac.split(".")
            if all(i not in graph.edges and i not in graph.vertices for i in ids):
                # not graph ids: try as a scalar literal
                coeff = coeff * parse_scalar(field, fac)
                continue
            p = _parse_path(graph, fac)
            el = AlgebraElement.path(graph, field, p)
        acc = el if acc is None else acc * el
    if acc is None:
        raise ParseError(f"term {chunk!r} has no monomial factor")
    return acc.scale(coeff)


def _parse_path(graph, text: str) -> FinPath:
    ids = text.split(".")
    path = None
    for tok in ids:
        if tok in graph.edges:
            step = FinPath.of_edges(graph, [tok])
        elif tok in graph.vertices:
            step = FinPath.trivial(graph, tok)
        else:
            raise ParseError(f"unknown id {tok!r} in path {text!r}")
        path = step if path is None else compose(path, step)
    return path
