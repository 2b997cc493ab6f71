"""The graph groupoid, compact bisections, and induced modules.

A groupoid element (y, k, x) is stored as a ClassElement for y over the
base x together with the integer degree k; k equals the representative
degree |prefix| - shift except over a rational base, where it may differ
by a multiple of the period (those are the isotropy twists).

Induced modules Ind_x(V) are realized on the canonical coset basis: each
arrow is normalized to the representative with k = |prefix| - shift, and
the leftover isotropy power is pushed into the coefficient module via
its generator action ("t gamma (x) v = t (x) gamma v").
"""

from dataclasses import dataclass

from .boundary import (
    DEFAULT_DEPTH,
    ClassElement,
    IrrationalPath,
    RationalPath,
    apply_monomial,
    isotropy,
    orbit_points,
    word_prefix,
)
from .errors import (
    CompositionError,
    FieldMismatchError,
    IncompatibleCoefficientsError,
    ParseError,
)
from .field import (
    Poly,
    QuotientField,
    Scalar,
    embed,
    one,
    zero,
)
from .graph import FinPath, compose
from .lpa import AlgebraElement, Monomial, _mono_mul_raw


# ---------------------------------------------------------------------------
# groupoid elements


@dataclass(frozen=True)
class GroupoidElt:
    """The arrow (point(src), k, src.base) of G_E."""

    src: ClassElement
    k: int

    def __post_init__(self):
        d = self.src.rep_degree()
        if isinstance(self.src.base, RationalPath):
            if (self.k - d) % self.src.base.period != 0:
                raise CompositionError(
                    f"degree {self.k} not realizable: must be {d} mod {self.src.base.period}"
                )
        elif self.k != d:
            raise CompositionError(
                f"degree {self.k} not realizable: trivial isotropy forces {d}"
            )

    @property
    def base(self):
        return self.src.base

    def source_point(self):
        return self.src.point()

    def is_unit(self):
        return self.k == 0 and not self.src.prefix.edges and self.src.shift == 0

    def __repr__(self):
        return f"({self.src!r},{self.k},{self.base!r})"


def unit_at(x) -> GroupoidElt:
    return GroupoidElt(ClassElement.of_base(x), 0)


def gpd_mul(g: GroupoidElt, h: GroupoidElt) -> GroupoidElt:
    """(a,k,b)(b,l,c) = (a,k+l,c); the middle points must agree."""
    if g.base != h.source_point():
        raise CompositionError("middle mismatch: r(h) != point of g's base")
    mu1, k1 = g.src.prefix, g.src.shift
    mu2, k2 = h.src.prefix, h.src.shift
    if k1 <= len(mu2):
        pre = FinPath(mu2.graph, mu2.vertex_at(k1), mu2.edges[k1:])
        new = ClassElement.make(h.base, compose(mu1, pre), k2)
    else:
        new = ClassElement.make(h.base, mu1, k2 + k1 - len(mu2))
    return GroupoidElt(new, g.k + h.k)


def gpd_inv(g: GroupoidElt) -> GroupoidElt:
    """(y,k,x)^{-1} = (x,-k,y): rebase x as a class element over y."""
    y = g.source_point()
    nu_len = g.src.shift
    nu = FinPath(g.base.graph, g.base.vertex_at(0), tuple(
        g.base.edge_at(i) for i in range(1, nu_len + 1)
    ))
    new = ClassElement.make(y, nu, len(g.src.prefix))
    return GroupoidElt(new, -g.k)


# ---------------------------------------------------------------------------
# bisections


@dataclass(frozen=True)
class Bisection:
    """Z_(mu,nu) = {(mu z, |mu|-|nu|, nu z) : z in X}."""

    mu: FinPath
    nu: FinPath

    def __post_init__(self):
        if self.mu.graph != self.nu.graph:
            raise CompositionError("bisection paths over different graphs")
        if self.mu.range() != self.nu.range():
            raise CompositionError("bisection needs r(mu) = r(nu)")

    def degree(self):
        return len(self.mu) - len(self.nu)

    def __repr__(self):
        return f"Z({self.mu!r},{self.nu!r})"


def bisection_apply(B: Bisection, t: GroupoidElt):
    """1_B t: the composed arrow when s(t) lies in B^{-1}B, else None.

    None is the explicit zero marker (the algebra acting by 0), not an
    error.
    """
    ce = apply_monomial(B.mu, B.nu, t.src)
    if ce is None:
        return None
    return GroupoidElt(ce, t.k + B.degree())


def bisection_prod(B1: Bisection, B2: Bisection):
    """The set product Z_(a,b) Z_(m,n) as a single bisection, or None when
    the product is empty."""
    prod = _mono_mul_raw(Monomial(B1.mu, B1.nu), Monomial(B2.mu, B2.nu))
    if prod is None:
        return None
    return Bisection(prod.mu, prod.nu)


def monomial_bisection(m: Monomial) -> Bisection:
    """The dictionary 1_Z(mu,nu) <-> mu nu^*."""
    return Bisection(m.mu, m.nu)


# ---------------------------------------------------------------------------
# coefficient modules over the isotropy group


@dataclass(frozen=True)
class TrivialK:
    """K with the trivial action of a trivial isotropy group."""

    field: object

    def __repr__(self):
        return f"TrivialK({self.field})"


@dataclass(frozen=True)
class TwistedLine:
    """K'^{(a)}: the generator (x, ln, x) acts by a^l, a nonzero."""

    a: Scalar

    def __post_init__(self):
        if self.a.is_zero():
            raise ZeroDivisionError("twisted line needs a nonzero scalar")

    def __repr__(self):
        return f"TwistedLine({self.a})"


@dataclass(frozen=True)
class QuotientMod:
    """K[t,t^{-1}]/(f(t)) with the generator acting by multiplication by
    the class of t; f irreducible, f != t."""

    f: Poly

    def __repr__(self):
        return f"QuotientMod({self.f})"


def coeff_field_of(V, K):
    if isinstance(V, TrivialK):
        if V.field != K:
            raise FieldMismatchError("TrivialK over a different field")
        return K
    if isinstance(V, TwistedLine):
        F = V.a.field
        if F != K and not (isinstance(F, QuotientField) and F.base == K):
            raise FieldMismatchError(f"twisted line over {F}, not an extension of {K}")
        return F
    if isinstance(V, QuotientMod):
        if V.f.field != K:
            raise FieldMismatchError("quotient modulus over a different field")
        return QuotientField(K, V.f)  # validates irreducibility and f != t
    raise ParseError(f"unknown coefficient module {V!r}")


def unit_action_scalar(V, F) -> Scalar:
    """The action of the positive isotropy generator on the coefficient line."""
    if isinstance(V, TrivialK):
        return one(F)
    if isinstance(V, TwistedLine):
        return V.a
    return F.tbar()


# ---------------------------------------------------------------------------
# induced modules


class SupportElement:
    """A finitely supported map ClassElement -> coefficient scalar; the
    shared shape of induced-module and Chen-module elements."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms=None):
        self.module = module
        self.terms = {ce: c for ce, c in (terms or {}).items() if not c.is_zero()}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if type(other) is not type(self) or other.module != self.module:
            raise FieldMismatchError("elements of different modules")
        out = dict(self.terms)
        for ce, c in other.terms.items():
            s = out.get(ce)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(ce, None)
            else:
                out[ce] = s
        return type(self)(self.module, out)

    def scale(self, c):
        c = Scalar.make(self.module.coeff_field, c)
        return type(self)(self.module, {ce: v * c for ce, v in self.terms.items()})

    def __neg__(self):
        return self.scale(-one(self.module.coeff_field))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.module == other.module
            and self.terms == other.terms
        )

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0].prefix), kv[0].prefix.edges, kv[0].shift),
        )

    def __repr__(self):
        if self.is_zero():
            return "0"
        return " + ".join(f"({c})*{ce!r}" for ce, c in self.sorted_terms())


class InducedModuleElt(SupportElement):
    """A finitely supported element of Ind_x(V) on the coset basis."""


class InducedModule:
    """Ind_x(V) = KL_x (x)_{KG_x} V with the Steinberg action of L_K(E)."""

    def __init__(self, x, V, K):
        iso = isotropy(x)
        if isinstance(V, TrivialK) and not iso.is_trivial:
            raise IncompatibleCoefficientsError(
                "TrivialK needs trivial isotropy; use TwistedLine over a cycle"
            )
        if isinstance(V, (TwistedLine, QuotientMod)) and iso.is_trivial:
            raise IncompatibleCoefficientsError(
                f"{V!r} needs cyclic isotropy, but {x!r} has trivial isotropy"
            )
        self.x = x
        self.V = V
        self.acting_field = K
        self.coeff_field = coeff_field_of(V, K)
        self.unit_scalar = unit_action_scalar(V, self.coeff_field)
        self.period = iso.period
        self.graph = x.graph

    def __eq__(self, other):
        return (
            isinstance(other, InducedModule)
            and (self.x, self.V, self.acting_field)
            == (other.x, other.V, other.acting_field)
        )

    def __repr__(self):
        return f"Ind_{self.x!r}({self.V!r})"

    @property
    def coeff_dim(self):
        F = self.coeff_field
        if isinstance(F, QuotientField) and F.base == self.acting_field:
            return F.degree()
        return 1

    def coeff_basis(self):
        F = self.coeff_field
        if self.coeff_dim == 1:
            return [one(F)]
        t = F.tbar()
        out, cur = [], one(F)
        for _ in range(self.coeff_dim):
            out.append(cur)
            cur = cur * t
        return out

    def coeff_to_vector(self, s: Scalar):
        """K-coordinates of an F-scalar in the basis 1, t, ..., t^{d-1}."""
        if self.coeff_dim == 1:
            return [s]
        return [s.value.coeff(i) for i in range(self.coeff_dim)]

    def zero(self):
        return InducedModuleElt(self, {})

    def elt(self, ce: ClassElement, coeff=1) -> InducedModuleElt:
        if ce.base != self.x:
            raise FieldMismatchError("class element over a different base")
        return InducedModuleElt(self, {ce: Scalar.make(self.coeff_field, coeff)})

    def from_arrow(self, t: GroupoidElt, coeff=1) -> InducedModuleElt:
        """t (x) v normalized to the canonical coset representative."""
        if t.base != self.x:
            raise FieldMismatchError("arrow into a different base point")
        c = Scalar.make(self.coeff_field, coeff)
        return InducedModuleElt(self, {t.src: c * self._leftover(t.src, t.k)})

    def _leftover(self, ce: ClassElement, k: int) -> Scalar:
        d = ce.rep_degree()
        if self.period is None:
            assert k == d, "trivial isotropy admits a unique degree"
            return one(self.coeff_field)
        q, r = divmod(k - d, self.period)
        assert r == 0, "degree must match the representative mod the period"
        return self.unit_scalar ** q

    def basis(self, depth=DEFAULT_DEPTH):
        return list(orbit_points(self.x, depth))

    def act(self, z: AlgebraElement, m: InducedModuleElt) -> InducedModuleElt:
        return steinberg_act(z, m)

    def point_of(self, label: ClassElement):
        return label


def induce(x, V, K) -> InducedModule:
    """Ind_x(V); V must match the isotropy of x."""
    return InducedModule(x, V, K)


def steinberg_act(z: AlgebraElement, m: InducedModuleElt) -> InducedModuleElt:
    """Linear extension of 1_Z(mu,nu) through the monomial dictionary,
    followed by coset normalization into the coefficient module."""
    mod = m.module
    if z.graph != mod.graph:
        raise CompositionError("element over a different graph")
    if z.field != mod.acting_field:
        raise FieldMismatchError("element over a different field")
    out = mod.zero()
    for mono, c in z.terms.items():
        cF = embed(c, mod.coeff_field)
        for ce, v in m.terms.items():
            hit = apply_monomial(mono.mu, mono.nu, ce)
            if hit is None:
                continue
            k_new = ce.rep_degree() + mono.degree()
            factor = mod._leftover(hit, k_new)
            out = out + InducedModuleElt(mod, {hit: cF * v * factor})
    return out


# ---------------------------------------------------------------------------
# restriction


@dataclass(frozen=True)
class Restriction:
    """Res_x of a module with point-indexed basis: the surviving basis
    (point label, coefficient index) pairs and the isotropy generator's
    matrix over the acting field (columns are images)."""

    basis: tuple
    matrix: tuple

    @property
    def dim(self):
        return len(self.basis)

    def __iter__(self):
        return iter((list(self.basis), [list(r) for r in self.matrix]))


def isotropy_generator_element(x, graph, K) -> AlgebraElement:
    """The algebra element realizing the positive isotropy generator at x:
    the path monomial (prefix.cycle)(prefix)^* over a rational base, and
    the vertex unit s(x) otherwise."""
    if isinstance(x, RationalPath):
        mu = compose(x.prefix, x.cycle.cycle)
        return AlgebraElement.from_monomial(graph, K, Monomial(mu, x.prefix))
    v = x.source()
    return AlgebraElement.vertex(graph, K, v)


def _survives(lab, x, horizon) -> bool:
    """Does the basis vector at this class element lie in every projection
    1_Z(mu,mu), mu a prefix of x?

    The intersection over all prefixes keeps exactly the vectors sitting
    at the point x; that is decided exactly by comparing canonical points
    whenever at least one side is a sink or rational point (or both share
    a generator rule), and by word comparison up to the horizon only in
    the remaining case of two distinct aperiodic rules.
    """
    y = lab.point()
    both_irrational = isinstance(y, IrrationalPath) and isinstance(x, IrrationalPath)
    if both_irrational and y.rule != x.rule:
        return (
            y.source() == x.source()
            and y.word_prefix(horizon) == word_prefix(x, horizon)
        )
    return y == x


def restrict(W, x, depth: int = DEFAULT_DEPTH) -> Restriction:
    """Res_x(W) computed on the depth-truncated basis.

    A basis vector survives the projections 1_Z(mu,mu) over all prefixes
    mu of x iff its point equals x; see _survives for when that is exact.
    The matrix is the action of the isotropy generator of x on the
    surviving span.
    """
    horizon = 2 * depth + 4
    survivors = [lab for lab in W.basis(depth) if _survives(lab, x, horizon)]
    basis = tuple((lab, j) for lab in survivors for j in range(W.coeff_dim))
    if not basis:
        return Restriction((), ())
    z = isotropy_generator_element(x, W.graph, W.acting_field)
    index = {b: i for i, b in enumerate(basis)}
    cols = []
    for lab, j in basis:
        m = W.elt(lab, W.coeff_basis()[j])
        img = W.act(z, m)
        col = [zero(W.acting_field)] * len(basis)
        for ce, s in img.terms.items():
            vec = W.coeff_to_vector(s)
            for jj, comp in enumerate(vec):
                if comp.is_zero():
                    continue
                if (ce, jj) not in index:
                    raise AssertionError(
                        "isotropy action left the restricted span; "
                        "increase the restriction depth"
                    )
                col[index[(ce, jj)]] = comp
        cols.append(col)
    matrix = tuple(tuple(cols[j][i] for j in range(len(basis))) for i in range(len(basis)))
    return Restriction(basis, matrix)


def coeff_action_matrix(W) -> tuple:
    """The V-action of the isotropy generator in the K-basis of the
    coefficient field (columns are images); the yardstick for Res_x."""
    gen = W.unit_scalar if getattr(W, "period", None) is not None else one(W.coeff_field)
    basis = W.coeff_basis()
    cols = [W.coeff_to_vector(gen * b) for b in basis]
    d = len(basis)
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
