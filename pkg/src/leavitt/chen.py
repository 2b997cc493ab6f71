"""Chen, twisted Chen, and polynomial-quotient modules, with executable
isomorphisms between them and the induced modules of the graph groupoid.

A Chen module is the span of a tail-equivalence class [x] with the
prefix-stripping action (mu nu^*).p = mu p' when p = nu p', 0 otherwise;
a twist precomposes the action with the automorphism e -> a_e e.  The
quotient variant V^f keeps its coefficients in K[t]/(f) with the twist
entry for the cycle set to the class of t, and restricts scalars to K:
this keeps every action diagonal instead of inflating the module by
deg f.
"""

from dataclasses import dataclass

from .boundary import (
    DEFAULT_DEPTH,
    ClassElement,
    RationalPath,
    isotropy,
    orbit_points,
)
from .errors import (
    BaseMismatchError,
    FieldMismatchError,
    ParseError,
    PartialMapError,
)
from .field import (
    Poly,
    QuotientField,
    Scalar,
    embed,
    eval_at,
    one,
    zero,
)
from .graph import FinPath, paths_up_to
from .groupoid import GroupoidElt, InducedModule, SupportElement, TrivialK, induce
from .lpa import AlgebraElement, Monomial, TwistParam, path_weight


# ---------------------------------------------------------------------------
# module descriptors and elements


@dataclass(frozen=True)
class ChenModuleDesc:
    """V^a_[x] over `coeff_field`, optionally restricted to a subfield.

    `twist` lives over the coefficient field; `restricted_to` marks that
    the acting algebra has coefficients in that subfield (the V^f case).
    """

    base: object
    twist: TwistParam
    coeff_field: object
    restricted_to: object = None

    def __post_init__(self):
        if self.twist.graph != self.base.graph:
            raise BaseMismatchError("twist over a different graph")
        if self.twist.field != self.coeff_field:
            raise FieldMismatchError("twist not over the coefficient field")
        if self.restricted_to is not None and self.restricted_to != self.coeff_field:
            F = self.coeff_field
            if not (isinstance(F, QuotientField) and F.base == self.restricted_to):
                raise FieldMismatchError(
                    "restriction field must be the base of the coefficient field"
                )

    @property
    def acting_field(self):
        return self.restricted_to if self.restricted_to is not None else self.coeff_field

    @property
    def graph(self):
        return self.base.graph


def chen_desc(x, K, twist=None) -> ChenModuleDesc:
    """Plain (possibly twisted) Chen module over K."""
    tw = twist if twist is not None else TwistParam(x.graph, K, {})
    return ChenModuleDesc(x, tw, K)


def designated_cycle_edge(word):
    """The least edge id occurring exactly once in the cycle word; carrying
    the whole twist on such an edge makes a_c equal the edge's weight."""
    once = [e for e in word if word.count(e) == 1]
    return min(once) if once else None


def quotient_chen_desc(x, f: Poly, K) -> ChenModuleDesc:
    """V^f_[x]: coefficients in K[t]/(f), one cycle edge twisted by the
    class of t, scalars restricted to K.  Needs a rational base."""
    if not isinstance(x, RationalPath):
        raise BaseMismatchError("V^f needs a rational base point")
    if f.field != K:
        raise FieldMismatchError("modulus not over the acting field")
    F = QuotientField(K, f)
    carrier = designated_cycle_edge(x.cycle.cycle.edges)
    if carrier is None:
        raise BaseMismatchError(
            "every edge of the cycle repeats; no single edge can carry the "
            "t-twist with a_c = t"
        )
    tw = TwistParam(x.graph, F, {carrier: F.tbar()})
    return ChenModuleDesc(x, tw, F, restricted_to=K)


class ChenElt(SupportElement):
    """A finitely supported combination of class elements of [x]."""


class ChenModule:
    """Module handle for a ChenModuleDesc, mirroring InducedModule."""

    def __init__(self, desc: ChenModuleDesc):
        self.desc = desc
        self.x = desc.base
        self.graph = desc.graph
        self.coeff_field = desc.coeff_field
        self.acting_field = desc.acting_field
        iso = isotropy(desc.base)
        self.period = iso.period
        self.unit_scalar = (
            path_weight(desc.twist, desc.base.cycle.cycle)
            if isinstance(desc.base, RationalPath)
            else one(desc.coeff_field)
        )

    def __eq__(self, other):
        return isinstance(other, ChenModule) and self.desc == other.desc

    def __repr__(self):
        tag = "" if self.desc.restricted_to is None else f"|{self.acting_field}"
        return f"V_[{self.x!r}]^({self.desc.twist!r}){tag}"

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
        if self.coeff_dim == 1:
            return [s]
        return [s.value.coeff(i) for i in range(self.coeff_dim)]

    def zero(self):
        return ChenElt(self, {})

    def elt(self, ce: ClassElement, coeff=1) -> ChenElt:
        if ce.base != self.x:
            raise BaseMismatchError("class element over a different base")
        return ChenElt(self, {ce: Scalar.make(self.coeff_field, coeff)})

    def basis(self, depth=DEFAULT_DEPTH):
        return list(orbit_points(self.x, depth))

    def act(self, z: AlgebraElement, m: ChenElt) -> ChenElt:
        return chen_act(z, m, self.desc)

    def point_of(self, label):
        return label


def chen_act(z: AlgebraElement, m: ChenElt, desc: ChenModuleDesc) -> ChenElt:
    """(mu nu^*).p = a_mu a_nu^{-1} mu p' if p = nu p', 0 otherwise,
    extended linearly; z has acting-field coefficients, m coefficient-field
    ones."""
    mod = m.module
    if desc != mod.desc:
        raise BaseMismatchError("element does not belong to the described module")
    if z.graph != desc.graph:
        raise BaseMismatchError("algebra element over a different graph")
    if z.field != desc.acting_field:
        raise FieldMismatchError(
            f"algebra element over {z.field}, module acts over {desc.acting_field}"
        )
    F = desc.coeff_field
    tw = desc.twist
    out = mod.zero()
    for mono, c in z.terms.items():
        factor = path_weight(tw, mono.mu) * path_weight(tw, mono.nu).inv()
        cF = embed(c, F) * factor
        for ce, v in m.terms.items():
            hit = _apply(mono, ce)
            if hit is not None:
                out = out + ChenElt(mod, {hit: cF * v})
    return out


def _apply(mono: Monomial, ce: ClassElement):
    from .boundary import apply_monomial

    return apply_monomial(mono.mu, mono.nu, ce)


def chen_act_raw(terms, m: ChenElt, desc: ChenModuleDesc) -> ChenElt:
    """Action of an arbitrary (possibly non-normal-form) list of
    (Monomial, Scalar) pairs; the oracle that normal forms are checked
    against."""
    mod = m.module
    F = desc.coeff_field
    tw = desc.twist
    out = mod.zero()
    for mono, c in terms:
        factor = path_weight(tw, mono.mu) * path_weight(tw, mono.nu).inv()
        cF = embed(Scalar.make(desc.acting_field, c), F) * factor
        for ce, v in m.terms.items():
            hit = _apply(mono, ce)
            if hit is not None:
                out = out + ChenElt(mod, {hit: cF * v})
    return out


# ---------------------------------------------------------------------------
# the trivial-isotropy isomorphism (sink and aperiodic bases)


def _base_prefix_path(x, k: int) -> FinPath:
    """The first k edges of the base word as a finite path."""
    g = x.graph
    return FinPath(g, x.vertex_at(0), tuple(x.edge_at(i) for i in range(1, k + 1)))


def phi_triv(t: GroupoidElt, desc: ChenModuleDesc) -> ChenElt:
    """phi((y,l,x)) = a_mu a_nu^{-1} y for y = mu p, x = nu p."""
    if isinstance(desc.base, RationalPath):
        raise BaseMismatchError("rational base: use phi_twist")
    if t.base != desc.base:
        raise BaseMismatchError("arrow over a different base point")
    mod = ChenModule(desc)
    tw = desc.twist
    w_mu = path_weight(tw, t.src.prefix)
    w_nu = path_weight(tw, _base_prefix_path(desc.base, t.src.shift))
    return mod.elt(t.src, w_mu * w_nu.inv())


def psi_triv(ce: ClassElement, desc: ChenModuleDesc, module: InducedModule = None):
    """psi(y) = a_mu^{-1} a_nu (y,l,x), an element of Ind_x(K)."""
    if isinstance(desc.base, RationalPath):
        raise BaseMismatchError("rational base: use psi_twist")
    if ce.base != desc.base:
        raise BaseMismatchError("class element over a different base point")
    if module is None:
        module = induce(desc.base, TrivialK(desc.acting_field), desc.acting_field)
    tw = desc.twist
    w_mu = path_weight(tw, ce.prefix)
    w_nu = path_weight(tw, _base_prefix_path(desc.base, ce.shift))
    return module.elt(ce, _coerce_back(w_mu.inv() * w_nu, module.coeff_field))


def _coerce_back(s: Scalar, F):
    if s.field == F:
        return s
    # twisted Chen coefficients live over the same K here; weights of a
    # K-valued twist stay in K
    raise FieldMismatchError(f"weight {s!r} not in {F}")


def phi_triv_map(m, desc: ChenModuleDesc) -> ChenElt:
    """Linear extension of phi_triv to induced-module elements."""
    mod = ChenModule(desc)
    out = mod.zero()
    for ce, c in m.terms.items():
        t = GroupoidElt(ce, ce.rep_degree())
        out = out + phi_triv(t, desc).scale(embed(c, desc.coeff_field))
    return out


def psi_triv_map(m: ChenElt, desc: ChenModuleDesc, module: InducedModule = None):
    if module is None:
        module = induce(desc.base, TrivialK(desc.acting_field), desc.acting_field)
    out = module.zero()
    for ce, c in m.terms.items():
        out = out + psi_triv(ce, desc, module).scale(c)
    return out


# ---------------------------------------------------------------------------
# the rational-base isomorphism (twisted lines and quotient coefficients)


def phi_twist(t: GroupoidElt, kprime: Scalar, desc: ChenModuleDesc) -> ChenElt:
    """phi((y,m,c^inf) (x) k') = a_mu a_nu^{-1} k' y; an isotropy leftover
    in the degree is absorbed as a power of a_c."""
    x = desc.base
    if not isinstance(x, RationalPath):
        raise BaseMismatchError("phi_twist needs a rational base")
    if t.base != x:
        raise BaseMismatchError("arrow over a different base point")
    mod = ChenModule(desc)
    tw = desc.twist
    n = x.period
    leftover = (t.k - t.src.rep_degree()) // n
    w_mu = path_weight(tw, t.src.prefix)
    w_nu = path_weight(tw, _base_prefix_path(x, t.src.shift))
    a_c = mod.unit_scalar
    coeff = w_mu * w_nu.inv() * (a_c ** leftover) * Scalar.make(desc.coeff_field, kprime)
    return mod.elt(t.src, coeff)


def psi_twist(ce: ClassElement, desc: ChenModuleDesc, module: InducedModule):
    """psi(y) = (y, |mu|-|nu|, c^inf) (x) a_mu^{-1} a_nu."""
    x = desc.base
    if not isinstance(x, RationalPath):
        raise BaseMismatchError("psi_twist needs a rational base")
    if ce.base != x:
        raise BaseMismatchError("class element over a different base point")
    _check_twist_match(desc, module)
    tw = desc.twist
    w_mu = path_weight(tw, ce.prefix)
    w_nu = path_weight(tw, _base_prefix_path(x, ce.shift))
    return module.elt(ce, w_mu.inv() * w_nu)


def _check_twist_match(desc: ChenModuleDesc, module: InducedModule):
    if module.x != desc.base:
        raise BaseMismatchError("induced module over a different base point")
    if module.unit_scalar != twist_invariant(desc):
        raise FieldMismatchError(
            f"coefficient module acts by {module.unit_scalar}, "
            f"but the twist has a_c = {twist_invariant(desc)}"
        )


def phi_twist_map(m, desc: ChenModuleDesc) -> ChenElt:
    _check_twist_match(desc, m.module)
    mod = ChenModule(desc)
    out = mod.zero()
    for ce, c in m.terms.items():
        t = GroupoidElt(ce, ce.rep_degree())
        out = out + phi_twist(t, c, desc)
    return out


def psi_twist_map(m: ChenElt, desc: ChenModuleDesc, module: InducedModule):
    out = module.zero()
    for ce, c in m.terms.items():
        out = out + psi_twist(ce, desc, module).scale(c)
    return out


# ---------------------------------------------------------------------------
# theta and the twist invariant


def theta(g, a: Scalar) -> Scalar:
    """Evaluation K[t,t^{-1}] -> K^{(a)}, g -> g(a); kernel (t - a)."""
    if a.is_zero():
        raise ZeroDivisionError("theta needs a nonzero evaluation point")
    return eval_at(g, a)


def twist_invariant(desc: ChenModuleDesc) -> Scalar:
    """a_c, the weight of the base cycle; classifies twisted Chen modules
    on a fixed rational class up to isomorphism."""
    if not isinstance(desc.base, RationalPath):
        raise BaseMismatchError("twist invariant needs a rational base")
    return path_weight(desc.twist, desc.base.cycle.cycle)


# ---------------------------------------------------------------------------
# equivariance checking


@dataclass(frozen=True)
class HomVerdict:
    ok: bool
    depth: int
    counterexample: tuple = None  # (generator, basis label, lhs, rhs)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"equivariant to depth {self.depth}"
        z, b, lhs, rhs = self.counterexample
        return f"not equivariant: z={z!r} on {b!r}: {lhs!r} != {rhs!r}"


def algebra_generators(graph, K):
    """Vertices, edges, and ghost edges; enough for equivariance because
    actions are multiplicative."""
    gens = [AlgebraElement.vertex(graph, K, v) for v in sorted(graph.vertices)]
    gens += [AlgebraElement.edge(graph, K, e) for e in sorted(graph.edges)]
    gens += [AlgebraElement.ghost(graph, K, e) for e in sorted(graph.edges)]
    return gens


def hom_check(mapping, src, dst, depth: int = DEFAULT_DEPTH, transport=None) -> HomVerdict:
    """Check map(z . b) = z . map(b) for all generators z and basis
    vectors b of depth <= depth.

    `mapping` is a callable on basis labels (or a dict); `transport`
    carries source coefficients into the destination coefficient field
    (defaults to embedding).  A dict that fails to cover a needed label
    raises PartialMapError, unless a genuine counterexample was found
    first.
    """
    if src.acting_field != dst.acting_field:
        raise FieldMismatchError("modules act over different fields")
    lookup = mapping.get if isinstance(mapping, dict) else mapping
    if transport is None:
        transport = lambda c: embed(c, dst.coeff_field)
    missing = None

    def push(elt):
        nonlocal missing
        out = dst.zero()
        for ce, c in elt.terms.items():
            img = lookup(ce)
            if img is None:
                missing = ce
                return None
            out = out + img.scale(transport(c))
        return out

    gens = algebra_generators(src.graph, src.acting_field)
    labels = src.basis(depth)
    for b in labels:
        mb = push(src.elt(b))
        if mb is None:
            continue
        for z in gens:
            lhs = push(src.act(z, src.elt(b)))
            if lhs is None:
                continue
            rhs = dst.act(z, mb)
            if lhs != rhs:
                return HomVerdict(False, depth, (z, b, lhs, rhs))
    if missing is not None:
        raise PartialMapError(f"map not defined on basis vector {missing!r}")
    return HomVerdict(True, depth)


# ---------------------------------------------------------------------------
# simplicity probes


def generator_witness(
    desc: ChenModuleDesc, m: ChenElt, depth: int = DEFAULT_DEPTH, max_degree=None
):
    """Search for w in L_K(E) with w . m = x (the base point with
    coefficient 1).

    Candidates are monomials mu nu^* of total degree <= max_degree
    (default depth + 2) combined linearly over the acting field; failure
    returns None ("no witness at this depth"), never a disproof.
    """
    if m.is_zero():
        raise ParseError("generator_witness needs a nonzero element")
    if any(len(ce.prefix) > depth for ce in m.terms):
        raise ParseError(f"element supported beyond depth {depth}")
    mod = m.module
    K = desc.acting_field
    bound = depth + 2 if max_degree is None else max_degree
    paths = paths_up_to(desc.graph, bound)
    candidates = []
    for mu in paths:
        for nu in paths:
            if len(mu) + len(nu) <= bound and mu.range() == nu.range():
                candidates.append(Monomial(mu, nu))
    target = mod.elt(ClassElement.of_base(desc.base))
    columns, keep = [], []
    for mono in candidates:
        w = chen_act(AlgebraElement.from_monomial(desc.graph, K, mono), m, desc)
        if w.is_zero():
            continue
        columns.append(_coords(w, mod))
        keep.append(mono)
    sol = _solve_linear(columns, _coords(target, mod), K)
    if sol is None:
        return None
    out = AlgebraElement.zero(desc.graph, K)
    for lam, mono in zip(sol, keep):
        if not lam.is_zero():
            out = out + AlgebraElement.from_monomial(desc.graph, K, mono, lam)
    return out


def _coords(elt, mod) -> dict:
    out = {}
    for ce, s in elt.terms.items():
        for j, comp in enumerate(mod.coeff_to_vector(s)):
            if not comp.is_zero():
                out[(ce, j)] = comp
    return out


def _solve_linear(columns, target, K):
    """Solve sum_i lambda_i col_i = target exactly over K by Gaussian
    elimination; returns the lambda list or None."""
    keys = sorted(
        set(target) | {k for col in columns for k in col},
        key=lambda kj: (len(kj[0].prefix), kj[0].prefix.edges, kj[0].shift, kj[1]),
    )
    if not keys:
        return None
    rows = [
        [col.get(key, zero(K)) for col in columns] + [target.get(key, zero(K))]
        for key in keys
    ]
    ncols = len(columns)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if not rows[i][ncols].is_zero():
            return None
    sol = [zero(K)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][ncols]
    return sol
