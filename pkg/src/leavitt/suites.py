"""Executable instance checks for the classification's proved statements.

Each checker runs one family of finite checks (mutual inverses,
equivariance, restriction data, invariants) and returns Claim records
carrying a machine-readable counterexample on failure.  The CLI `verify`
command assembles these per graph; the acceptance tests drive them with
the reference configurations.
"""

from dataclasses import dataclass

from .boundary import (
    DEFAULT_DEPTH,
    ClassElement,
    IrrationalPath,
    RationalPath,
    SinkPath,
    ThueMorseLikeRule,
)
from .chen import (
    ChenModule,
    chen_desc,
    hom_check,
    phi_triv,
    phi_triv_map,
    phi_twist,
    phi_twist_map,
    psi_triv_map,
    psi_twist_map,
    quotient_chen_desc,
    theta,
    twist_invariant,
)
from .errors import LeavittError
from .field import Poly, Scalar, constant_term, one
from .graph import FinPath, paths_up_to, simple_cycles
from .groupoid import (
    GroupoidElt,
    QuotientMod,
    TrivialK,
    TwistedLine,
    coeff_action_matrix,
    induce,
    restrict,
    steinberg_act,
)
from .lpa import AlgebraElement, Monomial, TwistParam


@dataclass
class Claim:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        out = {"name": self.name, "ok": self.ok}
        if self.detail:
            out["detail"] = self.detail
        return out


def _claim(name, ok, detail=""):
    return Claim(name, bool(ok), detail if not ok or "skip" in detail else "")


# ---------------------------------------------------------------------------
# Prop. triv: Ind_x(K) ~ V^a_[x] for trivial-isotropy x


def check_triv(graph, K, x, twist_map=None, depth=DEFAULT_DEPTH, tag=""):
    tw = TwistParam(graph, K, twist_map or {})
    desc = chen_desc(x, K, tw)
    ind = induce(x, TrivialK(K), K)
    ch = ChenModule(desc)
    claims = []

    bad = next(
        (b for b in ind.basis(depth)
         if psi_triv_map(phi_triv_map(ind.elt(b), desc), desc, ind) != ind.elt(b)),
        None,
    )
    claims.append(_claim(f"triv{tag}: psi o phi = id", bad is None, f"fails at {bad!r}"))

    bad = next(
        (b for b in ch.basis(depth)
         if phi_triv_map(psi_triv_map(ch.elt(b), desc, ind), desc) != ch.elt(b)),
        None,
    )
    claims.append(_claim(f"triv{tag}: phi o psi = id", bad is None, f"fails at {bad!r}"))

    hv = hom_check(
        lambda ce: phi_triv(GroupoidElt(ce, ce.rep_degree()), desc), ind, ch, depth
    )
    claims.append(_claim(f"triv{tag}: phi equivariant", hv.ok, repr(hv)))
    return claims


# ---------------------------------------------------------------------------
# Lemma twist_iso (+ cor1/cor3): Ind_{c^inf}(K'^(a)) ~ V^a restricted


def twist_setup(graph, K, x, coeff):
    """Build (desc, induced, chen) for a rational base and a coefficient
    module: a scalar means K^{(a_c)} via a one-edge twist; a Poly means
    the quotient module V^f."""
    if isinstance(coeff, Poly):
        desc = quotient_chen_desc(x, coeff, K)
        ind = induce(x, QuotientMod(coeff), K)
    else:
        a = coeff
        if a.field != K:
            raise LeavittError("twisted line over an extension needs a quotient desc")
        from .chen import designated_cycle_edge
        from .lpa import path_weight

        carrier = designated_cycle_edge(x.cycle.cycle.edges) or x.cycle.cycle.edges[0]
        tw = TwistParam(graph, K, {} if a == one(K) else {carrier: a})
        desc = chen_desc(x, K, tw)
        ind = induce(x, TwistedLine(path_weight(tw, x.cycle.cycle)), K)
    return desc, ind, ChenModule(desc)


def check_twist(graph, K, x, coeff, depth=DEFAULT_DEPTH, pair_len=4, tag=""):
    desc, ind, ch = twist_setup(graph, K, x, coeff)
    claims = []

    bad = next(
        (
            (b, c)
            for b in ind.basis(depth)
            for c in ind.coeff_basis()
            if psi_twist_map(phi_twist_map(ind.elt(b, c), desc), desc, ind)
            != ind.elt(b, c)
        ),
        None,
    )
    claims.append(_claim(f"twist{tag}: psi o phi = id", bad is None, f"fails at {bad!r}"))

    bad = next(
        (
            (b, c)
            for b in ch.basis(depth)
            for c in ch.coeff_basis()
            if phi_twist_map(psi_twist_map(ch.elt(b, c), desc, ind), desc)
            != ch.elt(b, c)
        ),
        None,
    )
    claims.append(_claim(f"twist{tag}: phi o psi = id", bad is None, f"fails at {bad!r}"))

    hv = hom_check(
        lambda ce: phi_twist(GroupoidElt(ce, ce.rep_degree()), one(ch.coeff_field), desc),
        ind,
        ch,
        depth,
    )
    claims.append(_claim(f"twist{tag}: phi equivariant", hv.ok, repr(hv)))

    bad = None
    x0 = ind.elt(ClassElement.of_base(x))
    count = 0
    for mu in paths_up_to(graph, pair_len):
        for nu in paths_up_to(graph, pair_len):
            if mu.range() != nu.range():
                continue
            z = AlgebraElement.from_monomial(graph, K, Monomial(mu, nu))
            for kp in ind.coeff_basis():
                count += 1
                lhs = phi_twist_map(steinberg_act(z, x0.scale(kp)), desc)
                rhs = ch.act(z, phi_twist_map(x0.scale(kp), desc))
                if lhs != rhs:
                    bad = (mu, nu, kp)
                    break
            if bad:
                break
        if bad:
            break
    claims.append(
        _claim(
            f"twist{tag}: eq13 for |mu|,|nu| <= {pair_len} ({count} checks)",
            bad is None,
            f"fails at {bad!r}",
        )
    )
    return claims


# ---------------------------------------------------------------------------
# Prop. res_in: Res_x Ind_x(V) = V with the right generator action


def check_res(graph, K, x, V, depth=DEFAULT_DEPTH, tag=""):
    W = induce(x, V, K)
    r = restrict(W, x, depth)
    claims = [
        _claim(
            f"res{tag}: dim Res_x Ind_x(V) = dim V",
            r.dim == W.coeff_dim,
            f"dim {r.dim} != {W.coeff_dim}",
        ),
        _claim(
            f"res{tag}: generator matrix = V-action",
            r.matrix == coeff_action_matrix(W),
            f"{r.matrix!r} != {coeff_action_matrix(W)!r}",
        ),
    ]
    return claims


# ---------------------------------------------------------------------------
# Lemma noniso / Cor. cor: distinct orbits are separated by restriction


def check_noniso(graph, K, x, y, depth=DEFAULT_DEPTH, tag=""):
    Vx = ChenModule(chen_desc(x, K))
    Vy = ChenModule(chen_desc(y, K))
    claims = [
        _claim(f"noniso{tag}: Res_x V_[y] = 0", restrict(Vy, x, depth).dim == 0),
        _claim(f"noniso{tag}: Res_y V_[x] = 0", restrict(Vx, y, depth).dim == 0),
        _claim(f"noniso{tag}: Res_x V_[x] = K", restrict(Vx, x, depth).dim == 1),
        _claim(f"noniso{tag}: Res_y V_[y] = K", restrict(Vy, y, depth).dim == 1),
    ]
    return claims


# ---------------------------------------------------------------------------
# Cor. cor2: V^a ~ V^b iff a_c = b_c


def check_cor2(graph, K, x, a_map, b_map, depth=DEFAULT_DEPTH, tag=""):
    descA = chen_desc(x, K, TwistParam(graph, K, a_map))
    descB = chen_desc(x, K, TwistParam(graph, K, b_map))
    chA, chB = ChenModule(descA), ChenModule(descB)
    invA, invB = twist_invariant(descA), twist_invariant(descB)
    claims = []
    rA = restrict(chA, x, depth)
    rB = restrict(chB, x, depth)
    claims.append(
        _claim(
            f"cor2{tag}: restriction eigenvalue = a_c",
            rA.matrix == ((invA,),) and rB.matrix == ((invB,),),
            f"{rA.matrix!r}, {rB.matrix!r} vs {invA}, {invB}",
        )
    )
    if invA == invB:
        ind = induce(x, TwistedLine(invA), K)
        iso = lambda ce: phi_twist_map(psi_twist_map(chA.elt(ce), descA, ind), descB)
        hv = hom_check(iso, chA, chB, depth)
        claims.append(_claim(f"cor2{tag}: equal a_c gives an isomorphism", hv.ok, repr(hv)))
    else:
        claims.append(
            _claim(
                f"cor2{tag}: unequal a_c separates restrictions",
                rA.matrix != rB.matrix,
                f"eigenvalues coincide: {rA.matrix!r}",
            )
        )
    return claims


# ---------------------------------------------------------------------------
# Remark rem1: theta and V^{t-a} ~ V^{underline a}


def check_rem1(graph, K, x, a: Scalar, depth=DEFAULT_DEPTH, tag=""):
    claims = []
    t_minus_a = Poly(K, (-a, 1))
    claims.append(
        _claim(f"rem1{tag}: theta(t-a) = 0", theta(t_minus_a, a).is_zero())
    )
    b = a + one(K)
    g = Poly(K, (b - a, 1))  # t - a + b
    claims.append(
        _claim(f"rem1{tag}: theta(t-a+b) = b (surjectivity witness)", theta(g, a) == b)
    )

    desc_q = quotient_chen_desc(x, t_minus_a, K)
    first = x.cycle.cycle.edges[0]
    tw = TwistParam(graph, K, {} if a == one(K) else {first: a})
    desc_a = chen_desc(x, K, tw)
    chQ, chA = ChenModule(desc_q), ChenModule(desc_a)
    iso = lambda ce: chA.elt(ce)
    hv = hom_check(iso, chQ, chA, depth, transport=constant_term)
    claims.append(_claim(f"rem1{tag}: V^(t-a) = V^a via theta", hv.ok, repr(hv)))

    if a == one(K):
        plain = ChenModule(chen_desc(x, K))
        from .chen import algebra_generators

        bad = None
        for z in algebra_generators(graph, K):
            for bvec in plain.basis(depth):
                lhs = chA.act(z, chA.elt(bvec))
                rhs = plain.act(z, plain.elt(bvec))
                if sorted_pairs(lhs) != sorted_pairs(rhs):
                    bad = (z, bvec)
                    break
            if bad:
                break
        claims.append(
            _claim(f"rem1{tag}: a=1 recovers the untwisted module", bad is None, f"{bad!r}")
        )
    return claims


def sorted_pairs(elt):
    return [(ce, c) for ce, c in elt.sorted_terms()]


# ---------------------------------------------------------------------------
# per-graph suite assembly for the CLI


def _nontrivial_scalar(K):
    two = Scalar.make(K, 2)
    return None if two == one(K) or two.is_zero() else two


def _irrational_point(graph):
    for v in sorted(graph.vertices):
        loops = [e for e in graph.out_edges(v) if graph.dst(e) == v]
        if len(loops) >= 2:
            return IrrationalPath.make(ThueMorseLikeRule(graph, tuple(loops[:2])))
    return None


def _trivial_bases(graph):
    out = [SinkPath(FinPath.trivial(graph, w)) for w in graph.sinks()]
    irr = _irrational_point(graph)
    if irr is not None:
        out.append(irr)
    return out


def _cycle_bases(graph, max_len=4):
    cycles = sorted(simple_cycles(graph, max_len), key=lambda c: (c.period, c.cycle.edges))
    return [
        RationalPath.make(FinPath.trivial(graph, c.cycle.source()), c.cycle)
        for c in cycles
    ]


def suite_triv(graph, K, depth=DEFAULT_DEPTH):
    claims = []
    bases = _trivial_bases(graph)
    if not bases:
        return [Claim("triv: no trivial-isotropy base points in this graph", True, "skipped")]
    two = _nontrivial_scalar(K)
    for i, x in enumerate(bases):
        claims += check_triv(graph, K, x, None, depth, tag=f"[{i}:plain]")
        if two is not None:
            edges = sorted(graph.edges)
            twist = {edges[0]: two}
            if len(edges) > 1:
                twist[edges[1]] = two.inv()
            claims += check_triv(graph, K, x, twist, depth, tag=f"[{i}:twisted]")
    return claims


def suite_twist(graph, K, depth=DEFAULT_DEPTH, max_cycle_len=4):
    bases = _cycle_bases(graph, max_cycle_len)
    if not bases:
        return [Claim("twist: no cycles in this graph", True, "skipped")]
    claims = []
    two = _nontrivial_scalar(K)
    from .field import PrimeField, enumerate_irreducibles

    for i, x in enumerate(bases):
        coeffs = [one(K)]
        if two is not None:
            coeffs.append(two)
        if isinstance(K, PrimeField):
            irr = [
                f
                for f in enumerate_irreducibles(K.p, 2)
                if f.degree() == 2
            ]
            if irr:
                coeffs.append(irr[0])
        for j, coeff in enumerate(coeffs):
            claims += check_twist(graph, K, x, coeff, depth, tag=f"[{i}.{j}]")
    return claims


def suite_res(graph, K, depth=DEFAULT_DEPTH, max_cycle_len=4):
    claims = []
    for i, x in enumerate(_trivial_bases(graph)):
        claims += check_res(graph, K, x, TrivialK(K), depth, tag=f"[triv {i}]")
    two = _nontrivial_scalar(K)
    for i, x in enumerate(_cycle_bases(graph, max_cycle_len)):
        claims += check_res(graph, K, x, TwistedLine(one(K)), depth, tag=f"[cyc {i}:1]")
        if two is not None:
            claims += check_res(graph, K, x, TwistedLine(two), depth, tag=f"[cyc {i}:2]")
    bases = _trivial_bases(graph) + _cycle_bases(graph, max_cycle_len)
    if len(bases) >= 2:
        claims += check_noniso(graph, K, bases[0], bases[1], depth, tag="[pair]")
    if not claims:
        claims = [Claim("res: no base points found", True, "skipped")]
    return claims


def suite_cor2(graph, K, depth=DEFAULT_DEPTH, max_cycle_len=4):
    bases = _cycle_bases(graph, max_cycle_len)
    if not bases:
        return [Claim("cor2: no cycles in this graph", True, "skipped")]
    two = _nontrivial_scalar(K)
    three = Scalar.make(K, 3)
    claims = []
    for i, x in enumerate(bases):
        first = x.cycle.cycle.edges[0]
        if two is None:
            claims.append(
                Claim(f"cor2[{i}]: field has no scalar != 0,1", True, "skipped")
            )
            continue
        claims += check_cor2(graph, K, x, {first: two}, {first: two}, depth, tag=f"[{i}:eq]")
        if not three.is_zero() and three != one(K) and three != two:
            claims += check_cor2(
                graph, K, x, {first: two}, {first: three}, depth, tag=f"[{i}:ne]"
            )
    return claims


SUITES = {
    "triv": suite_triv,
    "twist": suite_twist,
    "res": suite_res,
    "cor2": suite_cor2,
}


def run_suite(name, graph, K, depth=DEFAULT_DEPTH):
    if name == "all":
        out = []
        for key in ("triv", "twist", "res", "cor2"):
            out += SUITES[key](graph, K, depth)
        return out
    if name not in SUITES:
        raise LeavittError(f"unknown suite {name!r}")
    return SUITES[name](graph, K, depth)
