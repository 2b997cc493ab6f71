"""Exact-arithmetic engine for Leavitt path algebras of row-finite
digraphs: boundary paths, the graph groupoid, Chen-type simple modules,
the isomorphisms between them, and the classification catalog."""

from .boundary import (
    ClassElement,
    GeneratorRule,
    IrrationalPath,
    IsotropyDesc,
    RationalPath,
    SinkPath,
    ThueMorseLikeRule,
    Verdict,
    as_class_element,
    class_eq,
    degree_of,
    isotropy,
    orbit_points,
    point_from_json,
    point_to_json,
    shift,
    tail_equiv,
)
from .chen import (
    ChenElt,
    ChenModule,
    ChenModuleDesc,
    chen_act,
    chen_desc,
    generator_witness,
    hom_check,
    phi_triv,
    phi_twist,
    psi_triv,
    psi_twist,
    quotient_chen_desc,
    theta,
    twist_invariant,
)
from .classify import CatalogEntry, catalog, catalog_json, finite_dim_report, orbit_reps
from .errors import LeavittError
from .field import (
    Laurent,
    Poly,
    PrimeField,
    QuotientField,
    Rationals,
    Scalar,
    arith,
    enumerate_irreducibles,
    eval_at,
    is_irreducible,
    parse_field_spec,
    parse_poly,
    parse_scalar,
)
from .graph import (
    Digraph,
    FinPath,
    SimpleClosedPath,
    compose,
    paths_up_to,
    primitive_root,
    rotate,
    simple_cycles,
)
from .groupoid import (
    Bisection,
    GroupoidElt,
    InducedModule,
    InducedModuleElt,
    QuotientMod,
    Restriction,
    TrivialK,
    TwistedLine,
    bisection_apply,
    bisection_prod,
    gpd_inv,
    gpd_mul,
    induce,
    restrict,
    steinberg_act,
    unit_at,
)
from .lpa import (
    AlgebraElement,
    Monomial,
    TwistParam,
    element_str,
    mono_mul,
    parse_element,
    path_weight,
    q_stable,
    reduce,
    sigma_twist,
)

__version__ = "0.1.0"
