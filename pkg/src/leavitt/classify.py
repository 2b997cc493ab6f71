"""The simple-module catalog of a row-finite graph over an exact field.

One catalog entry per orbit representative: sinks, cycle classes (each
contributing the untwisted Chen module plus one quotient module per
admissible irreducible polynomial), and a symbolic row for the aperiodic
families, which are uncountable whenever two distinct cycle classes share
a strongly connected component and are therefore never enumerated.

The catalog is labeled "spectral simple modules": that is what the
classification proves; whether non-spectral simples can exist is left
open and no claim is made either way.
"""

from dataclasses import dataclass

from .boundary import DEFAULT_DEPTH, RationalPath, SinkPath, orbit_points, point_to_json
from .errors import CannotCertifyError, ParseError
from .field import (
    Poly,
    PrimeField,
    Rationals,
    enumerate_irreducibles,
    is_irreducible,
    poly_str,
)
from .graph import Digraph, FinPath, SimpleClosedPath, simple_cycles

CATALOG_LABEL = "spectral simple modules"


@dataclass(frozen=True)
class CatalogEntry:
    """kind: sink | rational_chen | rational_quotient | irrational_family."""

    kind: str
    sink: str = None
    cycle: SimpleClosedPath = None
    poly: Poly = None
    family: str = None
    finite_dim: object = None  # True / False / None (unknown at depth)
    dim: object = None         # int when finite, None otherwise
    noniso_witness: str = None

    def data_json(self):
        if self.kind == "sink":
            return {"sink": self.sink}
        if self.kind == "rational_chen":
            return {"cycle": list(self.cycle.cycle.edges)}
        if self.kind == "rational_quotient":
            return {"cycle": list(self.cycle.cycle.edges), "poly": poly_str(self.poly)}
        return {"family": self.family}

    def to_json(self):
        if self.finite_dim is True:
            dim = self.dim
        elif self.finite_dim is False:
            dim = "infinite"
        else:
            dim = "unknown"
        return {
            "kind": self.kind,
            "data": self.data_json(),
            "finite_dim": self.finite_dim,
            "dim": dim,
            "noniso_witness": self.noniso_witness,
        }


@dataclass(frozen=True)
class OrbitReps:
    sinks: tuple
    cycles: tuple
    irrational_note: object  # str or None


def _sccs(g: Digraph):
    """Strongly connected components (Kosaraju; the graphs are tiny)."""
    fwd = {v: sorted({g.dst(e) for e in g.out_edges(v)}) for v in g.vertices}
    bwd = {v: sorted({g.src(e) for e in g.in_edges(v)}) for v in g.vertices}
    order, seen = [], set()

    def dfs(v, adj, hook):
        stack = [(v, iter(adj[v]))]
        seen.add(v)
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if w not in seen:
                    seen.add(w)
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                hook(u)
                stack.pop()

    for v in sorted(g.vertices):
        if v not in seen:
            dfs(v, fwd, order.append)
    seen.clear()
    comps = []
    for v in reversed(order):
        if v not in seen:
            comp = []
            dfs(v, bwd, comp.append)
            comps.append(frozenset(comp))
    return comps


def has_aperiodic_paths(g: Digraph) -> bool:
    """True iff some strongly connected component contains two distinct
    cycle classes, i.e. a vertex with two out-edges staying in the
    component; exactly then X contains aperiodic points."""
    for comp in _sccs(g):
        for v in comp:
            internal = [e for e in g.out_edges(v) if g.dst(e) in comp]
            loops_back = [
                e for e in internal
                if g.dst(e) == v or _reaches(g, g.dst(e), v, comp)
            ]
            if len(loops_back) >= 2:
                return True
    return False


def _reaches(g, start, goal, comp):
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        if u == goal:
            return True
        for eid in g.out_edges(u):
            w = g.dst(eid)
            if w in comp and w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def orbit_reps(g: Digraph, max_cycle_len: int) -> OrbitReps:
    """Sinks, cycle classes up to rotation (lengths <= max_cycle_len), and
    a symbolic note when aperiodic classes exist; those are never
    enumerated."""
    sinks = tuple(g.sinks())
    cycles = tuple(
        sorted(simple_cycles(g, max_cycle_len), key=lambda c: (c.period, c.cycle.edges))
    )
    note = None
    if has_aperiodic_paths(g):
        note = (
            "uncountably many aperiodic tail-equivalence classes "
            "(two distinct cycle classes share a strongly connected component); "
            "one Chen module per class, represented parametrically"
        )
    return OrbitReps(sinks, cycles, note)


def _excluded(f: Poly) -> bool:
    """f = t and f = t - 1 are excluded; t - 1 is the untwisted Chen entry."""
    base = f.field
    t = Poly.t(base)
    t_minus_1 = Poly(base, (-1, 1))
    return f == t or f == t_minus_1


def admissible_polys(K, max_deg: int, supplied=None):
    """Monic irreducibles f with f != t, t-1 up to max_deg.

    Enumerated over F_p; over Q they must be supplied (degree <= 3 so the
    rational-root certificate applies).
    """
    if isinstance(K, PrimeField):
        return [f for f in enumerate_irreducibles(K.p, max_deg) if not _excluded(f)]
    if isinstance(K, Rationals):
        if supplied is None:
            raise CannotCertifyError(
                "irreducible polynomials cannot be enumerated over Q; "
                "supply explicit moduli"
            )
        out = []
        for f in supplied:
            if f.degree() > max_deg:
                continue
            if not is_irreducible(f, K):
                raise ParseError(f"supplied modulus {f} is reducible")
            if not _excluded(f):
                out.append(f.monic())
        return out
    raise CannotCertifyError(f"unsupported field {K} for catalog enumeration")


def catalog(g: Digraph, K, max_deg: int, max_cycle_len: int, quotient_polys=None):
    """The catalog of spectral simple modules, one entry per orbit
    representative and admissible polynomial."""
    reps = orbit_reps(g, max_cycle_len)
    entries = []
    for w in reps.sinks:
        entries.append(_with_report(CatalogEntry("sink", sink=w), g))
    if reps.cycles:
        polys = admissible_polys(K, max_deg, quotient_polys)
    else:
        polys = []
    for c in reps.cycles:
        entries.append(_with_report(CatalogEntry("rational_chen", cycle=c), g))
        for f in polys:
            entries.append(
                _with_report(CatalogEntry("rational_quotient", cycle=c, poly=f), g)
            )
    if reps.irrational_note:
        entries.append(
            CatalogEntry(
                "irrational_family",
                family=reps.irrational_note,
                finite_dim=False,
                dim=None,
                noniso_witness="aperiodic classes: restriction at any listed "
                "base point vanishes (distinct orbits)",
            )
        )
    return entries


def base_point(entry: CatalogEntry, g: Digraph):
    if entry.kind == "sink":
        return SinkPath(FinPath.trivial(g, entry.sink))
    if entry.kind in ("rational_chen", "rational_quotient"):
        w = entry.cycle.cycle
        return RationalPath.make(FinPath.trivial(g, w.source()), w)
    raise ParseError(f"no single base point for {entry.kind}")


def finite_dim_report(entry: CatalogEntry, g: Digraph, depth: int = DEFAULT_DEPTH):
    """(finite_dim, dim) for one catalog entry.

    Orbit finiteness is decided by exhaustion of the reduced-prefix
    search; a reduced orbit point with a prefix at least as long as the
    vertex count certifies an infinite orbit, because such a prefix
    revisits a vertex and can be pumped without leaving reduced form.
    Only when the search depth is too small for either verdict is
    (None, None) returned.
    """
    if entry.kind == "irrational_family":
        return False, None
    x = base_point(entry, g)
    pump = len(g.vertices)
    res = orbit_points(x, max(depth, pump + 1))
    per_point = entry.poly.degree() if entry.kind == "rational_quotient" else 1
    if res.exhausted:
        return True, len(res.points) * per_point
    if any(len(ce.prefix) >= pump for ce in res.points):
        return False, None
    return None, None


def _invariant_tag(entry: CatalogEntry) -> str:
    if entry.kind == "sink":
        return "trivial isotropy"
    if entry.kind == "rational_chen":
        return "t-1"
    if entry.kind == "rational_quotient":
        return poly_str(entry.poly)
    return "aperiodic family"


def _orbit_tag(entry: CatalogEntry, g: Digraph) -> str:
    if entry.kind == "irrational_family":
        return "aperiodic"
    return str(point_to_json(base_point(entry, g)))


def _with_report(entry: CatalogEntry, g: Digraph, depth: int = DEFAULT_DEPTH):
    fin, dim = finite_dim_report(entry, g, depth)
    witness = (
        f"base {_orbit_tag(entry, g)}: restriction there kills every entry "
        f"with a different base class; same-base entries are separated by "
        f"the quotient invariant {_invariant_tag(entry)}"
    )
    return CatalogEntry(
        entry.kind,
        sink=entry.sink,
        cycle=entry.cycle,
        poly=entry.poly,
        family=entry.family,
        finite_dim=fin,
        dim=dim,
        noniso_witness=witness,
    )


def catalog_json(entries, K):
    return {
        "label": CATALOG_LABEL,
        "field": str(K),
        "entries": [e.to_json() for e in entries],
    }
