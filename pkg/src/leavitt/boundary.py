"""The boundary-path space X and tail-equivalence machinery.

A boundary point is a finite path into a sink, an eventually periodic
infinite path (prefix then a primitive cycle repeated forever), or an
aperiodic infinite path driven by a generator rule.  Each variant has a
canonical reduced form, so structural equality decides point equality
exactly for sink and rational points; for aperiodic generators equality
of distinct rules is only certified up to a finite number of expanded
edges and results carry an `exact` flag.

Points of a tail-equivalence class [x] are represented relative to the
base x as ClassElement(prefix, shift), denoting prefix . sigma^shift(x),
where sigma drops the first edge.  The reduction below strips prefix
edges that replay the base, which makes the representation canonical;
uniqueness over rational bases is property-tested against edgewise
expansion rather than proven here.
"""

from dataclasses import dataclass

from .errors import (
    AperiodicityError,
    BaseMismatchError,
    CompositionError,
    OverShiftError,
    ParseError,
)
from .graph import Digraph, FinPath, SimpleClosedPath, compose, primitive_root

DEFAULT_DEPTH = 8


class Verdict:
    """A boolean answer with an exactness flag for undecidable territory."""

    __slots__ = ("value", "exact", "note")

    def __init__(self, value, exact=True, note=""):
        self.value = bool(value)
        self.exact = exact
        self.note = note

    def __bool__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, bool):
            return self.value == other
        return (
            isinstance(other, Verdict)
            and (self.value, self.exact) == (other.value, other.exact)
        )

    def __repr__(self):
        tag = "" if self.exact else f" (to depth only{': ' + self.note if self.note else ''})"
        return f"{self.value}{tag}"


# ---------------------------------------------------------------------------
# generator rules for aperiodic paths


class GeneratorRule:
    """A total function index -> edge id claimed to be aperiodic.

    Expansion is memoized on the rule instance; access to a single rule
    must be serialized by the caller.  The aperiodicity claim is
    spot-checked whenever the memo grows: no period up to half the
    memoized length may divide the cached prefix.
    """

    name = "custom"
    params = ()

    def __init__(self, graph: Digraph):
        self.graph = graph
        self._memo = []
        self._checked = 0

    def _compute(self, i: int) -> str:
        raise NotImplementedError

    def edge_at(self, i: int) -> str:
        memo = self._memo
        while len(memo) <= i:
            j = len(memo)
            eid = self._compute(j)
            if eid not in self.graph.edges:
                raise ParseError(f"rule produced unknown edge {eid!r}")
            if j > 0 and self.graph.dst(memo[j - 1]) != self.graph.src(eid):
                raise CompositionError(
                    f"rule output not composable at position {j}"
                )
            memo.append(eid)
        if len(memo) >= 2 * self._checked and len(memo) >= 4:
            self._spot_check()
            self._checked = len(memo)
        return memo[i]

    def _spot_check(self):
        w = self._memo
        n = len(w)
        for q in range(1, n // 2 + 1):
            if all(w[i] == w[i + q] for i in range(n - q)):
                raise AperiodicityError(
                    f"rule {self.name!r} memo of length {n} has period {q}"
                )

    def identity(self):
        return (self.name, tuple(self.params))

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorRule)
            and self.graph == other.graph
            and self.identity() == other.identity()
        )

    def __hash__(self):
        return hash((self.graph, self.identity()))


class ThueMorseLikeRule(GeneratorRule):
    """Blocks of lengths 1,1,2,2,3,3,... alternating between two loops.

    Block b (0-indexed) has length b//2 + 1 and repeats edges[b % 2]; the
    block lengths grow without bound, so no period can divide every
    prefix and the word is aperiodic.
    """

    name = "thue-morse-like"

    def __init__(self, graph, edges):
        super().__init__(graph)
        self.params = tuple(edges)
        if len(self.params) != 2 or self.params[0] == self.params[1]:
            raise ParseError("thue-morse-like needs two distinct edges")
        for eid in self.params:
            if eid not in graph.edges:
                raise ParseError(f"unknown edge {eid!r}")
            if graph.src(eid) != graph.dst(eid):
                raise ParseError(f"edge {eid!r} is not a loop")
        if graph.src(self.params[0]) != graph.src(self.params[1]):
            raise ParseError("the two loops must share a vertex")

    def _compute(self, i: int) -> str:
        b, pos = 0, i
        while pos >= b // 2 + 1:
            pos -= b // 2 + 1
            b += 1
        return self.params[b % 2]


BUILTIN_RULES = {"thue-morse-like": ThueMorseLikeRule}


def builtin_rule(graph, name, params) -> GeneratorRule:
    if name not in BUILTIN_RULES:
        raise ParseError(f"unknown irrational rule {name!r}")
    return BUILTIN_RULES[name](graph, params.get("edges", ()))


# ---------------------------------------------------------------------------
# boundary points


@dataclass(frozen=True)
class SinkPath:
    """A finite path whose range is a sink (possibly trivial)."""

    path: FinPath

    def __post_init__(self):
        if not self.path.graph.is_sink(self.path.range()):
            raise ParseError(f"range {self.path.range()!r} is not a sink")

    @property
    def graph(self):
        return self.path.graph

    def source(self):
        return self.path.source()

    def word_length(self):
        return len(self.path)

    def edge_at(self, i):
        """1-indexed i-th edge of the word."""
        if not 1 <= i <= len(self.path):
            raise OverShiftError(f"edge index {i} beyond sink path")
        return self.path.edges[i - 1]

    def vertex_at(self, k):
        if not 0 <= k <= len(self.path):
            raise OverShiftError(f"vertex index {k} beyond sink path")
        return self.path.vertex_at(k)

    def word_prefix(self, n):
        return self.path.edges[:n]

    def __repr__(self):
        return f"{self.path!r}|sink"


@dataclass(frozen=True)
class RationalPath:
    """prefix . cycle^infinity in strip-and-rotate normal form.

    The cycle is primitive and kept in whatever rotation the normal form
    lands on; while the prefix ends with the last edge of the current
    rotation, that edge is stripped and the cycle rotated backward.
    """

    prefix: FinPath
    cycle: SimpleClosedPath

    def __post_init__(self):
        if self.prefix.graph != self.cycle.cycle.graph:
            raise CompositionError("prefix and cycle over different graphs")
        if self.prefix.range() != self.cycle.cycle.source():
            raise CompositionError("prefix must end where the cycle starts")
        if self.prefix.edges and self.prefix.edges[-1] == self.cycle.cycle.edges[-1]:
            raise ParseError("rational point not in reduced form; use make()")

    @classmethod
    def make(cls, prefix: FinPath, cycle_path: FinPath):
        """Normalize any (prefix, closed path) pair: primitive root first,
        then strip-and-rotate."""
        root, _ = primitive_root(cycle_path)
        word = list(root.cycle.edges)
        g = prefix.graph
        pre = list(prefix.edges)
        while pre and pre[-1] == word[-1]:
            pre.pop()
            word = [word[-1]] + word[:-1]
        if pre:
            new_prefix = FinPath(g, g.src(pre[0]), tuple(pre))
        else:
            new_prefix = FinPath.trivial(g, g.src(word[0]))
        return cls(new_prefix, SimpleClosedPath(FinPath.of_edges(g, word)))

    @property
    def graph(self):
        return self.prefix.graph

    @property
    def period(self):
        return self.cycle.period

    @property
    def rho(self):
        return len(self.prefix)

    def source(self):
        return self.prefix.source() if self.prefix.edges else self.cycle.cycle.source()

    def word_length(self):
        return None

    def edge_at(self, i):
        if i < 1:
            raise OverShiftError("edge index must be >= 1")
        if i <= self.rho:
            return self.prefix.edges[i - 1]
        w = self.cycle.cycle.edges
        return w[(i - self.rho - 1) % len(w)]

    def vertex_at(self, k):
        if k <= self.rho:
            return self.prefix.vertex_at(k)
        w = self.cycle.cycle
        return w.vertex_at((k - self.rho) % len(w)) if (k - self.rho) % len(w) else w.source()

    def word_prefix(self, n):
        out = list(self.prefix.edges[:n])
        w = self.cycle.cycle.edges
        i = 0
        while len(out) < n:
            out.append(w[i % len(w)])
            i += 1
        return tuple(out)

    def cycle_class(self):
        return self.cycle.canonical()

    def __repr__(self):
        pre = "".join(self.prefix.edges)
        return f"{pre}({''.join(self.cycle.cycle.edges)})^inf"


@dataclass(frozen=True)
class IrrationalPath:
    """prefix . rule[offset:] for an asserted-aperiodic generator rule.

    Canonical form absorbs the prefix into the rule where possible: while
    the prefix ends with rule[offset-1], strip it and decrement offset.
    Equality is structural on (rule identity, offset, prefix), which is
    exact for points sharing a rule; distinct rules are never considered
    equal by this comparison.
    """

    rule: GeneratorRule
    offset: int = 0
    prefix: FinPath = None

    def __post_init__(self):
        if self.prefix is None:
            v = self.rule.graph.src(self.rule.edge_at(self.offset))
            object.__setattr__(self, "prefix", FinPath.trivial(self.rule.graph, v))
        if self.offset < 0:
            raise OverShiftError("negative rule offset")
        if self.prefix.range() != self.rule.graph.src(self.rule.edge_at(self.offset)):
            raise CompositionError("prefix must end where the rule resumes")
        if self.prefix.edges and self.offset > 0 and (
            self.prefix.edges[-1] == self.rule.edge_at(self.offset - 1)
        ):
            raise ParseError("irrational point not in reduced form; use make()")

    @classmethod
    def make(cls, rule, offset=0, prefix=None):
        g = rule.graph
        pre = list(prefix.edges) if prefix is not None else []
        off = offset
        while pre and off > 0 and pre[-1] == rule.edge_at(off - 1):
            pre.pop()
            off -= 1
        if pre:
            fp = FinPath(g, g.src(pre[0]), tuple(pre))
        else:
            fp = FinPath.trivial(g, g.src(rule.edge_at(off)))
        return cls(rule, off, fp)

    @property
    def graph(self):
        return self.rule.graph

    def source(self):
        return self.prefix.source()

    def word_length(self):
        return None

    def edge_at(self, i):
        if i < 1:
            raise OverShiftError("edge index must be >= 1")
        k = len(self.prefix)
        if i <= k:
            return self.prefix.edges[i - 1]
        return self.rule.edge_at(self.offset + i - k - 1)

    def vertex_at(self, k):
        if k <= len(self.prefix):
            return self.prefix.vertex_at(k)
        return self.graph.src(self.rule.edge_at(self.offset + k - len(self.prefix)))

    def word_prefix(self, n):
        out = list(self.prefix.edges[:n])
        i = 0
        while len(out) < n:
            out.append(self.rule.edge_at(self.offset + i))
            i += 1
        return tuple(out)

    def __repr__(self):
        pre = "".join(self.prefix.edges)
        return f"{pre}<{self.rule.name}@{self.offset}>"


BoundaryPoint = (SinkPath, RationalPath, IrrationalPath)


def is_rational(x) -> bool:
    return isinstance(x, RationalPath)


def source_vertex(x) -> str:
    return x.source()


def word_prefix(x, n) -> tuple:
    """The first n edges of x's word (shorter only for finite paths)."""
    return x.word_prefix(n)


def shift(x, k: int):
    """Drop the first k edges of x and re-canonicalize."""
    if k < 0:
        raise OverShiftError("negative shift")
    if isinstance(x, SinkPath):
        if k > len(x.path):
            raise OverShiftError(f"shift {k} beyond path of length {len(x.path)}")
        return SinkPath(x.path.suffix_from(k))
    if isinstance(x, RationalPath):
        if k <= x.rho:
            return RationalPath.make(x.prefix.suffix_from(k), x.cycle.cycle)
        w = x.cycle.cycle.edges
        j = (k - x.rho) % len(w)
        word = FinPath.of_edges(x.graph, w[j:] + w[:j])
        return RationalPath.make(FinPath.trivial(x.graph, word.source()), word)
    if isinstance(x, IrrationalPath):
        pre = len(x.prefix)
        if k <= pre:
            return IrrationalPath.make(x.rule, x.offset, x.prefix.suffix_from(k))
        return IrrationalPath.make(x.rule, x.offset + k - pre)
    raise TypeError(f"not a boundary point: {x!r}")


def prepend(p: FinPath, x):
    """The point p.x, re-canonicalized."""
    if p.range() != source_vertex(x):
        raise CompositionError(
            f"cannot prepend: r(p) = {p.range()!r} != s(x) = {source_vertex(x)!r}"
        )
    if p.is_trivial():
        return x
    if isinstance(x, SinkPath):
        return SinkPath(compose(p, x.path))
    if isinstance(x, RationalPath):
        return RationalPath.make(compose(p, x.prefix), x.cycle.cycle)
    if isinstance(x, IrrationalPath):
        return IrrationalPath.make(x.rule, x.offset, compose(p, x.prefix))
    raise TypeError(f"not a boundary point: {x!r}")


# ---------------------------------------------------------------------------
# class elements


@dataclass(frozen=True)
class ClassElement:
    """prefix . sigma^shift(base): a point of [base] in reduced form.

    Reduction strips prefix edges replaying the base word; over a
    rational base the shift is additionally normalized into the window
    [0, rho + n) using sigma^{k+n} = sigma^k for k >= rho.
    """

    base: object
    prefix: FinPath
    shift: int

    def __post_init__(self):
        if self.shift < 0:
            raise OverShiftError("negative shift")
        if isinstance(self.base, SinkPath) and self.shift > len(self.base.path):
            raise OverShiftError("shift beyond sink path")
        if isinstance(self.base, RationalPath):
            if self.shift >= self.base.rho + self.base.period:
                raise ParseError("class element shift not normalized; use make()")
        if self.prefix.range() != self.base.vertex_at(self.shift):
            raise CompositionError("class element prefix not composable with tail")
        if self._strippable(self.prefix.edges, self.shift):
            raise ParseError("class element not reduced; use make()")

    def _strippable(self, pre, k):
        x = self.base
        if not pre:
            return False
        if k >= 1 and pre[-1] == x.edge_at(k):
            return True
        if isinstance(x, RationalPath) and k == x.rho:
            return pre[-1] == x.edge_at(x.rho + x.period)
        return False

    @classmethod
    def make(cls, base, prefix: FinPath, shift_k: int):
        """Reduce (prefix, shift) to canonical form over the base."""
        pre = list(prefix.edges)
        k = shift_k
        if k < 0:
            raise OverShiftError("negative shift")
        if isinstance(base, SinkPath) and k > len(base.path):
            raise OverShiftError("shift beyond sink path")
        if isinstance(base, RationalPath):
            rho, n = base.rho, base.period
            while True:
                if k >= rho + n:
                    k -= n
                    continue
                if pre and k >= 1 and pre[-1] == base.edge_at(k):
                    pre.pop()
                    k -= 1
                    continue
                # lift k by one period (valid for k >= rho) and strip there
                if pre and k == rho and pre[-1] == base.edge_at(rho + n):
                    pre.pop()
                    k = rho + n - 1
                    continue
                break
        else:
            while pre and k >= 1 and pre[-1] == base.edge_at(k):
                pre.pop()
                k -= 1
        g = prefix.graph
        if pre:
            fp = FinPath(g, g.src(pre[0]), tuple(pre))
        else:
            fp = FinPath.trivial(g, base.vertex_at(k))
        return cls(base, fp, k)

    @classmethod
    def of_base(cls, base):
        return cls.make(base, FinPath.trivial(base.graph, source_vertex(base)), 0)

    @property
    def graph(self):
        return self.base.graph

    def source(self):
        return self.prefix.source()

    def rep_degree(self) -> int:
        """|prefix| - shift, the canonical coset-representative degree."""
        return len(self.prefix) - self.shift

    def point(self):
        """The denoted boundary point, as a canonical BoundaryPoint."""
        return prepend(self.prefix, shift(self.base, self.shift))

    def word_prefix(self, n):
        out = list(self.prefix.edges[:n])
        need = n - len(out)
        if need > 0:
            tail = shift(self.base, self.shift)
            out.extend(word_prefix(tail, need))
        return tuple(out)

    def word_length(self):
        if isinstance(self.base, SinkPath):
            return len(self.prefix) + len(self.base.path) - self.shift
        return None

    def __repr__(self):
        pre = "".join(self.prefix.edges) or self.prefix.base
        return f"[{pre}|s^{self.shift}]"


def class_eq(u: ClassElement, v: ClassElement) -> bool:
    """Equality of denoted points; requires a common base."""
    if u.base != v.base:
        raise BaseMismatchError("class elements over distinct bases")
    return u.prefix == v.prefix and u.shift == v.shift


def apply_monomial(mu: FinPath, nu: FinPath, ce: ClassElement):
    """The partial action of mu nu^* on a class element.

    Returns the reduced class element of mu.(ce stripped of nu), or None
    when ce's word does not start with nu.
    """
    pre = ce.prefix.edges
    nw = nu.edges
    if ce.source() != nu.source():
        return None
    m = min(len(pre), len(nw))
    if pre[:m] != nw[:m]:
        return None
    if len(nw) <= len(pre):
        rest = FinPath(ce.graph, nu.range(), pre[len(nw):])
        stripped = ClassElement.make(ce.base, rest, ce.shift)
    else:
        need = len(nw) - len(pre)
        if ce.word_length() is not None and ce.word_length() < len(nw):
            return None
        tail = shift(ce.base, ce.shift)
        if word_prefix(tail, need) != nw[len(pre):]:
            return None
        stripped = ClassElement.make(
            ce.base, FinPath.trivial(ce.graph, ce.base.vertex_at(ce.shift + need)),
            ce.shift + need,
        )
    if mu.range() != stripped.source():
        return None
    return ClassElement.make(ce.base, compose(mu, stripped.prefix), stripped.shift)


def as_class_element(y, base) -> ClassElement:
    """Express a boundary point y as a reduced class element over `base`.

    Exact for sink and rational bases, and for irrational points sharing
    the base's rule; anything else raises BaseMismatchError.
    """
    if y.graph != base.graph:
        raise BaseMismatchError("points over different graphs")
    if isinstance(base, SinkPath) and isinstance(y, SinkPath):
        if y.path.range() != base.path.range():
            raise BaseMismatchError("sink paths into different sinks")
        return ClassElement.make(base, y.path, len(base.path))
    if isinstance(base, RationalPath) and isinstance(y, RationalPath):
        if y.cycle.rotation_key() != base.cycle.rotation_key():
            raise BaseMismatchError("rational points over different cycle classes")
        rots = base.cycle.rotations()
        j = rots.index(y.cycle.cycle.edges)
        j = (j + 1) % base.period  # rotations() lists c_1..c_n, c_n = c
        return ClassElement.make(base, y.prefix, base.rho + j)
    if isinstance(base, IrrationalPath) and isinstance(y, IrrationalPath):
        if y.rule != base.rule:
            raise BaseMismatchError("irrational points driven by different rules")
        if y.offset >= base.offset:
            return ClassElement.make(
                base, y.prefix, len(base.prefix) + y.offset - base.offset
            )
        fill = [y.rule.edge_at(i) for i in range(y.offset, base.offset)]
        g = y.graph
        pre = y.prefix.edges + tuple(fill)
        fp = FinPath(g, y.prefix.base, pre) if pre else y.prefix
        return ClassElement.make(base, fp, len(base.prefix))
    raise BaseMismatchError(f"{y!r} is not comparable with base {base!r}")


# ---------------------------------------------------------------------------
# tail equivalence, isotropy, orbits, degree


def tail_equiv(x, y, depth: int = DEFAULT_DEPTH) -> Verdict:
    """x ~ y iff x = mu.x', y = nu.x' for a common tail x'.

    Exact between sink and rational points; for aperiodic points the
    answer is exact only against a point sharing the same rule, and
    otherwise certified up to `depth` expanded edges.
    """
    if x.graph != y.graph:
        return Verdict(False)
    sx, sy = isinstance(x, SinkPath), isinstance(y, SinkPath)
    if sx or sy:
        if sx and sy:
            return Verdict(x.path.range() == y.path.range())
        return Verdict(False)
    rx, ry = isinstance(x, RationalPath), isinstance(y, RationalPath)
    if rx and ry:
        return Verdict(x.cycle.rotation_key() == y.cycle.rotation_key())
    if rx != ry:
        # one rational, one asserted-aperiodic: never equivalent
        return Verdict(False, exact=False, note="assumes asserted aperiodicity")
    if x.rule == y.rule:
        return Verdict(True)
    wx = word_prefix(x, 2 * depth)
    wy = word_prefix(y, 2 * depth)
    for i in range(depth):
        for j in range(depth):
            horizon = min(len(wx) - i, len(wy) - j)
            if horizon > 0 and wx[i : i + horizon] == wy[j : j + horizon]:
                return Verdict(True, exact=False, note=f"tails agree for {horizon} edges")
    return Verdict(False, exact=False, note=f"no alignment within depth {depth}")


@dataclass(frozen=True)
class IsotropyDesc:
    """Trivial, or infinite cyclic generated by the degree-n loop at c^inf."""

    cycle: object = None

    @property
    def is_trivial(self):
        return self.cycle is None

    @property
    def period(self):
        return None if self.cycle is None else self.cycle.period

    def __repr__(self):
        return "Trivial" if self.is_trivial else f"Cyclic({self.period}, {self.cycle})"


def isotropy(x) -> IsotropyDesc:
    """Trivial for sink and aperiodic points; Cyclic(n, c) for x ~ c^inf."""
    if isinstance(x, RationalPath):
        return IsotropyDesc(x.cycle.canonical())
    return IsotropyDesc(None)


def degree_of(y: ClassElement):
    """|mu| - |nu| of any groupoid arrow from y to its base.

    A plain integer over sink/irrational bases; over a rational base of
    period n the degree is only defined mod n and a Residue is returned.
    """
    d = y.rep_degree()
    if isinstance(y.base, RationalPath):
        return Residue(d, y.base.period)
    return d


@dataclass(frozen=True)
class Residue:
    """An element of Z/nZ with canonical representative in [0, n)."""

    rep: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "rep", self.rep % self.modulus)

    def __repr__(self):
        return f"{self.rep} mod {self.modulus}"


@dataclass(frozen=True)
class OrbitResult:
    points: tuple
    exhausted: bool

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _root_shifts(x, depth):
    if isinstance(x, SinkPath):
        return range(len(x.path) + 1)
    if isinstance(x, RationalPath):
        return range(x.rho + x.period)
    return range(depth + 1)


def orbit_points(x, depth: int = DEFAULT_DEPTH) -> OrbitResult:
    """All reduced class elements over x with prefix length <= depth.

    Over sink/rational bases the shift range is finite and the search is
    exhaustive as soon as one prefix layer is empty; over an aperiodic
    base the shifts are additionally truncated at `depth` and the orbit
    is never exhausted.
    """
    g = x.graph
    layer = []
    for k in _root_shifts(x, depth):
        layer.append(ClassElement.make(x, FinPath.trivial(g, x.vertex_at(k)), k))
    seen = dict.fromkeys(layer)
    exhausted = False
    for m in range(1, depth + 1):
        nxt = []
        for ce in layer:
            for eid in g.in_edges(ce.source()):
                grown = ClassElement.make(
                    x, FinPath(g, g.src(eid), (eid,) + ce.prefix.edges), ce.shift
                )
                if len(grown.prefix) == m and grown not in seen:
                    seen[grown] = None
                    nxt.append(grown)
        layer = nxt
        if not layer:
            exhausted = not isinstance(x, IrrationalPath)
            break
    pts = sorted(seen, key=lambda ce: (len(ce.prefix), ce.prefix.edges, ce.shift))
    return OrbitResult(tuple(pts), exhausted)


# ---------------------------------------------------------------------------
# point JSON


def point_from_json(graph: Digraph, data):
    """{"sink": [...], "vertex": v?} | {"prefix": [...], "cycle": [...]} |
    {"irrational": {"rule": name, "params": {...}}}."""
    if not isinstance(data, dict):
        raise ParseError("point JSON must be an object")
    if "sink" in data:
        edges = data["sink"]
        if edges:
            return SinkPath(FinPath.of_edges(graph, edges))
        v = data.get("vertex")
        if v is None:
            raise ParseError('trivial sink point needs a "vertex" key')
        return SinkPath(FinPath.trivial(graph, v))
    if "cycle" in data:
        cyc = FinPath.of_edges(graph, data["cycle"])
        pre_edges = data.get("prefix", [])
        if pre_edges:
            pre = FinPath.of_edges(graph, pre_edges)
        else:
            pre = FinPath.trivial(graph, cyc.source())
        return RationalPath.make(pre, cyc)
    if "irrational" in data:
        spec = data["irrational"]
        rule = builtin_rule(graph, spec.get("rule", ""), spec.get("params", {}))
        return IrrationalPath.make(rule, spec.get("params", {}).get("offset", 0))
    raise ParseError(f"unrecognized point JSON {data!r}")


def point_to_json(x):
    if isinstance(x, SinkPath):
        out = {"sink": list(x.path.edges)}
        if not x.path.edges:
            out["vertex"] = x.path.base
        return out
    if isinstance(x, RationalPath):
        return {"prefix": list(x.prefix.edges), "cycle": list(x.cycle.cycle.edges)}
    if isinstance(x, IrrationalPath):
        return {
            "irrational": {
                "rule": x.rule.name,
                "params": {"edges": list(x.rule.params), "offset": x.offset},
            },
            "prefix": list(x.prefix.edges),
        }
    raise TypeError(f"not a boundary point: {x!r}")


def class_element_to_json(ce: ClassElement):
    return {"prefix": list(ce.prefix.edges), "shift": ce.shift}
