"""Row-finite digraphs, finite paths, and simple closed paths.

Vertices and edges carry opaque string ids; ids are compared
lexicographically wherever a deterministic choice is needed (canonical
cycle rotations, the special out-edge of a vertex).  A vertex with no
outgoing edge is a sink; every other vertex is regular.
"""

import json
from dataclasses import dataclass

from .errors import CompositionError, OverShiftError, ParseError


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


class Digraph:
    """A finite directed multigraph, immutable after construction.

    `vertices` is an iterable of vertex ids, `edges` an iterable of
    (id, src, dst) triples or Edge values.  Duplicate or dangling ids are
    rejected with a diagnostic.
    """

    def __init__(self, vertices, edges):
        vs = list(vertices)
        if len(vs) != len(set(vs)):
            raise ParseError("duplicate vertex ids")
        es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        ids = [e.id for e in es]
        if len(ids) != len(set(ids)):
            raise ParseError("duplicate edge ids")
        vset = set(vs)
        for e in es:
            if e.src not in vset or e.dst not in vset:
                raise ParseError(f"edge {e.id!r} has dangling endpoint")
        self.vertices = frozenset(vs)
        self.edges = {e.id: e for e in sorted(es, key=lambda e: e.id)}
        self._out = {v: [] for v in vs}
        self._in = {v: [] for v in vs}
        for e in self.edges.values():
            self._out[e.src].append(e.id)
            self._in[e.dst].append(e.id)
        for v in vs:
            self._out[v].sort()
            self._in[v].sort()
        self._key = (self.vertices, tuple(sorted(self.edges)))
        self._hash = hash(self._key)

    def __eq__(self, other):
        return (
            isinstance(other, Digraph)
            and self._key == other._key
            and all(self.edges[i] == other.edges[i] for i in self.edges)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Digraph({sorted(self.vertices)}, {list(self.edges)})"

    def out_edges(self, v):
        """Ids of edges with source v, sorted lexicographically."""
        return self._out[v]

    def in_edges(self, v):
        return self._in[v]

    def is_sink(self, v):
        return not self._out[v]

    def sinks(self):
        return sorted(v for v in self.vertices if self.is_sink(v))

    def special_edge(self, v):
        """The least out-edge id of a regular vertex, None at a sink."""
        out = self._out[v]
        return out[0] if out else None

    def src(self, edge_id):
        return self.edges[edge_id].src

    def dst(self, edge_id):
        return self.edges[edge_id].dst

    @classmethod
    def from_json(cls, data):
        """Build from {"vertices": [...], "edges": [{"id","src","dst"}...]}."""
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid graph JSON: {exc}") from None
        try:
            vs = data["vertices"]
            es = [(e["id"], e["src"], e["dst"]) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"graph JSON missing field: {exc}") from None
        return cls(vs, es)

    def to_json(self):
        return {
            "vertices": sorted(self.vertices),
            "edges": [
                {"id": e.id, "src": e.src, "dst": e.dst}
                for e in self.edges.values()
            ],
        }


@dataclass(frozen=True)
class FinPath:
    """A finite path: a base vertex and a composable sequence of edge ids.

    A trivial path has no edges and both endpoints equal to `base`; for a
    nontrivial path `base` is the source of the first edge.
    """

    graph: Digraph
    base: str
    edges: tuple = ()

    def __post_init__(self):
        g = self.graph
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.base not in g.vertices:
            raise ParseError(f"unknown vertex {self.base!r}")
        at = self.base
        for eid in self.edges:
            if eid not in g.edges:
                raise ParseError(f"unknown edge {eid!r}")
            if g.src(eid) != at:
                raise CompositionError(
                    f"edge {eid!r} starts at {g.src(eid)!r}, expected {at!r}"
                )
            at = g.dst(eid)

    @classmethod
    def trivial(cls, graph, v):
        return cls(graph, v)

    @classmethod
    def of_edges(cls, graph, edge_ids):
        edge_ids = tuple(edge_ids)
        if not edge_ids:
            raise ParseError("of_edges needs at least one edge; use trivial()")
        return cls(graph, graph.src(edge_ids[0]), edge_ids)

    def __len__(self):
        return len(self.edges)

    def source(self):
        return self.base

    def range(self):
        return self.graph.dst(self.edges[-1]) if self.edges else self.base

    def is_trivial(self):
        return not self.edges

    def is_closed(self):
        return bool(self.edges) and self.range() == self.source()

    def prefix(self, n):
        if not 0 <= n <= len(self.edges):
            raise IndexError(f"prefix length {n} out of range")
        return FinPath(self.graph, self.base, self.edges[:n])

    def suffix_from(self, n):
        """The path obtained by dropping the first n edges."""
        if not 0 <= n <= len(self.edges):
            raise OverShiftError(f"suffix index {n} out of range")
        if n == len(self.edges):
            return FinPath(self.graph, self.range())
        return FinPath.of_edges(self.graph, self.edges[n:])

    def vertex_at(self, i):
        """Vertex visited after the first i edges (0 <= i <= len)."""
        if i == 0:
            return self.base
        return self.graph.dst(self.edges[i - 1])

    def __repr__(self):
        return "".join(self.edges) if self.edges else self.base


def compose(p: FinPath, q: FinPath) -> FinPath:
    """Concatenation pq; requires r(p) = s(q)."""
    if p.graph != q.graph:
        raise CompositionError("paths over different graphs")
    if p.range() != q.source():
        raise CompositionError(
            f"cannot compose: range {p.range()!r} != source {q.source()!r}"
        )
    return FinPath(p.graph, p.base, p.edges + q.edges)


@dataclass(frozen=True)
class SimpleClosedPath:
    """A simple (primitive) closed path.

    The stored rotation is whatever the constructor received; use
    `canonical()` for the lexicographically least rotation, which is the
    representative used in enumeration and catalog output.
    """

    cycle: FinPath

    def __post_init__(self):
        c = self.cycle
        if not c.is_closed():
            raise CompositionError("simple closed path must be closed and nontrivial")
        word = c.edges
        n = len(word)
        for d in range(1, n):
            if n % d == 0 and word == word[:d] * (n // d):
                raise CompositionError(
                    f"{''.join(word)} is a proper power of {''.join(word[:d])}"
                )

    @property
    def period(self):
        return len(self.cycle)

    def rotations(self):
        """All n rotations as edge-id tuples, c itself last (paper order)."""
        w = self.cycle.edges
        return [w[i:] + w[:i] for i in range(1, len(w))] + [w]

    def canonical(self):
        """Rotation with the lexicographically least edge-id sequence."""
        best = min(self.rotations())
        return SimpleClosedPath(FinPath.of_edges(self.cycle.graph, best))

    def rotation_key(self):
        """Canonical edge word; equal iff the cycles are rotations of each other."""
        return min(self.rotations())

    def __repr__(self):
        return f"<cycle {''.join(self.cycle.edges)}>"


def rotate(c: SimpleClosedPath, i: int) -> FinPath:
    """The i-th rotation e_{i+1}..e_n e_1..e_i, 1-indexed; rotate(c, n) = c."""
    n = c.period
    if not 1 <= i <= n:
        raise IndexError(f"rotation index {i} out of range 1..{n}")
    w = c.cycle.edges
    return FinPath.of_edges(c.cycle.graph, w[i:] + w[:i])


def primitive_root(d: FinPath):
    """Write a closed path d as c^m with c simple; returns (c, m).

    The returned cycle keeps d's phase, so d really is c.edges * m.
    """
    if not d.is_closed():
        raise CompositionError("primitive_root needs a nontrivial closed path")
    word = d.edges
    n = len(word)
    for per in range(1, n + 1):
        if n % per == 0 and word == word[:per] * (n // per):
            root = FinPath.of_edges(d.graph, word[:per])
            return SimpleClosedPath(root), n // per
    raise AssertionError("unreachable: every word is its own power")


def paths_up_to(g: Digraph, max_len: int):
    """All finite paths of length <= max_len (trivial ones included),
    sorted by (length, edge word, base vertex)."""
    out = [FinPath.trivial(g, v) for v in sorted(g.vertices)]
    layer = list(out)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for eid in g.out_edges(p.range()):
                nxt.append(FinPath(g, p.base, p.edges + (eid,)))
        out.extend(nxt)
        layer = nxt
    return sorted(out, key=lambda p: (len(p.edges), p.edges, p.base))


def simple_cycles(g: Digraph, max_len: int):
    """All simple closed paths of length <= max_len, one canonical rotation
    per rotation class.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    found = {}
    def walk(start, path):
        at = g.dst(path[-1])
        if at == start:
            word = tuple(path)
            n = len(word)
            if all(not (n % d == 0 and word == word[:d] * (n // d))
                   for d in range(1, n)):
                scp = SimpleClosedPath(FinPath.of_edges(g, word)).canonical()
                found[scp.cycle.edges] = scp
            # closed walks may continue through the start vertex
        if len(path) < max_len:
            for eid in g.out_edges(at):
                walk(start, path + [eid])

    for v in sorted(g.vertices):
        for eid in g.out_edges(v):
            walk(v, [eid])
    return set(found.values())
