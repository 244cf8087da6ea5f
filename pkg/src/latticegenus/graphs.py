"""Labeled simple graphs and the constructions used throughout the toolkit.

Vertices are strings and graphs are immutable: every transformation returns a
new Graph. This module covers construction (paths, Cartesian products, grid
graphs, the G_n and H_n gadget families, complete bipartite patterns),
structural queries (girth, connectivity, blocks, planarity, isomorphism), and
graph minors: scripted delete/contract operations, witness validation, and a
backtracking branch-set search with degree-based kernelization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

__all__ = [
    "GraphError",
    "Graph",
    "path_graph",
    "cycle_graph",
    "complete_bipartite",
    "double_k33_pattern",
    "cartesian_product",
    "grid_graph",
    "grid_vertex_count",
    "grid_edge_count",
    "gn_graph",
    "hn_graph",
    "zppq_graph",
    "girth",
    "is_planar",
    "is_isomorphic",
    "BlockDecomposition",
    "block_decomposition",
    "MinorOp",
    "MinorScript",
    "apply_minor_script",
    "MinorWitness",
    "validate_minor_witness",
    "MinorSearchResult",
    "find_minor",
]


class GraphError(ValueError):
    """Raised for malformed graph constructions, queries, or witnesses."""


# ============================================================
# Core graph type
# ============================================================

class Graph:
    """Immutable simple undirected graph with string vertex labels."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices, edges):
        vs = sorted({str(v) for v in vertices})
        vset = set(vs)
        es = set()
        for pair in edges:
            u, v = pair
            u, v = str(u), str(v)
            if u == v:
                raise GraphError(f"loop edge at {u!r}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge ({u!r}, {v!r}) leaves the vertex set")
            es.add((u, v) if u <= v else (v, u))
        adj: dict[str, list[str]] = {v: [] for v in vs}
        for u, v in sorted(es):
            adj[u].append(v)
            adj[v].append(u)
        self.vertices: tuple[str, ...] = tuple(vs)
        self.edges: tuple[tuple[str, str], ...] = tuple(sorted(es))
        self._adj: dict[str, tuple[str, ...]] = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    # ---- basic queries ----

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._adj

    def has_edge(self, u: str, v: str) -> bool:
        return u in self._adj and v in self._adj[u]

    def neighbors(self, v: str) -> tuple[str, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def min_degree(self) -> int:
        return min((len(ns) for ns in self._adj.values()), default=0)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count} vertices, {self.edge_count} edges)"

    # ---- transformations (each returns a new Graph) ----

    def delete_vertex(self, v: str) -> "Graph":
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v!r}")
        keep = [w for w in self.vertices if w != v]
        return Graph(keep, [e for e in self.edges if v not in e])

    def delete_edge(self, u: str, v: str) -> "Graph":
        key = (u, v) if u <= v else (v, u)
        if key not in set(self.edges):
            raise GraphError(f"unknown edge ({u!r}, {v!r})")
        return Graph(self.vertices, [e for e in self.edges if e != key])

    def contract_edge(self, u: str, v: str) -> "Graph":
        """Merge v into u's side; the kept label is min(u, v)."""
        key = (u, v) if u <= v else (v, u)
        if key not in set(self.edges):
            raise GraphError(f"unknown edge ({u!r}, {v!r})")
        keep, gone = key
        edges = []
        for a, b in self.edges:
            a2 = keep if a == gone else a
            b2 = keep if b == gone else b
            if a2 != b2:
                edges.append((a2, b2))
        return Graph([w for w in self.vertices if w != gone], edges)

    def induced(self, vertices) -> "Graph":
        vs = set(vertices)
        missing = vs - set(self.vertices)
        if missing:
            raise GraphError(f"unknown vertices {sorted(missing)!r}")
        return Graph(vs, [(u, v) for u, v in self.edges if u in vs and v in vs])

    def relabel(self, mapping: dict) -> "Graph":
        imgs = [mapping.get(v, v) for v in self.vertices]
        if len(set(imgs)) != len(imgs):
            raise GraphError("relabeling is not injective")
        f = {v: str(mapping.get(v, v)) for v in self.vertices}
        return Graph(f.values(), [(f[u], f[v]) for u, v in self.edges])

    # ---- serialization ----

    def to_json_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Graph":
        try:
            return cls(data["vertices"], [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"malformed graph JSON: {exc}") from exc

    def to_dot(self, name: str = "G") -> str:
        lines = [f'graph "{name}" {{']
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v in self.edges:
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ============================================================
# Constructors
# ============================================================

def path_graph(length: int, prefix: str = "") -> Graph:
    """Path with `length` edges on vertices prefix+0 .. prefix+length."""
    if length < 0:
        raise GraphError("path length must be nonnegative")
    verts = [f"{prefix}{i}" for i in range(length + 1)]
    return Graph(verts, [(verts[i], verts[i + 1]) for i in range(length)])


def cycle_graph(n: int, prefix: str = "") -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    verts = [f"{prefix}{i}" for i in range(n)]
    return Graph(verts, [(verts[i], verts[(i + 1) % n]) for i in range(n)])


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} on parts L1..Lm and R1..Rn."""
    if m < 1 or n < 1:
        raise GraphError("both parts must be nonempty")
    left = [f"L{i}" for i in range(1, m + 1)]
    right = [f"R{j}" for j in range(1, n + 1)]
    return Graph(left + right, [(u, v) for u in left for v in right])


def double_k33_pattern() -> Graph:
    """Two K_{3,3} graphs sharing exactly one vertex (the bowtie pattern)."""
    verts = ["x", "a1", "a2", "b1", "b2", "b3", "c1", "c2", "d1", "d2", "d3"]
    edges = [(u, v) for u in ("x", "a1", "a2") for v in ("b1", "b2", "b3")]
    edges += [(u, v) for u in ("x", "c1", "c2") for v in ("d1", "d2", "d3")]
    return Graph(verts, edges)


def cartesian_product(g: Graph, h: Graph, sep: str = "|") -> Graph:
    """Graph Cartesian product; vertex labels are joined with `sep`."""
    verts = [f"{u}{sep}{v}" for u in g.vertices for v in h.vertices]
    edges = []
    for u in g.vertices:
        for a, b in h.edges:
            edges.append((f"{u}{sep}{a}", f"{u}{sep}{b}"))
    for a, b in g.edges:
        for v in h.vertices:
            edges.append((f"{a}{sep}{v}", f"{b}{sep}{v}"))
    return Graph(verts, edges)


def grid_graph(exponents) -> Graph:
    """Cartesian product of paths with lengths e_1 >= ... >= e_k >= 1.

    Vertices are coordinate tuples rendered as comma-joined strings; two
    vertices are adjacent iff they differ by one in exactly one coordinate.
    """
    ex = _canonical_exponents(exponents)
    ranges = [range(e + 1) for e in ex]
    coords = list(itertools.product(*ranges))
    label = lambda c: ",".join(map(str, c))
    edges = []
    for c in coords:
        for i, e in enumerate(ex):
            if c[i] < e:
                d = list(c)
                d[i] += 1
                edges.append((label(c), label(tuple(d))))
    return Graph([label(c) for c in coords], edges)


def _canonical_exponents(exponents) -> tuple[int, ...]:
    ex = tuple(int(e) for e in exponents)
    if not ex or any(e < 1 for e in ex):
        raise GraphError("grid exponents must be positive integers")
    return tuple(sorted(ex, reverse=True))


def grid_vertex_count(exponents) -> int:
    ex = _canonical_exponents(exponents)
    out = 1
    for e in ex:
        out *= e + 1
    return out


def grid_edge_count(exponents) -> int:
    ex = _canonical_exponents(exponents)
    total = 0
    for i, e in enumerate(ex):
        term = e
        for j, f in enumerate(ex):
            if j != i:
                term *= f + 1
        total += term
    return total


def gn_graph(n: int) -> Graph:
    """Hub gadget on a, b, c with n pendant pairs alpha_i, beta_i.

    Edges: b-alpha_i, b-beta_i, a-alpha_i, c-beta_i, alpha_i-beta_i.
    2n+3 vertices and 5n edges.
    """
    if n < 2:
        raise GraphError("gn_graph needs n >= 2")
    al = [f"alpha_{i}" for i in range(1, n + 1)]
    be = [f"beta_{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(n):
        edges += [("b", al[i]), ("b", be[i]), ("a", al[i]), ("c", be[i]), (al[i], be[i])]
    return Graph(["a", "b", "c", *al, *be], edges)


def hn_graph(n: int) -> Graph:
    """Two disjoint copies of the G_n gadget plus five connecting edges.

    Copy 0 uses a_0, b_0, c_0 with pairs alpha_i, beta_i; copy 1 uses a_1,
    b_1, c_1 with pairs gamma_i, delta_i. Connectors: a_0-a_1, b_0-b_1,
    c_0-c_1, b_0-a_1, c_0-b_1. 4n+6 vertices and 10n+5 edges.
    """
    if n < 2:
        raise GraphError("hn_graph needs n >= 2")
    g0 = gn_graph(n).relabel(
        {"a": "a_0", "b": "b_0", "c": "c_0"}
    )
    rename1 = {"a": "a_1", "b": "b_1", "c": "c_1"}
    for i in range(1, n + 1):
        rename1[f"alpha_{i}"] = f"gamma_{i}"
        rename1[f"beta_{i}"] = f"delta_{i}"
    g1 = gn_graph(n).relabel(rename1)
    verts = list(g0.vertices) + list(g1.vertices)
    edges = list(g0.edges) + list(g1.edges)
    edges += [("a_0", "a_1"), ("b_0", "b_1"), ("c_0", "c_1"), ("b_0", "a_1"), ("c_0", "b_1")]
    return Graph(verts, edges)


def zppq_graph(p: int) -> Graph:
    """The lattice shape of Z_p x Z_p x Z_q on explicit labels.

    Vertices: a (trivial), b (the p^2 subgroup), c (the q subgroup), d (the
    full group), i_a for the p+1 subgroups of size p, i_c for the p+1
    subgroups of size pq. Edges: a-i_a, b-i_a, c-i_c, d-i_c, i_a-i_c, a-c,
    b-d. 2(p+3) vertices and 5p+7 edges.
    """
    if p < 2:
        raise GraphError("zppq_graph needs p >= 2")
    bottoms = [f"{i}_a" for i in range(p + 1)]
    tops = [f"{i}_c" for i in range(p + 1)]
    edges = [("a", "c"), ("b", "d")]
    for i in range(p + 1):
        edges += [
            ("a", bottoms[i]),
            ("b", bottoms[i]),
            ("c", tops[i]),
            ("d", tops[i]),
            (bottoms[i], tops[i]),
        ]
    return Graph(["a", "b", "c", "d", *bottoms, *tops], edges)


# ============================================================
# Structural queries
# ============================================================

def girth(g: Graph):
    """Length of the shortest cycle; float('inf') for forests."""
    best = float("inf")
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                if 2 * dist[u] >= best - 1:
                    continue
                for w in g.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent[w] != u:
                        best = min(best, dist[u] + dist[w] + 1)
            queue = nxt
    return best


def to_networkx(g: Graph) -> "nx.Graph":
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def is_planar(g: Graph) -> bool:
    ok, _ = nx.check_planarity(to_networkx(g))
    return ok


def _twin_classes(g: Graph) -> dict[tuple[str, str], list[str]]:
    """Degree-2 vertices grouped by their neighbor pair, restricted to
    pairs of degree >= 3 so chains of degree-2 vertices stay put."""
    classes: dict[tuple[str, str], list[str]] = {}
    for v in g.vertices:
        nbrs = g.neighbors(v)
        if len(nbrs) == 2 and all(len(g.neighbors(u)) >= 3 for u in nbrs):
            classes.setdefault(tuple(sorted(nbrs)), []).append(v)
    return classes


def _twin_quotient(g: Graph, classes: dict[tuple[str, str], list[str]]) -> "nx.Graph":
    collapsed = {v for cls in classes.values() for v in cls}
    q = nx.Graph()
    q.add_nodes_from(v for v in g.vertices if v not in collapsed)
    for u, v in g.edges:
        if u not in collapsed and v not in collapsed:
            q.add_edge(u, v, direct=1, twins=0)
    for (u, v), cls in classes.items():
        if q.has_edge(u, v):
            q[u][v]["twins"] = len(cls)
        else:
            q.add_edge(u, v, direct=0, twins=len(cls))
    return q


def _solve_isomorphism(g: Graph, h: Graph):
    g_classes, h_classes = _twin_classes(g), _twin_classes(h)
    if not g_classes and not h_classes:
        return nx.vf2pp_isomorphism(to_networkx(g), to_networkx(h))
    # banks of parallel length-2 paths are interchangeable, which makes
    # plain VF2 thrash; match the quotient and extend over each class
    matcher = nx.isomorphism.GraphMatcher(
        _twin_quotient(g, g_classes),
        _twin_quotient(h, h_classes),
        edge_match=nx.isomorphism.categorical_edge_match(
            ["direct", "twins"], [1, 0]
        ),
    )
    if not matcher.is_isomorphic():
        return None
    mapping = dict(matcher.mapping)
    for (u, v), cls in g_classes.items():
        image = tuple(sorted((mapping[u], mapping[v])))
        for a, b in zip(sorted(cls), sorted(h_classes[image])):
            mapping[a] = b
    return mapping


def is_isomorphic(g: Graph, h: Graph):
    """Vertex bijection g -> h when isomorphic, else None.

    The mapping returned by the solver is re-validated edge by edge before
    being handed back, so a wrong mapping can never escape.
    """
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return None
    mapping = _solve_isomorphism(g, h)
    if mapping is None:
        return None
    if sorted(mapping) != list(g.vertices) or sorted(mapping.values()) != list(h.vertices):
        raise GraphError("isomorphism solver returned a non-bijection")
    hedges = set(h.edges)
    for u, v in g.edges:
        a, b = mapping[u], mapping[v]
        if ((a, b) if a <= b else (b, a)) not in hedges:
            raise GraphError("isomorphism solver returned a non-edge-preserving map")
    return mapping


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal 2-connected subgraphs, bridges included) and cut vertices."""

    blocks: tuple[Graph, ...]
    cut_vertices: frozenset[str]


def block_decomposition(g: Graph) -> BlockDecomposition:
    if not g.is_connected():
        raise GraphError("block decomposition needs a connected graph")
    h = to_networkx(g)
    blocks = []
    for edge_set in nx.biconnected_component_edges(h):
        edges = [tuple(sorted(e)) for e in edge_set]
        verts = {v for e in edges for v in e}
        blocks.append(Graph(verts, edges))
    blocks.sort(key=lambda b: (b.vertices, b.edges))
    # every edge lands in exactly one block
    counted = sum(b.edge_count for b in blocks)
    if counted != g.edge_count:
        raise GraphError("block decomposition lost or duplicated edges")
    return BlockDecomposition(tuple(blocks), frozenset(nx.articulation_points(h)))


# ============================================================
# Minor scripts
# ============================================================

_MINOR_OPS = ("delete-vertex", "delete-edge", "contract-edge")


@dataclass(frozen=True)
class MinorOp:
    op: str
    args: tuple[str, ...]

    def __post_init__(self):
        if self.op not in _MINOR_OPS:
            raise GraphError(f"unknown minor op {self.op!r}")
        want = 1 if self.op == "delete-vertex" else 2
        if len(self.args) != want:
            raise GraphError(f"{self.op} takes {want} argument(s)")


@dataclass(frozen=True)
class MinorScript:
    ops: tuple[MinorOp, ...]

    def to_json_list(self) -> list:
        return [{"op": o.op, "args": list(o.args)} for o in self.ops]

    @classmethod
    def from_json_list(cls, data) -> "MinorScript":
        try:
            return cls(tuple(MinorOp(d["op"], tuple(map(str, d["args"]))) for d in data))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed minor script: {exc}") from exc


def apply_minor_script(g: Graph, script: MinorScript) -> Graph:
    out = g
    for step in script.ops:
        if step.op == "delete-vertex":
            out = out.delete_vertex(step.args[0])
        elif step.op == "delete-edge":
            out = out.delete_edge(*step.args)
        else:
            out = out.contract_edge(*step.args)
    return out


# ============================================================
# Minor witnesses and search
# ============================================================

@dataclass(frozen=True)
class MinorWitness:
    """Disjoint connected branch sets, one per pattern vertex."""

    branch_sets: dict

    def to_json_dict(self) -> dict:
        return {"branch_sets": {k: sorted(v) for k, v in sorted(self.branch_sets.items())}}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MinorWitness":
        try:
            return cls({str(k): frozenset(map(str, v)) for k, v in data["branch_sets"].items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise GraphError(f"malformed minor witness: {exc}") from exc


def validate_minor_witness(host: Graph, pattern: Graph, witness: MinorWitness) -> None:
    """Raise GraphError unless the witness proves pattern is a minor of host."""
    sets = witness.branch_sets
    if sorted(sets) != list(pattern.vertices):
        raise GraphError("branch sets must be keyed by exactly the pattern vertices")
    used = set()
    for pv, bs in sets.items():
        if not bs:
            raise GraphError(f"branch set for {pv!r} is empty")
        extra = set(bs) - set(host.vertices)
        if extra:
            raise GraphError(f"branch set for {pv!r} uses unknown vertices {sorted(extra)!r}")
        if used & set(bs):
            raise GraphError("branch sets are not pairwise disjoint")
        used |= set(bs)
        if not host.induced(bs).is_connected():
            raise GraphError(f"branch set for {pv!r} is not connected in the host")
    hedges = set(host.edges)
    for pu, pv in pattern.edges:
        a, b = sets[pu], sets[pv]
        if not any(((x, y) if x <= y else (y, x)) in hedges for x in a for y in b):
            raise GraphError(f"no host edge realizes pattern edge ({pu!r}, {pv!r})")


@dataclass(frozen=True)
class MinorSearchResult:
    witness: "MinorWitness | None"
    exhausted: bool
    nodes: int


class _Budget(Exception):
    pass


def _kernelize(host: Graph):
    """Drop degree<=1 vertices and suppress degree-2 vertices.

    Sound and complete for patterns of minimum degree >= 3. Returns the
    kernel plus, for each kernel edge, the ordered interior host path it
    stands for, so witnesses can be lifted back.
    """
    adj = {v: set(host.neighbors(v)) for v in host.vertices}
    paths: dict[tuple[str, str], tuple[str, ...]] = {}

    def path_of(u, v):
        key = (u, v) if u <= v else (v, u)
        inner = paths.get(key, ())
        return inner if (u, v) == key or not inner else tuple(reversed(inner))

    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            deg = len(adj[v])
            if deg <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                    paths.pop((v, w) if v <= w else (w, v), None)
                del adj[v]
                changed = True
            elif deg == 2:
                u, w = sorted(adj[v])
                key_uv = (u, v) if u <= v else (v, u)
                key_vw = (v, w) if v <= w else (w, v)
                if w in adj[u]:
                    # suppressing would create a parallel edge; drop v instead
                    adj[u].discard(v)
                    adj[w].discard(v)
                    del adj[v]
                    paths.pop(key_uv, None)
                    paths.pop(key_vw, None)
                else:
                    inner = path_of(u, v) + (v,) + path_of(v, w)
                    adj[u].discard(v)
                    adj[w].discard(v)
                    adj[u].add(w)
                    adj[w].add(u)
                    del adj[v]
                    paths.pop(key_uv, None)
                    paths.pop(key_vw, None)
                    paths[(u, w) if u <= w else (w, u)] = inner if u <= w else tuple(reversed(inner))
                changed = True
    kernel = Graph(adj.keys(), [(u, w) for u in adj for w in adj[u] if u < w])
    return kernel, paths


def _lift_witness(host: Graph, pattern: Graph, kernel: Graph, paths, assignment) -> MinorWitness:
    """Expand kernel branch sets back to host vertices.

    Kernel edges inside a branch set pull in their interior path; a kernel
    edge crossing between two branch sets donates its interior to the side
    listed first, keeping the final host edge as the cross connection.
    """
    def interior(u, w):
        key = (u, w) if u <= w else (w, u)
        inner = paths.get(key, ())
        return inner if u <= w else tuple(reversed(inner))

    lifted = {pv: set(bs) for pv, bs in assignment.items()}
    owner = {}
    for pv, bs in assignment.items():
        for x in bs:
            owner[x] = pv
    for u, w in kernel.edges:
        pu, pw = owner.get(u), owner.get(w)
        if pu is None or pw is None:
            continue
        # interior runs u -> w, so attaching it to u's side leaves the
        # final host edge (last interior vertex, w) as the cross connection
        lifted[pu].update(interior(u, w))
    return MinorWitness({pv: frozenset(bs) for pv, bs in lifted.items()})


def _pattern_order(pattern: Graph) -> list:
    """Static placement order: most already-placed neighbors first.

    Starts from a highest-degree vertex and repeatedly picks the unplaced
    vertex with the most placed neighbors (ties: higher degree, then label),
    so adjacency constraints bind as early as possible.
    """
    start = max(pattern.vertices, key=lambda v: (pattern.degree(v), v))
    order = [start]
    placed = {start}
    while len(order) < pattern.vertex_count:
        best = None
        for v in sorted(pattern.vertices):
            if v in placed:
                continue
            k = sum(1 for w in pattern.neighbors(v) if w in placed)
            if k == 0:
                continue
            key = (-k, -pattern.degree(v), v)
            if best is None or key < best[0]:
                best = (key, v)
        if best is None:
            raise GraphError("minor search requires a connected pattern")
        order.append(best[1])
        placed.add(best[1])
    return order


def find_minor(host: Graph, pattern: Graph, budget: int = 10**7) -> MinorSearchResult:
    """Backtracking branch-set search for pattern as a minor of host.

    One depth-first pass over kernel bitmasks: pattern vertices are placed
    in a most-constrained-first order, candidate branch sets grow in a
    canonical anchor-then-frontier order, and non-adjacent pattern twins
    (equal neighborhoods) are forced into increasing branch-set order so
    symmetric assignments are tried once. Deterministic, so the first
    witness found is stable. The result's `exhausted` flag is True only
    when the pass finished within budget, which proves the pattern is not
    a minor.
    """
    if budget <= 0:
        raise GraphError("budget must be positive")
    if pattern.vertex_count > host.vertex_count:
        return MinorSearchResult(None, True, 0)

    if pattern.min_degree() >= 3 and pattern.edge_count:
        kernel, paths = _kernelize(host)
    else:
        kernel, paths = host, {}
    if pattern.vertex_count > kernel.vertex_count or pattern.edge_count > kernel.edge_count:
        return MinorSearchResult(None, True, 0)

    verts = sorted(kernel.vertices)
    bit_of = {v: i for i, v in enumerate(verts)}
    nk = len(verts)
    nbr = [0] * nk
    for u, w in kernel.edges:
        nbr[bit_of[u]] |= 1 << bit_of[w]
        nbr[bit_of[w]] |= 1 << bit_of[u]
    deg = [m.bit_count() for m in nbr]

    order = _pattern_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    needed = [
        tuple(sorted(pos[w] for w in pattern.neighbors(v) if pos[w] < pos[v]))
        for v in order
    ]
    pdeg = [pattern.degree(v) for v in order]
    npat = len(order)

    # pattern automorphisms permute branch sets of any witness into another
    # witness, so only the lex-least representative (by branch-set minimum
    # vertex, in placement order) needs to be searched: each automorphism
    # pins an ordering between the first level it moves and that level's
    # image, and the lex-least witness satisfies every one of these at once
    cons: list[set] = [set() for _ in range(npat)]
    auto_count = 0
    for sigma in nx.vf2pp_all_isomorphisms(to_networkx(pattern), to_networkx(pattern)):
        auto_count += 1
        for ell in range(npat):
            img = sigma[order[ell]]
            if img != order[ell]:
                cons[pos[img]].add(ell)
                break
        if auto_count >= 100_000:
            break

    # fut[r][i]: pattern edges at order[r] still unplaced after level i; each
    # needs its own free neighbor of r's branch set, since branch sets are
    # disjoint and every one of them must touch r's set through a distinct
    # host vertex
    fut = [
        [sum(1 for w in pattern.neighbors(order[r]) if pos[w] > i) for i in range(npat)]
        for r in range(npat)
    ]

    nodes = 0
    sets = [0] * npat
    setadj = [0] * npat
    witness_box: list[list[int]] = []
    size_capped = False
    max_size = nk

    def place(i: int, free: int, used: int) -> bool:
        if i == npat:
            witness_box.append(list(sets))
            return True
        true_slack = nk - used - (npat - i - 1)
        if true_slack < 1:
            return False
        slack = min(true_slack, max_size)
        capped_level = slack < true_slack
        req = needed[i]
        restmasks = [sets[r] for r in req[1:]]
        min_above = 0
        for ell in cons[i]:
            low = sets[ell] & -sets[ell]
            if low > min_above:
                min_above = low
        # the whole branch set must sit above every constraining minimum,
        # since growing can only lower a set's minimum vertex
        region = free & ~(min_above - 1) if min_above else free
        restadj = [setadj[r] & region for r in req[1:]]
        nrest = len(restmasks)
        if req:
            first = sets[req[0]]
            amask = 0
            m = first
            while m:
                b = m & -m
                amask |= nbr[b.bit_length() - 1]
                m ^= b
            amask &= region
        else:
            amask = region

        def grow(cur: int, curadj: int, frontier: int, banned: int,
                 size: int, degsum: int) -> bool:
            nonlocal nodes, size_capped
            nodes += 1
            if nodes > budget:
                raise _Budget
            # a required neighbor whose remaining contact zone is banned or
            # swallowed can never be reached by any extension of this set
            for k in range(nrest):
                if not (curadj & restmasks[k]) and not (restadj[k] & ~(banned | cur)):
                    return False
            if (
                degsum - 2 * (size - 1) >= pdeg[i]
                and all(curadj & r for r in restmasks)
            ):
                nfree = free & ~cur
                ok = (curadj & nfree).bit_count() >= fut[i][i]
                if ok:
                    for r in range(i):
                        need = fut[r][i]
                        if need and (setadj[r] & nfree).bit_count() < need:
                            ok = False
                            break
                if ok:
                    sets[i] = cur
                    setadj[i] = curadj
                    if place(i + 1, nfree, used + size):
                        return True
                    sets[i] = 0
            if size >= slack:
                if capped_level and frontier:
                    size_capped = True
                return False
            ext = frontier
            newly = 0
            while ext:
                vb = ext & -ext
                ext ^= vb
                v = vb.bit_length() - 1
                ncur = cur | vb
                nfront = (frontier | (nbr[v] & region)) & ~ncur & ~banned & ~newly
                if grow(ncur, curadj | nbr[v], nfront, banned | newly,
                        size + 1, degsum + deg[v]):
                    return True
                newly |= vb
            return False

        anchors = []
        while amask:
            ab = amask & -amask
            amask ^= ab
            anchors.append(ab.bit_length() - 1)
        # high-degree anchors first: pattern vertices needing many boundary
        # edges resolve fastest around the host's densest spots
        anchors.sort(key=lambda a: (-deg[a], a))
        banned = 0
        for a in anchors:
            ab = 1 << a
            if grow(ab, nbr[a], nbr[a] & region & ~banned, banned, 1, deg[a]):
                return True
            banned |= ab
        return False

    # deepen on the largest branch set allowed: small-cap passes are cheap
    # and most witnesses use small sets, while a pass that never hits its
    # cap has explored the whole tree and proves absence
    found = False
    exhausted = False
    try:
        for cap in range(1, nk + 1):
            max_size = cap
            size_capped = False
            if place(0, (1 << nk) - 1, 0):
                found = True
                break
            if not size_capped:
                exhausted = True
                break
    except _Budget:
        return MinorSearchResult(None, False, nodes)

    if not found:
        return MinorSearchResult(None, exhausted, nodes)
    masks = witness_box[0]
    assignment = {
        order[i]: frozenset(verts[b] for b in range(nk) if masks[i] >> b & 1)
        for i in range(npat)
    }
    witness = _lift_witness(host, pattern, kernel, paths, assignment)
    validate_minor_witness(host, pattern, witness)
    return MinorSearchResult(witness, False, nodes)
