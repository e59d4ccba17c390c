"""Undirected labeled graphs, class recognizers, homomorphism search, enumeration.

Vertices are 0..n-1.  Edges are canonical pairs (i, j) with i < j; self-loops
live in a separate vertex set (loops are legal in homomorphism targets H but
never selected by class enumerations).  Labels attach role names to vertices
for gadget bookkeeping.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceededError

DEFAULT_HOM_BUDGET = 2_000_000
DEFAULT_ENUM_BUDGET = 1 << 21

Edge = tuple


def canonical_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError("self-loops are not edges; use the loops set")
    return (u, v) if u < v else (v, u)


def all_edges(n: int) -> list[Edge]:
    """Edges of K_n in canonical (lexicographic) order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()
    loops: frozenset = frozenset()
    labels: tuple = ()

    @classmethod
    def make(cls, n, edges=(), loops=(), labels=None) -> "Graph":
        es = frozenset(canonical_edge(u, v) for u, v in edges)
        ls = frozenset(loops)
        for u, v in es:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        for v in ls:
            if not 0 <= v < n:
                raise ValueError(f"loop at {v} out of range for n={n}")
        lab = tuple(sorted((labels or {}).items())) if not isinstance(labels, tuple) \
            else labels
        roles = [r for r, _ in lab]
        if len(set(roles)) != len(roles):
            raise ValueError("duplicate role labels")
        return cls(n, es, ls, lab)

    # -- stock graphs ----------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.make(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.make(n, all_edges(n))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("cycles need at least 3 vertices")
        return cls.make(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.make(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.make(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def single_edge(cls) -> "Graph":
        return cls.make(2, [(0, 1)])

    @classmethod
    def looped_vertex(cls) -> "Graph":
        return cls.make(1, loops=[0])

    # -- basics -----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edges

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def label(self, role: str) -> int:
        for r, v in self.labels:
            if r == role:
                return v
        raise KeyError(role)

    def with_labels(self, labels: dict) -> "Graph":
        merged = dict(self.labels)
        merged.update(labels)
        return Graph.make(self.n, self.edges, self.loops, merged)

    def components(self) -> list[frozenset]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced(self, vertices) -> "Graph":
        """Induced subgraph relabeled to 0..k-1 in sorted vertex order."""
        vs = sorted(vertices)
        idx = {v: i for i, v in enumerate(vs)}
        es = [(idx[a], idx[b]) for a, b in self.edges if a in idx and b in idx]
        ls = [idx[v] for v in self.loops if v in idx]
        return Graph.make(len(vs), es, ls)

    def contract_edge(self, e: Edge) -> "Graph":
        """Identify e's endpoints, merge parallel edges, drop the new loop.

        The higher endpoint is removed and vertices above it shift down by
        one, so the result is canonically labeled.
        """
        e = canonical_edge(*e)
        if e not in self.edges:
            raise ValueError(f"edge {e} not in graph")
        u, v = e

        def remap(x: int) -> int:
            if x == v:
                x = u
            return x - 1 if x > v else x

        es = set()
        for a, b in self.edges:
            ra, rb = remap(a), remap(b)
            if ra != rb:
                es.add(canonical_edge(ra, rb))
        ls = {remap(x) for x in self.loops}
        lab = {r: remap(x) for r, x in self.labels}
        return Graph.make(self.n - 1, es, ls, lab)

    # -- JSON ---------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "edges": [list(e) for e in sorted(self.edges)],
            "loops": sorted(self.loops),
            "labels": {r: v for r, v in self.labels},
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Graph":
        return cls.make(obj["n"], [tuple(e) for e in obj.get("edges", [])],
                        obj.get("loops", []), obj.get("labels", {}))


# -- graph classes ----------------------------------------------------------

@dataclass(frozen=True)
class GraphClass:
    """A one-nontrivial-component graph property.

    A graph satisfies the class when exactly one connected component has the
    stated shape and every other component is a single vertex.
    """
    kind: str
    genus: int | None = None

    def __str__(self) -> str:
        if self.kind == "genus":
            return f"genus({self.genus})"
        return self.kind


CYCLE = GraphClass("cycle")
CLIQUE = GraphClass("clique")
TREE = GraphClass("tree")
OUTERPLANAR = GraphClass("outerplanar")
PLANAR = GraphClass("planar")


def genus_class(k: int) -> GraphClass:
    if k < 0:
        raise ValueError("genus must be nonnegative")
    return GraphClass("genus", k)


def parse_class(name: str, k: int | None = None) -> GraphClass:
    name = name.lower()
    if name in ("cycle", "clique", "tree", "outerplanar", "planar"):
        return GraphClass(name)
    if name == "genus":
        if k is None:
            raise ValueError("genus class needs k")
        return genus_class(k)
    raise ValueError(f"unknown graph class {name!r}")


def _component_shape_ok(comp: Graph, cls: GraphClass, budget: int) -> bool:
    # comp is connected with >= 2 vertices and no loops
    v, m = comp.n, len(comp.edges)
    if cls.kind == "cycle":
        return v >= 3 and m == v and all(comp.degree(x) == 2 for x in range(v))
    if cls.kind == "clique":
        return m == v * (v - 1) // 2
    if cls.kind == "tree":
        return m == v - 1
    from . import topo
    if cls.kind == "outerplanar":
        return topo.is_outerplanar(comp)
    if cls.kind == "planar":
        return topo.is_planar(comp)
    if cls.kind == "genus":
        if cls.genus == 0:
            return topo.is_planar(comp)
        if topo.is_planar(comp):
            return False
        return topo.min_genus(comp, budget=budget) == cls.genus
    raise ValueError(f"unknown class kind {cls.kind}")


def recognize(g: Graph, cls: GraphClass, budget: int = 10 ** 6) -> bool:
    """Exactly one component has the class shape; the rest are single vertices."""
    if g.loops:
        return False
    nontrivial = [c for c in g.components() if len(c) > 1]
    if len(nontrivial) != 1:
        return False
    return _component_shape_ok(g.induced(nontrivial[0]), cls, budget)


# -- homomorphism search ------------------------------------------------------

def is_homomorphic(g: Graph, h: Graph, budget: int = DEFAULT_HOM_BUDGET) -> bool:
    """Backtracking test for a map f with {f(u),f(v)} an edge or loop of h.

    Isolated vertices of g are unconstrained and skipped.  Vertices are
    assigned in degree-descending order with adjacency pruning; the node
    budget guards against blowup.
    """
    if h.n == 0:
        return all(True for _ in ()) if g.n == 0 else g.n == 0
    active = sorted((v for v in range(g.n) if g.degree(v) > 0),
                    key=lambda v: -g.degree(v))
    if not active:
        return True
    if not h.edges and not h.loops:
        return False

    hadj = [[False] * h.n for _ in range(h.n)]
    for a, b in h.edges:
        hadj[a][b] = hadj[b][a] = True
    for v in h.loops:
        hadj[v][v] = True

    gadj = g.adjacency()
    pos = {v: i for i, v in enumerate(active)}
    assignment = [-1] * len(active)
    nodes = 0

    def backtrack(i: int) -> bool:
        nonlocal nodes
        if i == len(active):
            return True
        v = active[i]
        earlier = [u for u in gadj[v] if u in pos and pos[u] < i]
        for img in range(h.n):
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError("homomorphism search budget exceeded")
            if all(hadj[img][assignment[pos[u]]] for u in earlier):
                assignment[i] = img
                if backtrack(i + 1):
                    return True
                assignment[i] = -1
        return False

    return backtrack(0)


def hom_to_single_edge(g: Graph) -> bool:
    """Equivalent to is_homomorphic(g, K_2): a loopless graph maps to one
    edge exactly when it is bipartite."""
    if g.loops:
        raise ValueError("hom_to_single_edge needs a loopless graph")
    adj = g.adjacency()
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


# -- class-restricted subgraph enumeration ------------------------------------

def _cycle_edge_sets(n: int) -> list[frozenset]:
    out = []
    for size in range(3, n + 1):
        for verts in itertools.combinations(range(n), size):
            first, rest = verts[0], verts[1:]
            for p in itertools.permutations(rest):
                if p[0] > p[-1]:
                    continue
                cyc = (first,) + p
                out.append(frozenset(canonical_edge(cyc[i], cyc[(i + 1) % size])
                                     for i in range(size)))
    return out


def _clique_edge_sets(n: int) -> list[frozenset]:
    out = []
    for size in range(2, n + 1):
        for verts in itertools.combinations(range(n), size):
            out.append(frozenset(itertools.combinations(verts, 2)))
    return out


def _tree_edge_sets(n: int) -> list[frozenset]:
    # labeled trees on every vertex subset, via Pruefer sequences
    out = [frozenset([e]) for e in all_edges(n)]
    for size in range(3, n + 1):
        for verts in itertools.combinations(range(n), size):
            for seq in itertools.product(verts, repeat=size - 2):
                deg = {v: 1 for v in verts}
                for x in seq:
                    deg[x] += 1
                avail = sorted(v for v in verts if deg[v] == 1)
                es = []
                seq_list = list(seq)
                for x in seq_list:
                    leaf = avail.pop(0)
                    es.append(canonical_edge(leaf, x))
                    deg[x] -= 1
                    if deg[x] == 1:
                        import bisect
                        bisect.insort(avail, x)
                es.append(canonical_edge(avail[0], avail[1]))
                out.append(frozenset(es))
    return out


def _edge_mask(edges: frozenset, order: dict) -> int:
    m = 0
    for e in edges:
        m |= 1 << order[e]
    return m


def subset_in_class(n: int, es: list, cls: GraphClass, budget: int = 10 ** 6) -> bool:
    """Fast path for recognize on an explicit edge list.

    Equivalent to recognize(Graph.make(n, es), cls) for loopless subsets:
    the touched vertices must form one connected component with the class
    shape, everything else is isolated.
    """
    if not es:
        return False
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deg: dict[int, int] = {}
    for a, b in es:
        for x in (a, b):
            if x not in parent:
                parent[x] = x
            deg[x] = deg.get(x, 0) + 1
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    roots = {find(x) for x in parent}
    if len(roots) != 1:
        return False
    v, m = len(parent), len(es)
    if cls.kind == "cycle":
        return v >= 3 and m == v and all(d == 2 for d in deg.values())
    if cls.kind == "clique":
        return m == v * (v - 1) // 2
    if cls.kind == "tree":
        return m == v - 1
    comp = Graph.make(n, es).induced(sorted(parent))
    return _component_shape_ok(comp, cls, budget)


def enumerate_subgraphs(n: int, cls: GraphClass, visit,
                        budget: int = DEFAULT_ENUM_BUDGET) -> None:
    """Visit each edge subset of K_n in the class, exactly once.

    Subsets are visited in ascending-bitmask order over the canonical edge
    ordering so runs are reproducible.  Cycle, clique and tree classes use
    direct generators; the remaining classes filter every bitmask and are
    budget-guarded.
    """
    edges = all_edges(n)
    order = {e: i for i, e in enumerate(edges)}
    if cls.kind in ("cycle", "clique", "tree"):
        gen = {"cycle": _cycle_edge_sets, "clique": _clique_edge_sets,
               "tree": _tree_edge_sets}[cls.kind]
        subsets = gen(n)
        if len(subsets) > budget:
            raise BudgetExceededError(f"{len(subsets)} subsets exceed budget {budget}")
        for es in sorted(subsets, key=lambda s: _edge_mask(s, order)):
            visit(tuple(sorted(es)))
        return
    total = 1 << len(edges)
    if total > budget:
        raise BudgetExceededError(f"2^{len(edges)} masks exceed budget {budget}")
    for mask in range(1, total):
        es = [edges[k] for k in range(len(edges)) if mask >> k & 1]
        if subset_in_class(n, es, cls):
            visit(tuple(es))
