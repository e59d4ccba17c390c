"""Shared brute-force oracles, deliberately independent of the library paths.

Homomorphism checks here try every vertex map; class membership is decided
with networkx primitives; subsets are enumerated by raw bitmask.  Tests
compare library output against these.
"""

from __future__ import annotations

import itertools

import networkx as nx

from hompoly import Graph


def brute_is_homomorphic(g: Graph, h: Graph) -> bool:
    """Try all |V(h)|^|V(g)| maps."""
    if g.n == 0:
        return True
    if h.n == 0:
        return False
    hadj = {(a, b) for a, b in h.edges} | {(b, a) for a, b in h.edges}
    hadj |= {(v, v) for v in h.loops}
    for img in itertools.product(range(h.n), repeat=g.n):
        if all((img[u], img[v]) in hadj for u, v in g.edges):
            return True
    return False


def to_nx(n: int, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def nx_one_nontrivial_component(n: int, edges) -> bool:
    g = to_nx(n, edges)
    comps = [c for c in nx.connected_components(g) if len(c) > 1]
    return len(comps) == 1


def nx_outerplanar(n: int, edges) -> bool:
    g = to_nx(n, edges)
    apex = n
    for v in range(n):
        g.add_edge(apex, v)
    return nx.check_planarity(g, counterexample=False)[0]


def nx_in_class(n: int, edges, kind: str, genus_k: int | None = None) -> bool:
    """One nontrivial component with the given shape, via networkx."""
    if not edges or not nx_one_nontrivial_component(n, edges):
        return False
    g = to_nx(n, edges)
    comp = next(c for c in nx.connected_components(g) if len(c) > 1)
    sub = g.subgraph(comp)
    v, m = sub.number_of_nodes(), sub.number_of_edges()
    if kind == "cycle":
        return v >= 3 and all(d == 2 for _, d in sub.degree())
    if kind == "clique":
        return m == v * (v - 1) // 2
    if kind == "tree":
        return nx.is_tree(sub)
    if kind == "outerplanar":
        relabeled = nx.convert_node_labels_to_integers(sub)
        return nx_outerplanar(relabeled.number_of_nodes(), relabeled.edges())
    if kind == "planar":
        return nx.check_planarity(sub, counterexample=False)[0]
    if kind == "genus":
        if genus_k == 0:
            return nx.check_planarity(sub, counterexample=False)[0]
        if genus_k == 1:
            # on at most five vertices the only nonplanar graph is the full
            # 5-clique, whose genus is one
            return v == 5 and m == 10
        raise ValueError("brute genus only supports k in {0,1} at this size")
    raise ValueError(kind)


def brute_class_subsets(n: int, kind: str, genus_k: int | None = None):
    """All class edge subsets of K_n by raw bitmask filtering."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for mask in range(1, 1 << len(edges)):
        es = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        if nx_in_class(n, es, kind, genus_k):
            out.append(frozenset(es))
    return out


def brute_perfect_matchings(g: Graph):
    """Perfect matchings by filtering all edge subsets of size n/2."""
    if g.n % 2:
        return set()
    out = set()
    for combo in itertools.combinations(sorted(g.edges), g.n // 2):
        verts = [v for e in combo for v in e]
        if len(set(verts)) == g.n:
            out.add(frozenset(combo))
    return out


def brute_hamiltonian_cycles(n: int):
    out = set()
    for p in itertools.permutations(range(1, n)):
        cyc = (0,) + p
        out.add(frozenset(tuple(sorted((cyc[i], cyc[(i + 1) % n])))
                          for i in range(n)))
    return out


def poly_term_edge_sets(p):
    """The edge-variable support of each monomial, as frozensets of pairs."""
    out = []
    for m, c in p.terms():
        out.append((frozenset((v[1], v[2]) for v, _ in m if v[0] == 'e'), c))
    return out
