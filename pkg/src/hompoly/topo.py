"""Combinatorial embeddings: planarity, rotation systems, faces, genus, minors.

Only orientable embeddings are modeled.  A rotation system assigns each
vertex a cyclic order of its neighbors; tracing the face orbits of the
induced dart permutation gives the Euler genus via V - E + F = 2 - 2g.
Planarity itself is delegated to networkx's linear-time test; the rotation
search and the minor finder below are independent code paths, so the three
agree-or-fail cross checks in the test suite are meaningful.
"""

from __future__ import annotations

import itertools
from math import factorial

import networkx as nx

from .errors import BudgetExceededError
from .graphs import Graph, canonical_edge

DEFAULT_GENUS_BUDGET = 1_000_000
DEFAULT_MINOR_BUDGET = 2_000_000

RotationSystem = dict  # vertex -> tuple of neighbors in cyclic order


def _to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(_to_nx(g), counterexample=False)[0]


def is_outerplanar(g: Graph) -> bool:
    """Outerplanar iff the graph plus a universal apex vertex is planar."""
    h = _to_nx(g)
    apex = g.n
    for v in range(g.n):
        h.add_edge(apex, v)
    return nx.check_planarity(h, counterexample=False)[0]


def planar_rotation(g: Graph) -> RotationSystem:
    """A rotation system realizing a planar embedding (graph must be planar)."""
    ok, emb = nx.check_planarity(_to_nx(g))
    if not ok:
        raise ValueError("graph is not planar")
    return {v: tuple(emb.neighbors_cw_order(v)) for v in range(g.n) if g.degree(v)}


def validate_rotation(g: Graph, rot: RotationSystem) -> None:
    support = {v for v in range(g.n) if g.degree(v) > 0}
    if set(rot) != support:
        raise ValueError("rotation system must cover exactly the non-isolated vertices")
    for v, ring in rot.items():
        if sorted(ring) != g.neighbors(v):
            raise ValueError(f"rotation at {v} is not a permutation of its neighbors")


def trace_faces(g: Graph, rot: RotationSystem) -> int:
    """Number of face orbits of the next-dart permutation."""
    validate_rotation(g, rot)
    index = {}
    for v, ring in rot.items():
        for i, u in enumerate(ring):
            index[(v, u)] = i
    faces = 0
    seen = set()
    for u in rot:
        for v in rot[u]:
            d0 = (u, v)
            if d0 in seen:
                continue
            faces += 1
            d = d0
            while d not in seen:
                seen.add(d)
                du, dv = d
                ring = rot[dv]
                d = (dv, ring[(index[(dv, du)] + 1) % len(ring)])
    return faces


def genus_of_rotation(g: Graph, rot: RotationSystem) -> int:
    """Euler genus of the embedding determined by rot; g must be connected."""
    if not g.is_connected():
        raise ValueError("face tracing needs a connected graph")
    V = g.n
    E = len(g.edges)
    F = trace_faces(g, rot)
    chi = V - E + F
    if chi % 2 != 0:
        raise AssertionError(f"odd Euler characteristic {chi} from V={V} E={E} F={F}")
    genus = (2 - chi) // 2
    if genus < 0:
        raise AssertionError(f"negative genus from V={V} E={E} F={F}")
    return genus


def _rotation_choices(g: Graph):
    """Per-vertex cyclic-order representatives.

    Cyclic rotations are quotiented by pinning the first neighbor; the global
    reflection symmetry is quotiented at the first vertex of degree >= 3.
    """
    choices = []
    reflection_done = False
    for v in range(g.n):
        ns = g.neighbors(v)
        if not ns:
            continue
        if len(ns) <= 2:
            choices.append((v, [tuple(ns)]))
            continue
        perms = [(ns[0],) + p for p in itertools.permutations(ns[1:])]
        if not reflection_done:
            perms = [p for p in perms if p[1] < p[-1]]
            reflection_done = True
        choices.append((v, perms))
    return choices


def rotation_search_space(g: Graph) -> int:
    total = 1
    for _, perms in _rotation_choices(g):
        total *= len(perms)
    return total


def min_genus(g: Graph, budget: int = DEFAULT_GENUS_BUDGET) -> int:
    """Exact minimum genus by exhaustive rotation-system search.

    Search stops early on genus 0.  Raises BudgetExceededError when the
    quotiented search space is larger than budget.
    """
    if not g.is_connected():
        raise ValueError("min_genus needs a connected graph")
    if not g.edges:
        return 0
    choices = _rotation_choices(g)
    space = rotation_search_space(g)
    if space > budget:
        raise BudgetExceededError(f"rotation space {space} exceeds budget {budget}")
    verts = [v for v, _ in choices]
    best = None
    for combo in itertools.product(*(perms for _, perms in choices)):
        rot = dict(zip(verts, combo))
        genus = genus_of_rotation(g, rot)
        if best is None or genus < best:
            best = genus
            if best == 0:
                break
    return best


def min_genus_rotation(g: Graph, budget: int = DEFAULT_GENUS_BUDGET):
    """(genus, rotation) pair attaining the minimum, same search as min_genus."""
    if not g.is_connected():
        raise ValueError("min_genus needs a connected graph")
    choices = _rotation_choices(g)
    if rotation_search_space(g) > budget:
        raise BudgetExceededError("rotation space exceeds budget")
    verts = [v for v, _ in choices]
    best = None
    best_rot = None
    for combo in itertools.product(*(perms for _, perms in choices)):
        rot = dict(zip(verts, combo))
        genus = genus_of_rotation(g, rot)
        if best is None or genus < best:
            best, best_rot = genus, rot
            if best == 0:
                break
    return best, best_rot


# -- minor search -------------------------------------------------------------

K5 = Graph.complete(5)
K33 = Graph.complete_bipartite(3, 3)
K4 = Graph.complete(4)
K23 = Graph.complete_bipartite(2, 3)


def contains_subgraph(g_adj: dict, h: Graph):
    """Injective map of h's vertices into keys of g_adj preserving h's edges."""
    hverts = sorted(range(h.n), key=lambda v: -h.degree(v))
    gverts = list(g_adj)
    assignment: dict[int, object] = {}
    used: set = set()

    def backtrack(i):
        if i == len(hverts):
            return dict(assignment)
        v = hverts[i]
        need = [assignment[u] for u in h.neighbors(v) if u in assignment]
        for img in gverts:
            if img in used:
                continue
            if all(x in g_adj[img] for x in need):
                assignment[v] = img
                used.add(img)
            else:
                continue
            result = backtrack(i + 1)
            if result is not None:
                return result
            del assignment[v]
            used.discard(img)
        return None

    return backtrack(0)


def find_minor(g: Graph, target: Graph, budget: int = DEFAULT_MINOR_BUDGET):
    """Branch sets witnessing target as a minor of g, or None.

    Searches contraction sequences down to |V(target)| vertices, testing
    subgraph containment at every level; states are memoized on adjacency
    structure.  Found witnesses are re-validated before returning.
    """
    base_adj: dict[frozenset, set] = {frozenset([v]): set() for v in range(g.n)}
    key = {frozenset([v]): v for v in range(g.n)}
    for a, b in g.edges:
        base_adj[frozenset([a])].add(frozenset([b]))
        base_adj[frozenset([b])].add(frozenset([a]))

    seen = set()
    work = 0

    def canon(adj):
        return frozenset((bs, frozenset(ns)) for bs, ns in adj.items())

    def search(adj):
        nonlocal work
        work += 1
        if work > budget:
            raise BudgetExceededError("minor search budget exceeded")
        ck = canon(adj)
        if ck in seen:
            return None
        seen.add(ck)
        if len(adj) >= target.n:
            hit = contains_subgraph(adj, target)
            if hit is not None:
                return [set(hit[v]) for v in range(target.n)]
        if len(adj) <= target.n:
            return None
        branches = sorted(adj, key=sorted)
        for bs in branches:
            for nb in sorted(adj[bs], key=sorted):
                if sorted(nb) < sorted(bs):
                    continue
                merged = bs | nb
                new_adj = {}
                for x, ns in adj.items():
                    if x in (bs, nb):
                        continue
                    new_ns = set()
                    for y in ns:
                        new_ns.add(merged if y in (bs, nb) else y)
                    new_adj[x] = new_ns
                new_adj[merged] = {x for x in (adj[bs] | adj[nb]) if x not in (bs, nb)}
                result = search(new_adj)
                if result is not None:
                    return result
        return None

    witness = search(base_adj)
    if witness is None:
        return None
    _validate_branch_sets(g, target, witness)
    return witness


def _validate_branch_sets(g: Graph, target: Graph, sets) -> None:
    flat = [v for s in sets for v in s]
    if len(flat) != len(set(flat)):
        raise AssertionError("branch sets overlap")
    for s in sets:
        if not g.induced(s).is_connected():
            raise AssertionError(f"branch set {sorted(s)} is not connected")
    for a, b in target.edges:
        if not any(g.has_edge(u, w) for u in sets[a] for w in sets[b]):
            raise AssertionError(f"no edge between branch sets {a} and {b}")


def find_k33_or_k5_minor(g: Graph, budget: int = DEFAULT_MINOR_BUDGET):
    """Kuratowski-style witness: ("k5"|"k33", branch sets) or None."""
    w = find_minor(g, K5, budget=budget)
    if w is not None:
        return ("k5", w)
    w = find_minor(g, K33, budget=budget)
    if w is not None:
        return ("k33", w)
    return None


# -- JSON ----------------------------------------------------------------------

def rotation_to_json_obj(rot: RotationSystem) -> dict:
    return {str(v): list(ring) for v, ring in sorted(rot.items())}


def rotation_from_json_obj(obj: dict) -> RotationSystem:
    return {int(v): tuple(ring) for v, ring in obj.items()}
