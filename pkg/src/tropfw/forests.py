"""Inverse weights: realize a prescribed bounded cell as the Fermat-Weber set.

A spanning forest of the cell's covector graph yields weights via
lambda(e) = 1/(n * deg r(e)), w_i = sum of lambda over edges at left node
i.  Every constructed weight vector is verified with the forward solver;
if the deterministic forest fails, all alternative spanning forests are
tried before giving up.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import networkx as nx

from .covector import CovectorGraph
from .errors import InfeasibleError, ValidationError
from .fw import FermatWeberResult, solve_fw
from .points import DataSet, WeightVector


@dataclass(frozen=True)
class SpanningForest:
    """A maximal forest of a covector graph, same component partition.

    Nodes are numbered left 0..m-1 then right m..m+n-1.
    """

    m: int
    n: int
    edges: frozenset  # subset of the parent graph's (i, j) edges
    component_map: tuple  # node -> component id

    def __post_init__(self):
        ncomp = len(set(self.component_map))
        if len(self.edges) != self.m + self.n - ncomp:
            raise ValidationError("edge count does not match a maximal forest")

    def right_degree(self, j: int) -> int:
        return sum(1 for (_, b) in self.edges if b == j)


def _components(m: int, n: int, edges) -> tuple:
    parent = list(range(m + n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (i, j) in edges:
        ra, rb = find(i), find(m + j)
        if ra != rb:
            parent[ra] = rb
    roots = {}
    comp = []
    for a in range(m + n):
        r = find(a)
        comp.append(roots.setdefault(r, len(roots)))
    return tuple(comp)


def spanning_forest(G: CovectorGraph) -> SpanningForest:
    """Deterministic maximal spanning forest: BFS from the lowest-indexed
    unvisited node, scanning edges in lexicographic order."""
    m, n = G.m, G.n
    adj = {a: [] for a in range(m + n)}
    for (i, j) in sorted(G.edges):
        adj[i].append((m + j, (i, j)))
        adj[m + j].append((i, (i, j)))
    for a in adj:
        adj[a].sort()
    visited = [False] * (m + n)
    forest = set()
    for start in range(m + n):
        if visited[start]:
            continue
        visited[start] = True
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b, e in adj[a]:
                if not visited[b]:
                    visited[b] = True
                    forest.add(e)
                    queue.append(b)
    return SpanningForest(m, n, frozenset(forest), _components(m, n, G.edges))


def weights_from_forest(F: SpanningForest, n: int) -> WeightVector:
    """Eqs: lambda(e) = 1/(n * deg_F r(e)); w_i = sum over e with l(e) = i.

    Requires a forest spanning all left and right nodes, so every lambda
    is defined and every w_i is positive.
    """
    if n != F.n:
        raise ValidationError("dimension mismatch with forest")
    degs = [F.right_degree(j) for j in range(F.n)]
    if any(d == 0 for d in degs):
        raise ValidationError("forest does not span all right nodes")
    w = [Fraction(0)] * F.m
    for (i, j) in F.edges:
        w[i] += Fraction(1, n * degs[j])
    if any(x == 0 for x in w):
        raise ValidationError("forest does not span all left nodes")
    return WeightVector(tuple(w))


def edge_weights(F: SpanningForest, n: int) -> dict:
    """The per-edge masses lambda(e); a transportation plan on the forest."""
    degs = [F.right_degree(j) for j in range(F.n)]
    return {(i, j): Fraction(1, n * degs[j]) for (i, j) in F.edges}


def _all_spanning_forests(G: CovectorGraph):
    """All maximal forests of G with G's component partition, one component
    at a time; deterministic order."""
    m = G.m
    graph = nx.Graph()
    graph.add_nodes_from(range(m + G.n))
    for (i, j) in sorted(G.edges):
        graph.add_edge(i, m + j)
    comps = [sorted(c) for c in nx.connected_components(graph)]
    comps.sort()
    per_comp = []
    for nodes in comps:
        sub = graph.subgraph(nodes)
        if sub.number_of_edges() == 0:
            per_comp.append([frozenset()])
            continue
        trees = []
        for t in nx.SpanningTreeIterator(sub):
            trees.append(
                frozenset(
                    (min(a, b), max(a, b) - m) for a, b in t.edges()
                )
            )
        per_comp.append(trees)
    comp_map = _components(m, G.n, G.edges)
    for combo in product(*per_comp):
        yield SpanningForest(m, G.n, frozenset().union(*combo), comp_map)


def realize_cell(V: DataSet, G: CovectorGraph):
    """Weights making G's cell the full Fermat-Weber set, verified forward.

    Returns (weights, forward result).  Tries the deterministic forest
    first, then every alternative spanning forest.
    """
    tried = set()
    attempts = 0
    first = spanning_forest(G)

    def _try(F):
        nonlocal attempts
        if F.edges in tried:
            return None
        tried.add(F.edges)
        attempts += 1
        w = weights_from_forest(F, V.n)
        res = solve_fw(V, w)
        if res.cell.graph == G:
            return w, res
        return None

    out = _try(first)
    if out is not None:
        return out
    for F in _all_spanning_forests(G):
        out = _try(F)
        if out is not None:
            return out
    raise InfeasibleError(
        f"no spanning forest of {sorted(G.edges)} realizes the cell "
        f"({attempts} forests tried); the graph is likely not a bounded "
        f"cell of this data set"
    )
