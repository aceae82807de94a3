"""Brute-force references: exhaustive optimum, naive index, path-enumeration
betweenness. Deliberately dumb and independent of the fast paths so they can
serve as test oracles; no rank-1 updates, no Brandes, no pruning."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import BudgetExceededError, CapacityError, ValidationError
from .graph import Graph

DEFAULT_SUBSET_BUDGET = 2_000_000


def _naive_trace_inv(g: Graph, drop=()) -> float:
    """tr((I+L)^-1) of the graph minus an edge set, by plain dense inversion."""
    a = np.eye(g.n)
    dropset = set(drop)
    for e in range(g.m):
        if e in dropset:
            continue
        u, v, w = int(g.edge_u[e]), int(g.edge_v[e]), float(g.edge_w[e])
        a[u, u] += w
        a[v, v] += w
        a[u, v] -= w
        a[v, u] -= w
    return float(np.trace(np.linalg.inv(a)))


def naive_forest_index(g: Graph) -> float:
    """Forest index by explicit pairwise summation of forest distances.

    Cross-checks the n*tr - n identity; limited to n <= 500 since it forms
    the full inverse and iterates all pairs.
    """
    if g.n > 500:
        raise CapacityError(f"naive_forest_index is O(n^3) dense; n={g.n} > 500")
    a = np.eye(g.n)
    for u, v, w in g.edges:
        a[u, u] += w
        a[v, v] += w
        a[u, v] -= w
        a[v, u] -= w
    omega = np.linalg.inv(a)
    d = np.diag(omega)
    total = 0.0
    for i in range(g.n):
        for j in range(i + 1, g.n):
            total += d[i] + d[j] - 2.0 * omega[i, j]
    return total


def naive_single_edge_gains(g: Graph) -> np.ndarray:
    """Deletion gain of each edge by full recomputation per edge."""
    base = _naive_trace_inv(g)
    gains = np.empty(g.m)
    for e in range(g.m):
        gains[e] = g.n * (_naive_trace_inv(g, drop=(e,)) - base)
    return gains


def optimum_attack(
    g: Graph, k: int, budget: int = DEFAULT_SUBSET_BUDGET
) -> tuple[list[int], float]:
    """Best k-edge deletion set by exhaustive enumeration.

    Every subset is evaluated with a fresh dense inversion. Ties go to the
    lexicographically smallest index tuple. Raises BudgetExceededError when
    C(m, k) exceeds the budget.
    """
    if not 0 <= k <= g.m:
        raise ValidationError(f"k={k} out of range [0,{g.m}]")
    count = math.comb(g.m, k)
    if count > budget:
        raise BudgetExceededError(required=count, budget=budget)
    base = _naive_trace_inv(g)
    best = None
    best_val = -np.inf
    for subset in itertools.combinations(range(g.m), k):
        val = g.n * (_naive_trace_inv(g, drop=subset) - base)
        if val > best_val:
            best, best_val = subset, val
    return list(best), float(best_val)


def exhaustive_edge_betweenness(g: Graph) -> np.ndarray:
    """Edge betweenness by enumerating every simple path of every node pair.

    Ordered-pair convention with fractional splitting over equal-length
    shortest paths, matching centrality.edge_betweenness; usable for n <= 8.
    """
    if g.n > 8:
        raise CapacityError(f"path enumeration is factorial; n={g.n} > 8")
    adj = g.adjacency
    scores = np.zeros(g.m)

    def all_paths(s, t):
        paths = []
        stack = [(s, [s], [])]
        while stack:
            x, nodes, eids = stack.pop()
            if x == t:
                paths.append(eids)
                continue
            for y, _, eid in adj[x]:
                if y not in nodes:
                    stack.append((y, nodes + [y], eids + [eid]))
        return paths

    for s in range(g.n):
        for t in range(s + 1, g.n):
            paths = all_paths(s, t)
            if not paths:
                continue
            shortest = min(len(p) for p in paths)
            mins = [p for p in paths if len(p) == shortest]
            # each ordered pair (s,t) and (t,s) contributes 1/|mins| per path edge
            share = 2.0 / len(mins)
            for p in mins:
                for eid in p:
                    scores[eid] += share
    return scores
