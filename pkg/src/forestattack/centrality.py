"""Edge group centrality and the baseline edge-importance scores.

The group centrality of an edge set S is the increase of the forest index
when S is deleted. It is monotone in S but not submodular, so marginal
gains can grow as the attack proceeds; rankings must be recomputed, never
cached across deletions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import forest
from .errors import ValidationError
from .graph import Graph

# Above this set size a fresh factorization beats chained rank-1 updates.
_SM_CHAIN_LIMIT = 3


@dataclass
class EdgeScoreTable:
    """Per-edge scores for one strategy, aligned with graph edge ids."""

    strategy: str
    scores: np.ndarray

    def top_k(self, k: int) -> list[int]:
        """Ids of the k best-scoring edges; ties go to the lower edge id."""
        order = np.lexsort((np.arange(self.scores.size), -self.scores))
        return [int(e) for e in order[:k]]


def _check_edge_set(g, edge_ids):
    ids = [int(e) for e in edge_ids]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate edge ids in attack set")
    for e in ids:
        if not 0 <= e < g.m:
            raise ValidationError(f"edge id {e} out of range [0,{g.m})")
    return ids


def fegc(g: Graph, edge_ids, dense_limit: int = forest.DEFAULT_DENSE_LIMIT) -> float:
    """Forest edge group centrality of an edge set: rho(G - S) - rho(G).

    Order of the set does not matter. Small sets are evaluated by chained
    rank-1 updates; larger ones by refactorizing the reduced graph once.
    """
    ids = _check_edge_set(g, edge_ids)
    if not ids:
        return 0.0
    fs = forest.compute_forest_state(g, dense_limit)
    before = forest.forest_index(fs)
    if len(ids) <= _SM_CHAIN_LIMIT:
        for e in ids:
            fs = forest.delete_edge_update(fs, e)
        return forest.forest_index(fs) - before
    reduced = forest.compute_forest_state(g.without_edges(ids), dense_limit)
    return forest.forest_index(reduced) - before


def edge_betweenness(g: Graph) -> EdgeScoreTable:
    """Shortest-path betweenness of every edge (Brandes, unweighted hops).

    Counts ordered node pairs (s, t), s != t, with fractional splitting
    among equal-length shortest paths; edge weights are ignored for path
    lengths. Disconnected pairs contribute nothing.
    """
    adj = g.adjacency
    scores = np.zeros(g.m)
    for s in range(g.n):
        # BFS from s with path counting
        dist = np.full(g.n, -1, dtype=np.int64)
        sigma = np.zeros(g.n)
        preds: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        dist[s] = 0
        sigma[s] = 1.0
        order = [s]
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            dx = dist[x]
            for y, _, eid in adj[x]:
                if dist[y] < 0:
                    dist[y] = dx + 1
                    order.append(y)
                if dist[y] == dx + 1:
                    sigma[y] += sigma[x]
                    preds[y].append((x, eid))
        # dependency accumulation in reverse BFS order
        delta = np.zeros(g.n)
        for x in reversed(order):
            coeff = (1.0 + delta[x]) / sigma[x]
            for p, eid in preds[x]:
                c = sigma[p] * coeff
                scores[eid] += c
                delta[p] += c
    return EdgeScoreTable("betweenness", scores)


def degree_scores(g: Graph, mode: str = "product") -> EdgeScoreTable:
    """Endpoint-degree scores: deg(u)*deg(v) or deg(u)+deg(v), unweighted."""
    deg = g.degrees(weighted=False)
    du, dv = deg[g.edge_u], deg[g.edge_v]
    if mode == "product":
        scores = du * dv
    elif mode == "sum":
        scores = du + dv
    else:
        raise ValueError(f"mode must be 'product' or 'sum', got {mode!r}")
    return EdgeScoreTable(f"deg{mode}", scores)


def top_k_fegc(
    g: Graph,
    k: int,
    scorer: str = "exact",
    *,
    epsilon: float = 0.3,
    seed: int = 0,
    cfg=None,
    sketch_dim="auto",
    dense_limit: int = forest.DEFAULT_DENSE_LIMIT,
) -> list[int]:
    """One-shot top-k edges by single-deletion gain on the original graph.

    No rescoring between picks, unlike the greedy attacks. The sketch
    scorer estimates the same gains without the dense matrix.
    """
    if not 0 <= k <= g.m:
        raise ValidationError(f"k={k} out of range [0,{g.m}]")
    if scorer == "exact":
        fs = forest.compute_forest_state(g, dense_limit)
        ids, gains = forest.all_edge_gains(fs)
        scores = np.full(g.m, -np.inf)
        scores[ids] = gains
    elif scorer == "sketch":
        from . import sketch

        sk = sketch.build_sketches(g, epsilon, seed, cfg=cfg, mode=sketch_dim)
        scores = sketch.approx_gains(sk)
        scores = np.where(np.isnan(scores), -np.inf, scores)
    else:
        raise ValueError(f"scorer must be 'exact' or 'sketch', got {scorer!r}")
    return EdgeScoreTable(f"topfegc-{scorer}", scores).top_k(k)


def random_attack(g: Graph, k: int, seed: int) -> list[int]:
    """k distinct edges drawn uniformly; deterministic for a given seed."""
    if not 0 <= k <= g.m:
        raise ValidationError(f"k={k} out of range [0,{g.m}]")
    rng = np.random.default_rng(seed)
    return [int(e) for e in rng.choice(g.m, size=k, replace=False)]


def rank_attack(g: Graph, k: int, strategy: str) -> list[int]:
    """Iterative baseline: rescore the surviving graph, delete the top edge.

    strategy is one of 'betweenness', 'degprod', 'degsum'. Ties go to the
    lowest original edge id.
    """
    if not 0 <= k <= g.m:
        raise ValidationError(f"k={k} out of range [0,{g.m}]")
    scorers = {
        "betweenness": edge_betweenness,
        "degprod": lambda h: degree_scores(h, "product"),
        "degsum": lambda h: degree_scores(h, "sum"),
    }
    if strategy not in scorers:
        raise ValueError(f"unknown rank strategy {strategy!r}")
    scorer = scorers[strategy]
    alive = np.ones(g.m, dtype=bool)
    picks: list[int] = []
    for _ in range(k):
        sub = g.edge_subgraph(alive)
        alive_ids = np.nonzero(alive)[0]
        local = scorer(sub).top_k(1)[0]
        e = int(alive_ids[local])
        picks.append(e)
        alive[e] = False
    return picks
