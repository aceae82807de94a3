"""Undirected weighted simple graphs with a fixed edge indexing.

Edges are identified by their position in the edge list; that index is the
edge id used everywhere else in the package (attack sets, score tables,
incidence rows). Orientation is normalized to u < v at construction and
never changes afterwards, so the signed incidence vector of an edge is
stable for the lifetime of the graph.
"""

from __future__ import annotations

import io
from collections import deque

import numpy as np
import scipy.sparse as sp

from .errors import GraphParseError, ValidationError


class Graph:
    """Immutable undirected weighted graph without self-loops or parallel edges.

    Parameters
    ----------
    n : int
        Number of nodes; node ids are 0..n-1.
    edges : iterable of (u, v) or (u, v, w)
        Edge list. Missing weights default to 1.0. Endpoints are reordered
        so u < v.
    labels : list of str, optional
        Original node labels (e.g. from a parsed file), index-aligned with
        node ids. Used when serializing.
    """

    __slots__ = ("n", "edge_u", "edge_v", "edge_w", "labels", "_adj")

    def __init__(self, n, edges, labels=None):
        if n < 0:
            raise ValidationError(f"negative node count {n}")
        us, vs, ws = [], [], []
        seen = set()
        for edge in edges:
            if len(edge) == 2:
                u, v = edge
                w = 1.0
            else:
                u, v, w = edge
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) out of node range [0,{n})")
            if u == v:
                raise ValidationError(f"self-loop at node {u}")
            if w <= 0.0 or not np.isfinite(w):
                raise ValidationError(f"edge ({u},{v}) has non-positive weight {w}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValidationError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            us.append(u)
            vs.append(v)
            ws.append(w)
        self.n = int(n)
        self.edge_u = np.asarray(us, dtype=np.int64)
        self.edge_v = np.asarray(vs, dtype=np.int64)
        self.edge_w = np.asarray(ws, dtype=np.float64)
        if labels is not None and len(labels) != n:
            raise ValidationError("labels length must equal node count")
        self.labels = list(labels) if labels is not None else None
        self._adj = None

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edge_w)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [
            (int(u), int(v), float(w))
            for u, v, w in zip(self.edge_u, self.edge_v, self.edge_w)
        ]

    def edge(self, e: int) -> tuple[int, int, float]:
        return int(self.edge_u[e]), int(self.edge_v[e]), float(self.edge_w[e])

    @property
    def adjacency(self) -> list[list[tuple[int, float, int]]]:
        """Per-node list of (neighbor, weight, edge_id), built lazily."""
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for e in range(self.m):
                u, v, w = int(self.edge_u[e]), int(self.edge_v[e]), float(self.edge_w[e])
                adj[u].append((v, w, e))
                adj[v].append((u, w, e))
            self._adj = adj
        return self._adj

    def degrees(self, weighted=False) -> np.ndarray:
        deg = np.zeros(self.n)
        vals = self.edge_w if weighted else np.ones(self.m)
        np.add.at(deg, self.edge_u, vals)
        np.add.at(deg, self.edge_v, vals)
        return deg

    @property
    def max_weight(self) -> float:
        return float(self.edge_w.max()) if self.m else 0.0

    @property
    def min_weight(self) -> float:
        return float(self.edge_w.min()) if self.m else 0.0

    # -- matrices ------------------------------------------------------

    def laplacian(self) -> sp.csr_matrix:
        """Weighted Laplacian as a sparse CSR matrix."""
        return build_laplacian(self)

    def incidence(self) -> sp.csr_matrix:
        """Signed incidence matrix, one row per edge: +1 at u, -1 at v."""
        rows = np.repeat(np.arange(self.m), 2)
        cols = np.empty(2 * self.m, dtype=np.int64)
        cols[0::2] = self.edge_u
        cols[1::2] = self.edge_v
        data = np.tile(np.array([1.0, -1.0]), self.m)
        return sp.csr_matrix((data, (rows, cols)), shape=(self.m, self.n))

    # -- derived graphs ------------------------------------------------

    def without_edges(self, edge_ids) -> "Graph":
        """New graph with the given edges removed; node set unchanged."""
        drop = np.zeros(self.m, dtype=bool)
        ids = np.asarray(list(edge_ids), dtype=np.int64)
        if ids.size:
            if ids.min() < 0 or ids.max() >= self.m:
                raise ValidationError("edge id out of range")
            drop[ids] = True
        return self.edge_subgraph(~drop)

    def edge_subgraph(self, keep_mask) -> "Graph":
        """New graph keeping edges where the boolean mask is True."""
        keep = np.asarray(keep_mask, dtype=bool)
        g = Graph.__new__(Graph)
        g.n = self.n
        g.edge_u = self.edge_u[keep].copy()
        g.edge_v = self.edge_v[keep].copy()
        g.edge_w = self.edge_w[keep].copy()
        g.labels = self.labels
        g._adj = None
        return g

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_laplacian(g: Graph) -> sp.csr_matrix:
    """Weighted Laplacian L = D - A of a graph, in sparse CSR form."""
    n, m = g.n, g.m
    if m == 0:
        return sp.csr_matrix((n, n))
    rows = np.concatenate([g.edge_u, g.edge_v, g.edge_u, g.edge_v])
    cols = np.concatenate([g.edge_v, g.edge_u, g.edge_u, g.edge_v])
    data = np.concatenate([-g.edge_w, -g.edge_w, g.edge_w, g.edge_w])
    lap = sp.csr_matrix((data, (rows, cols)), shape=(n, n))
    lap.sum_duplicates()
    return lap


def connected_components(g: Graph) -> list[list[int]]:
    """Partition of the node set into connected components (BFS).

    Components are listed in order of their smallest node; each component
    is a sorted node list. Isolated nodes form singleton components.
    """
    seen = np.zeros(g.n, dtype=bool)
    adj = g.adjacency
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, _, _ in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def component_labels(g: Graph) -> np.ndarray:
    """Integer component id per node, from connected_components order."""
    lab = np.empty(g.n, dtype=np.int64)
    for i, comp in enumerate(connected_components(g)):
        lab[comp] = i
    return lab


def parse_edge_list(text) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    Accepted line format is "u v" or "u v w"; lines starting with '#' or '%'
    are comments (SNAP / KONECT headers), blank lines are skipped. Node ids
    may be arbitrary tokens and are compacted to 0..n-1 in first-appearance
    order; the original tokens are kept as labels.

    Raises GraphParseError for malformed lines and ValidationError for
    self-loops, duplicate unordered pairs, or non-positive weights.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if isinstance(text, io.IOBase) or hasattr(text, "read"):
        text = text.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")

    ids: dict[str, int] = {}
    labels: list[str] = []
    edges = []
    seen_pairs = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise GraphParseError(
                f"expected 'u v [w]', got {len(tokens)} fields", line=lineno
            )
        tu, tv = tokens[0], tokens[1]
        if len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise GraphParseError(f"bad weight {tokens[2]!r}", line=lineno) from None
        else:
            w = 1.0
        if tu == tv:
            raise ValidationError(f"line {lineno}: self-loop at {tu!r}")
        if w <= 0.0 or not np.isfinite(w):
            raise ValidationError(f"line {lineno}: non-positive weight {w}")
        for tok in (tu, tv):
            if tok not in ids:
                ids[tok] = len(ids)
                labels.append(tok)
        u, v = ids[tu], ids[tv]
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            raise ValidationError(f"line {lineno}: duplicate edge {tu!r} {tv!r}")
        seen_pairs.add(pair)
        edges.append((u, v, w))
    return Graph(len(ids), edges, labels=labels)


def serialize_edge_list(g: Graph) -> str:
    """Inverse of parse_edge_list; uses node labels when present."""
    name = (lambda i: g.labels[i]) if g.labels is not None else str
    lines = [f"{name(int(u))} {name(int(v))} {w!r}" for u, v, w in g.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def load_edge_list(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_edge_list(fh)
