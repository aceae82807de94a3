"""Test graph generators. Deterministic given the passed rng."""

import numpy as np

from forestattack import Graph


def complete_graph(n, w=1.0):
    return Graph(n, [(i, j, w) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n):
    return Graph(n, [])


def path_graph(n, w=1.0):
    return Graph(n, [(i, i + 1, w) for i in range(n - 1)])


def ring_graph(n, w=1.0):
    return Graph(n, [(min(i, (i + 1) % n), max(i, (i + 1) % n), w) for i in range(n)])


def star_graph(leaves, w=1.0):
    return Graph(leaves + 1, [(0, i, w) for i in range(1, leaves + 1)])


def disturbed_ring(chord=(0, 2)):
    """9-node ring plus one chord."""
    edges = [(min(i, (i + 1) % 9), max(i, (i + 1) % 9), 1.0) for i in range(9)]
    edges.append((min(chord), max(chord), 1.0))
    return Graph(9, edges)


def fig_two_graph():
    """4-node graph with one pendant edge and a triangle fan."""
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])


def barbell_graph(c=6, bridge_w=2.0):
    """Two c-cliques joined by a single (heavier) bridge."""
    edges = [(i, j, 1.0) for i in range(c) for j in range(i + 1, c)]
    edges += [(c + i, c + j, 1.0) for i in range(c) for j in range(i + 1, c)]
    edges.append((c - 1, c, bridge_w))
    return Graph(2 * c, edges)


def random_connected_graph(rng, n, m, weighted=False):
    """Random spanning tree plus extra distinct edges; m >= n-1."""
    assert n - 1 <= m <= n * (n - 1) // 2
    pairs = []
    existing = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        existing.add((j, i))
        pairs.append((j, i))
    while len(pairs) < m:
        u, v = rng.integers(0, n, size=2)
        u, v = int(min(u, v)), int(max(u, v))
        if u == v or (u, v) in existing:
            continue
        existing.add((u, v))
        pairs.append((u, v))
    if weighted:
        ws = rng.uniform(0.5, 2.0, size=m)
    else:
        ws = np.ones(m)
    return Graph(n, [(u, v, float(w)) for (u, v), w in zip(pairs, ws)])


def random_graph(rng, n, m, weighted=False):
    """Possibly-disconnected: m distinct random pairs."""
    assert m <= n * (n - 1) // 2
    existing = set()
    pairs = []
    while len(pairs) < m:
        u, v = rng.integers(0, n, size=2)
        u, v = int(min(u, v)), int(max(u, v))
        if u == v or (u, v) in existing:
            continue
        existing.add((u, v))
        pairs.append((u, v))
    ws = rng.uniform(0.5, 2.0, size=m) if weighted else np.ones(m)
    return Graph(n, [(u, v, float(w)) for (u, v), w in zip(pairs, ws)])


def dominant_edge_graph(rng, n, m):
    """Random connected graph with a single planted pendant edge.

    All other nodes have degree >= 2, so isolating the pendant node gives a
    uniquely dominant deletion gain; useful when a test needs a stable exact
    argmax rather than a cloud of near-ties.
    """
    core = random_connected_graph(rng, n - 1, m - 1)
    edges = core.edges
    existing = {(u, v) for u, v, _ in edges}
    deg = core.degrees()
    for node in np.nonzero(deg == 1)[0]:
        while True:
            other = int(rng.integers(0, n - 1))
            pair = (min(node, other), max(node, other))
            if other != node and pair not in existing:
                existing.add(pair)
                edges.append((pair[0], pair[1], 1.0))
                break
    edges.append((int(rng.integers(0, n - 1)), n - 1, 1.0))
    return Graph(n, edges)


def ring_union_graph(rng, n, m):
    """Union of random Hamiltonian cycles topped up to exactly m edges.

    Near-regular degrees keep I+L well conditioned at large scale.
    """
    rings = max(1, m // n)
    existing = set()
    edges = []
    for _ in range(rings):
        perm = rng.permutation(n)
        for i in range(n):
            a, b = int(perm[i]), int(perm[(i + 1) % n])
            if a > b:
                a, b = b, a
            if a == b or (a, b) in existing:
                continue
            existing.add((a, b))
            edges.append((a, b))
    while len(edges) < m:
        u, v = rng.integers(0, n, size=2)
        a, b = int(min(u, v)), int(max(u, v))
        if a == b or (a, b) in existing:
            continue
        existing.add((a, b))
        edges.append((a, b))
    return Graph(n, [(a, b, 1.0) for a, b in edges[:m]])
