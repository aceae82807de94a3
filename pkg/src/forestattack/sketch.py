"""Sketch-based gain estimation without forming the dense forest matrix.

Two quantities per edge drive the deletion gain: ||Omega b_e||^2 and
||W^(1/2) B Omega b_e||^2 (their sum is the pair distance rho_e). Both are
l2 norms, so random sign projections preserve them; each projected row
requires one solve against I + L, which is symmetric, diagonally dominant
and positive definite, so preconditioned conjugate gradients converge fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg

from .errors import CapacityError, SolverConvergenceError, DegeneracyError
from .graph import Graph

# Estimated gains with a denominator at or below this are unusable: the
# sketch noise pushed the estimated pair distance past 1/w_e.
GAIN_DENOM_EPS = 1e-9

# Hard cap on practical sketch dimensions.
MAX_PRACTICAL_DIM = 2000

# Refuse to materialize sketches beyond this many matrix entries.
_SKETCH_ENTRY_LIMIT = 500_000_000


@dataclass(frozen=True)
class SolverConfig:
    """Stopping rule and preconditioning for the I+L solver."""

    rel_tolerance: float = 1e-8
    max_iterations: int = 1000
    preconditioner: str = "diagonal"  # none | diagonal | incomplete-factor

    def __post_init__(self):
        if not 0.0 < self.rel_tolerance < 1.0:
            raise ValueError("rel_tolerance must be in (0, 1)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.preconditioner not in ("none", "diagonal", "incomplete-factor"):
            raise ValueError(f"unknown preconditioner {self.preconditioner!r}")


class SketchState:
    """Projected solve results for one graph snapshot.

    xtil (p x n) sketches the edge-space quantity W^(1/2) B Omega, ytil
    (p x n) sketches Omega itself. Immutable after construction; gain reads
    are pure.
    """

    __slots__ = ("graph", "p", "epsilon", "seed", "xtil", "ytil", "config",
                 "distribution", "mode")

    def __init__(self, graph, p, epsilon, seed, xtil, ytil, config,
                 distribution, mode):
        self.graph = graph
        self.p = p
        self.epsilon = epsilon
        self.seed = seed
        self.xtil = xtil
        self.ytil = ytil
        self.config = config
        self.distribution = distribution
        self.mode = mode


def sketch_dimension(n: int, m: int, epsilon: float, mode="auto") -> int:
    """Number of projection rows.

    "auto" uses ceil(4*log2(n)/eps^2) capped at min(m, n, 2000) -- beyond the
    ambient dimensions a projection is pointless. "theory" evaluates the
    worst-case union-bound formula ceil(24*ln(n)/(eps/12)^2), which exceeds n
    for every practical eps and exists for auditing. An integer selects the
    dimension directly.
    """
    if isinstance(mode, (int, np.integer)) and not isinstance(mode, bool):
        if mode < 1:
            raise ValueError(f"sketch dimension must be >= 1, got {mode}")
        return int(mode)
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must be in (0, 1/2), got {epsilon}")
    if mode == "theory":
        return math.ceil(24.0 * math.log(max(n, 2)) / (epsilon / 12.0) ** 2)
    if mode == "auto":
        raw = math.ceil(4.0 * math.log2(max(n, 2)) / epsilon**2)
        cap = min(m if m > 0 else n, n, MAX_PRACTICAL_DIM)
        return max(1, min(raw, cap))
    raise ValueError(f"mode must be 'auto', 'theory' or an int, got {mode!r}")


def random_sign_matrix(rng, p: int, dim: int) -> np.ndarray:
    """p x dim matrix with entries exactly +-1/sqrt(p)."""
    signs = rng.integers(0, 2, size=(p, dim)).astype(np.float64)
    signs *= 2.0
    signs -= 1.0
    signs /= math.sqrt(p)
    return signs


def _preconditioner_apply(a, kind):
    """Returns apply(r, out) writing M^-1 r into out (or aliasing r)."""
    if kind == "none":
        return lambda r, out: r
    if kind == "diagonal":
        inv_diag_col = (1.0 / a.diagonal())[:, None]

        def apply_diag(r, out):
            return np.multiply(inv_diag_col, r, out=out)

        return apply_diag
    ilu = scipy.sparse.linalg.spilu(sp.csc_matrix(a))

    def apply_ilu(r, out):
        out[:] = ilu.solve(r)
        return out

    return apply_ilu


def _solve_block_chunk(a, rhs, cfg, apply_m):
    """PCG on one block of right-hand sides, sharing matrix products.

    Per-column alpha/beta recurrences run in lockstep; temporaries are
    reused across iterations so the hot loop allocates only the sparse
    matmat output. Returns x with every column meeting the true relative
    residual ||A x - b|| <= rel_tolerance * ||b||, else raises.
    """
    b_sq = np.einsum("ij,ij->j", rhs, rhs)
    targets_sq = cfg.rel_tolerance**2 * np.where(b_sq > 0.0, b_sq, 1.0)

    x = np.zeros_like(rhs)
    tmp = np.empty_like(rhs)
    zbuf = np.empty_like(rhs)
    iterations_left = cfg.max_iterations
    # outer restart loop guards against recurrence drift
    for restart in range(3):
        r = rhs.copy() if restart == 0 else rhs - a @ x
        if (np.einsum("ij,ij->j", r, r) <= targets_sq).all():
            return x
        if iterations_left <= 0:
            break
        z = apply_m(r, zbuf)
        p_dir = z.copy()
        rz = np.einsum("ij,ij->j", r, z)
        while iterations_left > 0:
            iterations_left -= 1
            ap = a @ p_dir
            pap = np.einsum("ij,ij->j", p_dir, ap)
            alpha = np.divide(rz, pap, out=np.zeros_like(rz), where=pap > 0.0)
            np.multiply(p_dir, alpha, out=tmp)
            x += tmp
            np.multiply(ap, alpha, out=tmp)
            r -= tmp
            if (np.einsum("ij,ij->j", r, r) <= targets_sq).all():
                break
            z = apply_m(r, zbuf)
            rz_new = np.einsum("ij,ij->j", r, z)
            beta = np.divide(rz_new, rz, out=np.zeros_like(rz), where=rz > 0.0)
            np.multiply(p_dir, beta, out=p_dir)
            p_dir += z
            rz = rz_new
    res_sq = np.einsum("ij,ij->j", rhs - a @ x, rhs - a @ x)
    if (res_sq <= targets_sq).all():
        return x
    worst = float(np.sqrt((res_sq / np.where(b_sq > 0.0, b_sq, 1.0)).max()))
    raise SolverConvergenceError(residual=worst, iterations=cfg.max_iterations)


def _solve_block(a, rhs, cfg: SolverConfig, col_chunk: int = 256) -> np.ndarray:
    """Solve A x = rhs column-block-wise; see _solve_block_chunk."""
    apply_m = _preconditioner_apply(a, cfg.preconditioner)
    n, q = rhs.shape
    if q <= col_chunk:
        return _solve_block_chunk(a, rhs, cfg, apply_m)
    out = np.empty_like(rhs)
    for lo in range(0, q, col_chunk):
        block = np.ascontiguousarray(rhs[:, lo : lo + col_chunk])
        out[:, lo : lo + col_chunk] = _solve_block_chunk(a, block, cfg, apply_m)
    return out


def sddm_solve(a, b, cfg: SolverConfig | None = None) -> np.ndarray:
    """Solve (I + L) y = b by preconditioned conjugate gradients.

    The returned y satisfies ||(I+L) y - b|| <= rel_tolerance * ||b||;
    SolverConvergenceError otherwise.
    """
    cfg = cfg or SolverConfig()
    b = np.asarray(b, dtype=np.float64)
    return _solve_block(a, b.reshape(-1, 1), cfg)[:, 0]


def _i_plus_l(g: Graph):
    return (g.laplacian() + sp.identity(g.n, format="csr")).tocsr()


def build_sketches(
    g: Graph,
    epsilon: float,
    seed: int,
    cfg: SolverConfig | None = None,
    mode="auto",
    distribution: str = "rademacher",
) -> SketchState:
    """Project, then solve: the full per-snapshot sketching pass.

    Draws sign matrices P (p x n) and Q (p x m) from the seeded generator,
    forms Q W^(1/2) B by sparse products, and solves one block system
    against I + L for all 2p right-hand sides.
    """
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must be in (0, 1/2), got {epsilon}")
    if g.n == 0:
        raise ValueError("empty node set")
    cfg = cfg or SolverConfig()
    p = sketch_dimension(g.n, g.m, epsilon, mode)
    if p * (g.n + g.m) > _SKETCH_ENTRY_LIMIT:
        raise CapacityError(
            f"sketch of dimension p={p} on n={g.n}, m={g.m} is too large to "
            "materialize; use the practical ('auto') dimension"
        )
    rng = np.random.default_rng(seed)
    if distribution == "rademacher":
        draw = lambda rows, cols: random_sign_matrix(rng, rows, cols)
    elif distribution == "gaussian":
        draw = lambda rows, cols: rng.standard_normal((rows, cols)) / math.sqrt(rows)
    else:
        raise ValueError(f"distribution must be 'rademacher' or 'gaussian'")
    proj_p = draw(p, g.n)
    proj_q = draw(p, g.m)

    a = _i_plus_l(g)
    if g.m:
        w_half_b = sp.diags(np.sqrt(g.edge_w)) @ g.incidence()  # m x n
        rhs_x = w_half_b.T @ proj_q.T  # n x p
    else:
        rhs_x = np.zeros((g.n, p))
    rhs = np.hstack([rhs_x, proj_p.T])
    sols = _solve_block(a, rhs, cfg)
    xtil = np.ascontiguousarray(sols[:, :p].T)
    ytil = np.ascontiguousarray(sols[:, p:].T)
    return SketchState(g, p, epsilon, seed, xtil, ytil, cfg, distribution, mode)


def approx_gains(sk: SketchState, edge_ids=None, chunk: int = 4096) -> np.ndarray:
    """Estimated deletion gains for the given edges (default: all).

    Entries whose estimated denominator 1 - w*(||X b_e||^2 + ||Y b_e||^2)
    falls at or below the guard are NaN; callers decide between an exact
    fallback and skipping.
    """
    g = sk.graph
    ids = np.arange(g.m) if edge_ids is None else np.asarray(edge_ids)
    out = np.empty(ids.size)
    for lo in range(0, ids.size, chunk):
        sel = ids[lo : lo + chunk]
        us, vs, ws = g.edge_u[sel], g.edge_v[sel], g.edge_w[sel]
        xd = sk.xtil[:, us] - sk.xtil[:, vs]
        yd = sk.ytil[:, us] - sk.ytil[:, vs]
        sx = np.einsum("ij,ij->j", xd, xd)
        sy = np.einsum("ij,ij->j", yd, yd)
        denom = 1.0 - ws * (sx + sy)
        vals = np.where(denom > GAIN_DENOM_EPS, g.n * ws * sy / denom, np.nan)
        out[lo : lo + chunk] = vals
    return out


def approx_gain(sk: SketchState, e: int) -> float:
    """Estimated deletion gain of a single edge; raises on a degenerate
    denominator (callers fall back to the exact gain or skip the edge)."""
    val = approx_gains(sk, np.array([e]))[0]
    if np.isnan(val):
        raise DegeneracyError(
            f"estimated gain denominator <= {GAIN_DENOM_EPS} for edge {e}",
        )
    return float(val)


def approx_pair_distance(sk: SketchState, e: int) -> float:
    """Estimate of the endpoint pair distance rho_e from the sketches."""
    g = sk.graph
    u, v = int(g.edge_u[e]), int(g.edge_v[e])
    xd = sk.xtil[:, u] - sk.xtil[:, v]
    yd = sk.ytil[:, u] - sk.ytil[:, v]
    return float(xd @ xd + yd @ yd)


def theoretical_deltas(g: Graph, epsilon: float) -> tuple[float, float]:
    """Worst-case solver tolerances for the two sketch families.

    These are audit values: they shrink polynomially in n and underflow
    double precision long before the million-node scale, which is why the
    solver runs at SolverConfig.rel_tolerance instead.
    """
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must be in (0, 1/2), got {epsilon}")
    if g.m == 0:
        raise ValueError("deltas are defined for graphs with at least one edge")
    n = g.n
    w_min, w_max = g.min_weight, g.max_weight
    common = math.sqrt(2.0 * (1.0 - epsilon / 12.0) * w_min)
    delta1 = (
        epsilon * w_min * common
        / (64.0 * w_max * n * (n + 1)
           * math.sqrt((1.0 + epsilon / 12.0) * (n * w_max + 1.0) * n))
    )
    delta2 = (
        epsilon * common
        / (32.0 * (n * w_max + 1.0)
           * math.sqrt((1.0 + epsilon / 12.0) * (n * w_max + 1.0)))
    )
    return delta1, delta2
