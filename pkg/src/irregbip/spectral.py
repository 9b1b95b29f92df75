"""Spectral radius, Perron vector and the quadratic forms built on them."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .constructions import b_graph, b_graph_mirror_labels
from .dense import JACOBI_MAX_N, jacobi_eigvalsh
from .graph import DisconnectedGraphError, Graph, GraphError

DEFAULT_TOL = 1e-12
MAX_ITER = 10**6
_DENSE_LIMIT = 400


class ConvergenceError(RuntimeError):
    def __init__(self, msg: str, iterations: int, residual: float):
        super().__init__(f"{msg} (iterations={iterations}, residual={residual:.3e})")
        self.iterations = iterations
        self.residual = residual


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    x: np.ndarray
    w_hat: int
    w_check: int
    iterations: int
    residual: float


@dataclass(frozen=True)
class QuadraticFormReport:
    edge_term: float
    deficiency_term: float
    total: float


def _edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    if g.m == 0:
        return np.zeros(0, dtype=int), np.zeros(0, dtype=int)
    e = np.array(g.sorted_edges(), dtype=int)
    return e[:, 0], e[:, 1]


def adjacency_operator(g: Graph):
    if g.n <= _DENSE_LIMIT:
        return g.adjacency_matrix()
    u, v = _edge_arrays(g)
    data = np.ones(2 * len(u))
    return scipy.sparse.csr_matrix((data, (np.r_[u, v], np.r_[v, u])), shape=(g.n, g.n))


class _ShiftedSolver:
    """Solves ``(A - sigma I) y = x`` for a fixed shift."""

    def __init__(self, a, sigma: float):
        n = a.shape[0]
        if scipy.sparse.issparse(a):
            m = (a - sigma * scipy.sparse.identity(n, format="csr")).tocsc()
            self._lu = scipy.sparse.linalg.splu(m)
            self._solve = self._lu.solve
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                lu = scipy.linalg.lu_factor(a - sigma * np.eye(n), check_finite=False)
            self._solve = lambda x: scipy.linalg.lu_solve(lu, x, check_finite=False)

    def __call__(self, x):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return self._solve(x)


def _normalize(y: np.ndarray) -> np.ndarray | None:
    if not np.all(np.isfinite(y)):
        return None
    nrm = np.linalg.norm(y)
    if nrm == 0:
        return None
    y = y / nrm
    return y if y.sum() >= 0 else -y


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER,
                    warmup: int = 50) -> SpectralResult:
    """Largest adjacency eigenvalue and unit Perron vector of a connected graph.

    Power iteration runs on ``A + I`` so the ``-rho`` eigenvalue of a
    bipartite graph cannot cause oscillation. After ``warmup`` steps the
    iteration switches to inverse iteration at the shift ``Delta`` (strictly
    above ``rho`` for irregular graphs, so the Perron pair is the one nearest
    the shift), then to Rayleigh-quotient iteration. Convergence means
    ``||Ax - rho x||_inf <= tol``; the final vector must be entrywise
    positive, which identifies it as the Perron vector.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not g.is_connected():
        raise DisconnectedGraphError("spectral_radius needs a connected graph")
    n = g.n
    if n == 1:
        return SpectralResult(0.0, np.ones(1), 0, 0, 0, 0.0)
    a = adjacency_operator(g)
    x = np.full(n, 1.0 / math.sqrt(n))
    it = 0

    def status(x):
        ax = a @ x
        q = float(x @ ax)
        return q, float(np.max(np.abs(ax - q * x))), ax

    q, res, ax = status(x)

    def done(x, res):
        return res <= tol and bool(np.all(x > 0))

    while not done(x, res) and it < min(warmup, max_iter):
        x = _normalize(ax + x)
        it += 1
        q, res, ax = status(x)

    if not done(x, res):
        delta = g.max_degree
        sigma = float(delta) if g.is_irregular() else delta + 1.0
        solve = _ShiftedSolver(a, sigma)
        # inverse iteration until the Perron direction dominates, then RQI
        switch = max(tol, 1e-6)
        while res > switch and it < max_iter:
            x = _normalize(solve(x))
            it += 1
            q, res, ax = status(x)
        x_safe, q_safe, res_safe = x, q, res
        for _ in range(20):
            if done(x, res) or it >= max_iter:
                break
            y = _normalize(_ShiftedSolver(a, q)(x))
            it += 1
            if y is None:
                break
            x = y
            q, res, ax = status(x)
        if not done(x, res):
            x, q, res = x_safe, q_safe, res_safe
            while not done(x, res) and it < max_iter:
                x = _normalize(solve(x))
                it += 1
                q, res, ax = status(x)
    if not done(x, res):
        raise ConvergenceError("spectral radius did not converge", it, res)
    return SpectralResult(
        rho=q,
        x=x,
        w_hat=int(np.argmax(x)),
        w_check=int(np.argmin(x)),
        iterations=it,
        residual=res,
    )


def spectral_radius_dense(g: Graph) -> float:
    """Largest adjacency eigenvalue by the Jacobi oracle; any graph, n <= 64."""
    if g.n == 0:
        return 0.0
    if g.n > JACOBI_MAX_N:
        raise GraphError(f"dense oracle limited to n <= {JACOBI_MAX_N}")
    return float(jacobi_eigvalsh(g.adjacency_matrix())[-1])


def spectral_radius_any(g: Graph, tol: float = DEFAULT_TOL) -> float:
    """Spectral radius of a possibly disconnected graph (max over components)."""
    best = 0.0
    for comp in g.components():
        if len(comp) > 1:
            best = max(best, spectral_radius(g.induced_subgraph(comp), tol).rho)
    return best


def compare_spectral_radii(g1: Graph, g2: Graph, margin: float = 1e-9,
                           tol: float = DEFAULT_TOL) -> int:
    """Sign of ``rho(g1) - rho(g2)``; 0 only for a tie the dense oracle cannot split.

    Differences below ``margin`` are re-decided by the Jacobi oracle at 1e-14.
    """
    r1, r2 = spectral_radius_any(g1, tol), spectral_radius_any(g2, tol)
    if abs(r1 - r2) > margin:
        return 1 if r1 > r2 else -1
    d1, d2 = spectral_radius_dense(g1), spectral_radius_dense(g2)
    if abs(d1 - d2) <= 1e-14:
        return 0
    return 1 if d1 > d2 else -1


def rayleigh_quotient(g: Graph, z) -> float:
    z = np.asarray(z, dtype=float)
    if z.shape != (g.n,):
        raise ValueError(f"vector has shape {z.shape}, expected ({g.n},)")
    zz = float(z @ z)
    if zz == 0:
        raise ValueError("Rayleigh quotient of the zero vector")
    u, v = _edge_arrays(g)
    return 2.0 * float(np.sum(z[u] * z[v])) / zz


def deficiency_identity(g: Graph, result: SpectralResult) -> QuadraticFormReport:
    """Split ``Delta - rho`` into the Laplacian edge term and the degree-deficiency term."""
    x = np.asarray(result.x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"eigenvector has shape {x.shape}, expected ({g.n},)")
    u, v = _edge_arrays(g)
    edge_term = float(np.sum((x[u] - x[v]) ** 2))
    deficit = g.max_degree - np.array(g.degrees, dtype=float)
    deficiency_term = float(np.sum(deficit * x * x))
    return QuadraticFormReport(edge_term, deficiency_term, edge_term + deficiency_term)


def lemma5_test_vector(k: int) -> np.ndarray:
    """Test vector on ``b_graph(2k)``: ``sin((k-i) pi / 2k)`` on both ``u_i`` and ``v_i``."""
    if k < 3:
        raise GraphError(f"k must be >= 3, got {k}")
    us, vs = b_graph_mirror_labels(k)
    z = np.zeros(2 * k)
    for i, (u, v) in enumerate(zip(us, vs), start=1):
        z[u] = z[v] = math.sin((k - i) * math.pi / (2 * k))
    return z


def lemma5_test_ratio(k: int) -> float:
    """``z^T (3I - A) z / z^T z`` on ``B_{2k}``, an upper bound for ``3 - rho``."""
    z = lemma5_test_vector(k)
    return 3.0 - rayleigh_quotient(b_graph(2 * k), z)


def lemma5_test_cap(k: int) -> float:
    """Closed-form cap ``(4k+24) sin^2(pi/4k) / (k-1)`` on the test ratio."""
    if k < 3:
        raise GraphError(f"k must be >= 3, got {k}")
    return (4 * k + 24) * math.sin(math.pi / (4 * k)) ** 2 / (k - 1)


def rotate_edges(g: Graph, u: int, v: int, S) -> Graph:
    """Move the edges ``wu`` (``w`` in ``S``) to ``wv``."""
    S = set(S)
    if u == v and S:
        raise GraphError("rotation needs distinct u and v")
    if v in S:
        raise GraphError("v must not be in S")
    allowed = set(g.neighbors(u)) - set(g.neighbors(v))
    if not S <= allowed:
        raise GraphError(f"S must lie in N(u) \\ N(v); offending: {sorted(S - allowed)}")
    if not S:
        return g
    return g.remove_edges([(w, u) for w in S]).add_edges([(w, v) for w in S])


def algebraic_connectivity(g: Graph, tol: float = DEFAULT_TOL) -> float:
    """Second-smallest Laplacian eigenvalue (LAPACK ``eigvalsh``)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not g.is_connected():
        raise DisconnectedGraphError("algebraic connectivity of a disconnected graph")
    if g.n == 1:
        return 0.0
    return float(np.linalg.eigvalsh(g.laplacian_matrix())[1])


def shi_inequality_gap(a: float, b: float, p: float, q: float) -> float:
    """``a(p-q)^2 + b q^2 - ab p^2/(a+b)``; nonnegative, zero iff ``q = ap/(a+b)``."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    return a * (p - q) ** 2 + b * q * q - a * b * p * p / (a + b)
