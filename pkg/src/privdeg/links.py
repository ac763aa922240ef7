"""Edge-probability models for undirected binary graphs.

Three link functions relate a pair sum x = alpha_i + alpha_j to an edge
probability p(x):

    log:      p = exp(x)                (requires x < 0)
    logit:    p = exp(x) / (1 + exp(x))
    cloglog:  p = 1 - exp(-exp(x))

Edges are independent Bernoulli(p_ij) with p_ij = p(alpha_i + alpha_j),
no self-loops. The vertex parameter alpha_i measures the propensity of
vertex i to form edges; the degree d_i = sum_j a_ij is the statistic
released (possibly with noise) downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class DomainError(ValueError):
    """Raised when a pair sum leaves the valid domain of a link function."""


class LinkKind(str, Enum):
    LOG = "log"
    LOGIT = "logit"
    CLOGLOG = "cloglog"

    @classmethod
    def parse(cls, name: str) -> "LinkKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown link {name!r}; expected one of log, logit, cloglog"
            ) from None


# exp() overflows past ~709; pair sums beyond this are clipped before exp
# in the two links that accept the whole real line.
_EXP_CLIP = 690.0


def _check_log_domain(x: np.ndarray) -> None:
    bad = x >= 0
    if np.any(bad):
        worst = float(np.max(np.asarray(x)))
        raise DomainError(
            f"log link requires every pair sum alpha_i + alpha_j < 0; "
            f"largest offending sum is {worst:.6g}"
        )


def edge_prob(link: LinkKind, x) -> np.ndarray | float:
    """Edge probability p(x) at pair sum x.

    Parameters
    ----------
    link:
        Which link function to evaluate.
    x:
        Scalar or array of pair sums alpha_i + alpha_j.

    Returns
    -------
    Probability in (0, 1), elementwise for arrays.

    Raises
    ------
    DomainError
        For the log link when any x >= 0 (p would reach or exceed 1).
    """
    xa = np.asarray(x, dtype=float)
    if link == LinkKind.LOG:
        _check_log_domain(xa)
        out = np.exp(xa)
    elif link == LinkKind.LOGIT:
        out = np.where(xa >= 0, 1.0 / (1.0 + np.exp(-np.clip(xa, 0, None))),
                       np.exp(np.clip(xa, None, 0)) / (1.0 + np.exp(np.clip(xa, None, 0))))
    elif link == LinkKind.CLOGLOG:
        out = -np.expm1(-np.exp(np.clip(xa, None, _EXP_CLIP)))
    else:  # pragma: no cover
        raise ValueError(f"unknown link {link!r}")
    return out if np.ndim(x) else float(out)


def edge_prob_deriv(link: LinkKind, x, order: int = 1) -> np.ndarray | float:
    """First or second derivative of the edge probability in the pair sum.

    Closed forms:

        log:      p' = exp(x),              p'' = exp(x)
        logit:    p' = p(1-p),              p'' = p(1-p)(1-2p)
        cloglog:  p' = exp(x - exp(x)),     p'' = p'(1 - exp(x))

    Raises
    ------
    DomainError for the log link when any x >= 0; ValueError for an
    unsupported derivative order.
    """
    if order not in (1, 2):
        raise ValueError(f"derivative order must be 1 or 2, got {order}")
    xa = np.asarray(x, dtype=float)
    if link == LinkKind.LOG:
        _check_log_domain(xa)
        out = np.exp(xa)
    elif link == LinkKind.LOGIT:
        p = np.asarray(edge_prob(link, xa))
        out = p * (1.0 - p)
        if order == 2:
            out = out * (1.0 - 2.0 * p)
    elif link == LinkKind.CLOGLOG:
        xc = np.clip(xa, None, _EXP_CLIP)
        ex = np.exp(xc)
        out = np.exp(xc - ex)
        if order == 2:
            out = out * (1.0 - ex)
    else:  # pragma: no cover
        raise ValueError(f"unknown link {link!r}")
    return out if np.ndim(x) else float(out)


def link_inverse(link: LinkKind, p) -> np.ndarray | float:
    """Pair sum x with edge_prob(link, x) = p, for p in (0, 1)."""
    pa = np.asarray(p, dtype=float)
    if np.any((pa <= 0) | (pa >= 1)):
        raise ValueError("link inverse requires probabilities strictly in (0, 1)")
    if link == LinkKind.LOG:
        out = np.log(pa)
    elif link == LinkKind.LOGIT:
        out = np.log(pa / (1.0 - pa))
    else:
        out = np.log(-np.log1p(-pa))
    return out if np.ndim(p) else float(out)


def validate_params(link: LinkKind, alpha: np.ndarray) -> np.ndarray:
    """Validate a vertex-parameter vector against the link's domain.

    Checks length >= 2, finiteness, and (log link only) that every pair
    sum alpha_i + alpha_j with i != j is negative.
    """
    a = np.asarray(alpha, dtype=float).reshape(-1)
    if a.size < 2:
        raise ValueError(f"need at least 2 vertices, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vertex parameters must be finite")
    if link == LinkKind.LOG:
        top2 = np.sort(a)[-2:]
        _check_log_domain(np.asarray(top2.sum()))
    return a


def pair_sum_matrix(alpha: np.ndarray) -> np.ndarray:
    """Symmetric matrix X with X[i, j] = alpha_i + alpha_j."""
    a = np.asarray(alpha, dtype=float)
    return a[:, None] + a[None, :]


def edge_prob_matrix(link: LinkKind, alpha: np.ndarray) -> np.ndarray:
    """Symmetric edge-probability matrix with zero diagonal."""
    a = validate_params(link, alpha)
    P = np.asarray(edge_prob(link, pair_sum_matrix(a)))
    np.fill_diagonal(P, 0.0)
    return P


def expected_degrees(link: LinkKind, alpha: np.ndarray) -> np.ndarray:
    """Expected degree vector, component i equal to sum_{j != i} p_ij."""
    return edge_prob_matrix(link, alpha).sum(axis=1)


@dataclass(frozen=True)
class Graph:
    """Undirected binary graph stored as a dense symmetric 0/1 matrix."""

    adjacency: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.adjacency)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if A.shape[0] < 2:
            raise ValueError("need at least 2 vertices")
        if not np.array_equal(A, A.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(A) != 0):
            raise ValueError("self-loops are not allowed")
        if not np.isin(A, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        object.__setattr__(self, "adjacency", A.astype(np.uint8))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]


def sample_graph(link: LinkKind, alpha: np.ndarray, rng: np.random.Generator) -> Graph:
    """Draw one graph with independent Bernoulli(p_ij) edges.

    Upper-triangle entries are drawn from the supplied generator and
    mirrored, so the same generator state yields the same graph.
    """
    a = validate_params(link, alpha)
    n = a.size
    P = edge_prob_matrix(link, a)
    iu = np.triu_indices(n, k=1)
    draws = (rng.random(iu[0].size) < P[iu]).astype(np.uint8)
    A = np.zeros((n, n), dtype=np.uint8)
    A[iu] = draws
    return Graph(A + A.T)


def degrees(g: Graph) -> np.ndarray:
    """Degree sequence: row sums of the adjacency matrix (dtype int64)."""
    return g.adjacency.sum(axis=1, dtype=np.int64)
