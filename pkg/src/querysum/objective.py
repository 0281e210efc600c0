"""Quadratic objective over the relaxed selection vector.

The loss is ``lambda1 * Z'PZ - Z'(lambda1*Q + lambda2*R)Z`` where P is the
diagonal of squared feature norms, Q is the feature Gram matrix, and R is
the diagonal of squared relevance scores. Both pieces of the difference
are convex by construction (nonnegative diagonals, Gram Q), which is what
the iterative solver relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import DistanceVector
from .errors import ConfigError, InputError, NumericError

RELEVANCE_MODES = ("similarity", "raw_distance")


@dataclass(frozen=True)
class LossParams:
    """Weights of the variance and relevance terms."""

    lambda1: float = 1.0
    lambda2: float = 1.0

    def __post_init__(self):
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ConfigError(f"lambdas must be nonnegative, got {self.lambda1}, {self.lambda2}")
        if self.lambda1 == 0 and self.lambda2 == 0:
            raise ConfigError("lambda1 and lambda2 must not both be zero")


@dataclass(frozen=True)
class ObjectiveMatrices:
    """P (diagonal, as vector p), Q (Gram), and R (diagonal, as vector r)."""

    p: np.ndarray
    Q: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        n = self.p.shape[0]
        if self.Q.shape != (n, n) or self.r.shape != (n,):
            raise InputError(
                f"inconsistent shapes: p {self.p.shape}, Q {self.Q.shape}, r {self.r.shape}"
            )
        if not (np.all(np.isfinite(self.p)) and np.all(np.isfinite(self.Q)) and np.all(np.isfinite(self.r))):
            raise NumericError("objective matrices contain NaN or Inf")
        if np.any(self.p < 0) or np.any(self.r < 0):
            raise InputError("diagonal entries of P and R must be nonnegative")

    @property
    def n(self) -> int:
        return self.p.shape[0]


def build_matrices(
    X: np.ndarray, dv: DistanceVector, relevance_mode: str = "similarity"
) -> ObjectiveMatrices:
    """Build P, Q, R from the feature matrix and the distance vector.

    ``relevance_mode="similarity"`` (default) squares s = exp(-d) on R's
    diagonal so low distances are rewarded; ``"raw_distance"`` squares d
    itself, which replicates the literal distance-matrix formulation.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise InputError(f"feature matrix must be 2-D and non-empty, got shape {X.shape}")
    if X.shape[0] != len(dv):
        raise InputError(f"row count {X.shape[0]} != distance vector length {len(dv)}")
    if relevance_mode not in RELEVANCE_MODES:
        raise ConfigError(f"relevance_mode must be one of {RELEVANCE_MODES}, got {relevance_mode!r}")
    Q = X @ X.T
    Q = 0.5 * (Q + Q.T)
    p = np.diag(Q).copy()
    base = dv.s if relevance_mode == "similarity" else dv.d
    return ObjectiveMatrices(p=p, Q=Q, r=base * base)


def _check_z(M: ObjectiveMatrices, Z: np.ndarray) -> np.ndarray:
    Z = np.asarray(Z, dtype=np.float64)
    if Z.shape != (M.n,):
        raise InputError(f"selection vector shape {Z.shape} != ({M.n},)")
    return Z


def summary_variance_trace(M: ObjectiveMatrices, Z: np.ndarray) -> float:
    """Z'(P - Q)Z, the spread of the selected features."""
    Z = _check_z(M, Z)
    return float(M.p @ (Z * Z) - Z @ M.Q @ Z)


def query_trace(M: ObjectiveMatrices, Z: np.ndarray) -> float:
    """Z'RZ, the selection-weighted relevance mass."""
    Z = _check_z(M, Z)
    return float(M.r @ (Z * Z))


def loss(M: ObjectiveMatrices, params: LossParams, Z: np.ndarray) -> float:
    """lambda1 * Z'(P - Q)Z - lambda2 * Z'RZ.

    Composed from the two traces so the decomposition identity holds to the
    last bit; expanding gives lambda1*Z'PZ - Z'(lambda1*Q + lambda2*R)Z.
    """
    return params.lambda1 * summary_variance_trace(M, Z) - params.lambda2 * query_trace(M, Z)
