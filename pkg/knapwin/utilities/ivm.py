#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Informative Vector Machine utility for active set selection:
f(S) = 1/2 log det(I + sigma^-2 K_{S,S}) with the squared exponential
kernel K_ij = exp(-||v_i - v_j||^2 / h^2).

The state keeps a lower-triangular Cholesky factor of I + sigma^-2 K_{S,S}
that grows by one row per insertion. Candidates never remove elements, so
no downdating is needed.
"""

# Standard libs
import logging
from typing import Iterable

# Installed libs
import numpy as np
from scipy.linalg import solve_triangular

# User-defined libs
from knapwin.core.element import Element
from knapwin.core.oracle import UtilityOracle
from knapwin.utils.raise_exception import raise_exception

LOGGER = logging.getLogger(__name__)

# Schur complements at or below this value are treated as rank deficient
RANK_TOLERANCE = 1e-12

DEFAULT_SIGMA = 1.0
DEFAULT_BANDWIDTH = 0.75


def squared_exponential_kernel(
    points: np.ndarray, query: np.ndarray, bandwidth: float
) -> np.ndarray:
    """Returns exp(-||p - q||^2 / h^2) for every row p of points"""
    diff = points - query
    return np.exp(-np.einsum("ij,ij->i", diff, diff) / bandwidth**2)


def ivm_utility(
    vectors: Iterable[np.ndarray],
    sigma: float = DEFAULT_SIGMA,
    bandwidth: float = DEFAULT_BANDWIDTH,
) -> float:
    """Evaluates the IVM utility from scratch with a dense log-determinant"""
    points = np.array([np.asarray(v, dtype=float) for v in vectors])
    if points.size == 0:
        return 0.0
    sq_dist = np.sum((points[:, None, :] - points[None, :, :]) ** 2, axis=-1)
    kernel = np.exp(-sq_dist / bandwidth**2)
    sign, logdet = np.linalg.slogdet(np.eye(len(points)) + kernel / sigma**2)
    if sign <= 0:
        raise_exception("Kernel matrix is not positive definite.", ArithmeticError)
    return 0.5 * logdet


class IvmOracle(UtilityOracle):
    """
    Incremental IVM log-determinant utility.

    Parameters
    ----------
    sigma : float, default = 1.0
        Regularization parameter
    bandwidth : float, default = 0.75
        Kernel width h
    dim : int, optional
        Dimension of the feature vectors; inferred from the first element
        if not given
    """

    name = "ivm"

    def __init__(
        self,
        sigma: float = DEFAULT_SIGMA,
        bandwidth: float = DEFAULT_BANDWIDTH,
        dim: int = None,
    ):
        super().__init__()
        if sigma <= 0 or bandwidth <= 0:
            raise_exception(
                f"IVM requires sigma > 0 and bandwidth > 0, received "
                f"sigma={sigma}, bandwidth={bandwidth}.",
                ValueError,
            )
        self.sigma = float(sigma)
        self.bandwidth = float(bandwidth)
        self.dim = dim
        self._inv_sigma_sq = 1.0 / self.sigma**2
        self._size = 0
        self._points = np.empty((0, dim or 0))
        self._factor = np.empty((0, 0))

    def __len__(self):
        return self._size

    @property
    def factor(self) -> np.ndarray:
        """Lower-triangular Cholesky factor of I + sigma^-2 K_{S,S}"""
        return self._factor[: self._size, : self._size]

    @property
    def points(self) -> np.ndarray:
        """Feature vectors of the inserted elements, one per row"""
        return self._points[: self._size]

    def _vector(self, element: Element) -> np.ndarray:
        vec = np.asarray(element.payload, dtype=float).reshape(-1)
        if self.dim is None:
            self.dim = vec.size
            self._points = np.empty((self._points.shape[0], self.dim))
        elif vec.size != self.dim:
            raise_exception(
                f"Element {element.ordinal} has a {vec.size}-dimensional feature "
                f"vector; the oracle expects {self.dim} dimensions.",
                ValueError,
            )
        return vec

    def _schur(self, vec: np.ndarray):
        """
        Returns (z, r) where z solves factor @ z = sigma^-2 k(S, v) and
        r = 1 + sigma^-2 k(v, v) - z.z is the new diagonal entry squared.
        """
        dvv = 1.0 + self._inv_sigma_sq
        if self._size == 0:
            return np.empty(0), dvv
        cross = self._inv_sigma_sq * squared_exponential_kernel(
            self.points, vec, self.bandwidth
        )
        z = solve_triangular(self.factor, cross, lower=True, check_finite=False)
        return z, dvv - float(z @ z)

    def gain(self, element: Element) -> float:
        _, schur = self._schur(self._vector(element))
        if schur <= RANK_TOLERANCE:
            return 0.0
        return 0.5 * np.log(schur)

    def _reserve(self, size: int) -> None:
        capacity = self._factor.shape[0]
        if size <= capacity:
            return
        capacity = max(size, 2 * capacity, 8)
        factor = np.zeros((capacity, capacity))
        factor[: self._size, : self._size] = self.factor
        points = np.zeros((capacity, self.dim))
        points[: self._size] = self.points
        self._factor, self._points = factor, points

    def _insert(self, element: Element) -> float:
        vec = self._vector(element)
        z, schur = self._schur(vec)
        self._reserve(self._size + 1)
        n = self._size
        self._points[n] = vec
        if schur > RANK_TOLERANCE:
            self._factor[n, :n] = z
            self._factor[n, n] = np.sqrt(schur)
            self._size += 1
            return 0.5 * np.log(schur)

        LOGGER.warning(
            f"Numerically rank-deficient insertion of element {element.ordinal}; "
            "refactorizing the kernel matrix."
        )
        self._size += 1
        return self._refactorize() - self.utility

    def _refactorize(self) -> float:
        """Rebuilds the factor from the stored points and returns the utility"""
        points = self.points
        sq_dist = np.sum((points[:, None, :] - points[None, :, :]) ** 2, axis=-1)
        matrix = np.eye(self._size) + self._inv_sigma_sq * np.exp(
            -sq_dist / self.bandwidth**2
        )
        self._factor[: self._size, : self._size] = np.linalg.cholesky(matrix)
        return float(np.sum(np.log(np.diag(self.factor))))

    def clone(self) -> "IvmOracle":
        new = self.spawn()
        new._size = self._size
        new._factor = self.factor.copy()
        new._points = self.points.copy()
        new.utility = self.utility
        return new

    def spawn(self) -> "IvmOracle":
        return IvmOracle(self.sigma, self.bandwidth, self.dim)

    def reset(self) -> None:
        self._size = 0
        self._points = np.empty((0, self.dim or 0))
        self._factor = np.empty((0, 0))
        self.utility = 0.0


def ivm_gain(state: IvmOracle, element: Element) -> float:
    """Functional form of IvmOracle.gain"""
    return state.gain(element)
