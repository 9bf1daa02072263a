"""Dense linear-algebra helpers shared by all modules.

Unitaries are always built from Hermitian generators by eigendecomposition,
never by series expansion, so they are unitary to solver precision.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, NotADensityMatrixError

HERMITICITY_TOL = 1e-12
UNITARITY_TOL = 1e-10
DENSITY_HERMITICITY_TOL = 1e-11
DENSITY_TRACE_TOL = 1e-10
DENSITY_EIGENVALUE_FLOOR = -1e-10


def dag(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return a.shape[0] == a.shape[1] and np.max(np.abs(a - dag(a))) <= tol


def require_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL, what: str = "operator") -> None:
    if not is_hermitian(a, tol):
        raise ValueError(f"{what} is not Hermitian within {tol:g}")


def is_unitary(u: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    if u.shape[0] != u.shape[1]:
        return False
    return np.max(np.abs(dag(u) @ u - np.eye(u.shape[0]))) <= tol


def require_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape} vs {b.shape}")


def unitary_from_generator(g: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i * angle * g) for Hermitian g, via eigendecomposition."""
    require_hermitian(g, tol=1e-10)
    w, v = np.linalg.eigh(g)
    return (v * np.exp(-1j * angle * w)) @ dag(v)


def expectation(op: np.ndarray, psi: np.ndarray) -> complex:
    return complex(np.vdot(psi, op @ psi))


def variance(op: np.ndarray, psi: np.ndarray) -> float:
    mean = expectation(op, psi)
    return float(np.real(expectation(op @ op, psi)) - np.real(mean) ** 2 - np.imag(mean) ** 2)


def validate_density_matrix(
    rho: np.ndarray,
    hermiticity_tol: float = DENSITY_HERMITICITY_TOL,
    trace_tol: float = DENSITY_TRACE_TOL,
    eigenvalue_floor: float = DENSITY_EIGENVALUE_FLOOR,
) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return eigenvalues (ascending)."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise NotADensityMatrixError(f"not a square matrix: shape {rho.shape}")
    if np.max(np.abs(rho - dag(rho))) > hermiticity_tol:
        raise NotADensityMatrixError("violates Hermiticity tolerance")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise NotADensityMatrixError(f"trace {tr} differs from 1 beyond tolerance")
    evals = np.linalg.eigvalsh(rho)
    if evals[0] < eigenvalue_floor:
        raise NotADensityMatrixError(f"negative eigenvalue {evals[0]:.3e} below floor")
    return evals


def _connected_components(adjacency: np.ndarray) -> np.ndarray:
    """Component label per node of a boolean adjacency matrix (BFS over rows)."""
    n = adjacency.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    current = 0
    for seed in range(n):
        if labels[seed] >= 0:
            continue
        frontier = np.zeros(n, dtype=bool)
        frontier[seed] = True
        member = frontier.copy()
        while frontier.any():
            reached = adjacency[frontier].any(axis=0)
            frontier = reached & ~member
            member |= frontier
        labels[member] = current
        current += 1
    return labels


class HermitianPropagator:
    """Reusable exp(-i H tau) applier for a fixed Hermitian H.

    The eigendecomposition is performed once per instance.  H is first split
    into the connected components of its sparsity graph (a permutation
    similarity, so the result is identical to a dense eigendecomposition);
    block-diagonal Hamiltonians such as excitation-exchange couplings then
    diagonalize orders of magnitude faster than the dense path.
    """

    def __init__(self, h: np.ndarray, split_blocks: bool = True):
        require_hermitian(h, tol=1e-10)
        self.dim = h.shape[0]
        if split_blocks:
            labels = _connected_components(h != 0.0)
        else:
            labels = np.zeros(self.dim, dtype=np.int64)
        self._blocks = []
        for lab in range(labels.max() + 1):
            idx = np.flatnonzero(labels == lab)
            w, v = np.linalg.eigh(h[np.ix_(idx, idx)])
            self._blocks.append((idx, w, v))

    def evolve(self, psi: np.ndarray, tau: float) -> np.ndarray:
        if psi.shape[0] != self.dim:
            raise DimensionMismatchError(f"state dim {psi.shape[0]} != H dim {self.dim}")
        out = np.empty(self.dim, dtype=complex)
        for idx, w, v in self._blocks:
            out[idx] = v @ (np.exp(-1j * tau * w) * (dag(v) @ psi[idx]))
        return out
