"""State containers: normalized pure states and density matrices.

Operators stay bare ``numpy`` arrays; states carry their basis so that
evolution and partial-trace routines can check dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, StateNormalizationError

NORM_TOL = 1e-10


@dataclass
class PureState:
    """Normalized amplitude vector over a labeled basis."""

    amplitudes: np.ndarray
    basis: Any

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.ndim != 1:
            raise DimensionMismatchError("amplitudes must be a vector")
        if self.basis is not None and self.basis.dim != self.amplitudes.shape[0]:
            raise DimensionMismatchError(
                f"basis dim {self.basis.dim} != amplitude length {self.amplitudes.shape[0]}"
            )
        norm_sq = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise StateNormalizationError(f"|psi|^2 = {norm_sq} differs from 1 beyond {NORM_TOL:g}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass
class DensityMatrix:
    """Hermitian, positive-semidefinite, unit-trace matrix.

    Invariants are checked on construction; the eigendecomposition is
    computed lazily and cached (QFI and purity reuse it).
    """

    entries: np.ndarray
    basis: Any = None
    _eig: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        linalg.validate_density_matrix(self.entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigh(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues (ascending, clipped at 0) and eigenvectors."""
        if self._eig is None:
            w, v = np.linalg.eigh(self.entries)
            self._eig = (np.clip(w, 0.0, None), v)
        return self._eig

    @classmethod
    def from_pure(cls, psi: PureState) -> "DensityMatrix":
        return cls(psi.projector(), basis=psi.basis)
