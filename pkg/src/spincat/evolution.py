"""Composite spin (x) mode states, exact time evolution and partial trace.

The composite index convention is spin-major: index = spin_index * fock_dim
+ fock_index, i.e. composite vectors are kron(spin_part, fock_part).

Two exact evolution paths are provided.  The number-coupled rotation
H = Jz (x) n_B never materializes the composite state: the evolved state is
a sum of per-m auxiliary branches exp(-i m n tau)|psi_B>, which is lossless
and O(N_A * n_cut) in memory.  Non-separable couplings (the quadrature
beam-splitter H = X (x) Jx + Y (x) Jy and its classicalized case studies)
use a reusable Hermitian-eigendecomposition propagator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bosonic import FockBasis, mode_operator
from .errors import DimensionMismatchError
from .linalg import HermitianPropagator, dag, expectation
from .spin_algebra import SpinBasis, spin_operator
from .states import DensityMatrix, PureState


@dataclass(frozen=True)
class CompositeBasis:
    """Tensor product of a spin basis and a truncated Fock basis."""

    spin: SpinBasis
    fock: FockBasis

    @property
    def dim(self) -> int:
        return self.spin.dim * self.fock.dim


@dataclass(frozen=True)
class EvolutionParams:
    """Dimensionless evolution time tau = g*t and the interaction it feeds.

    The rotation angle conventions are recorded here once: a beam-splitter
    pulse of duration tau rotates by theta = 2|beta| tau, while the
    number-coupled rotation advances the azimuthal angle by phi = N_B tau.
    """

    tau: float
    hamiltonian_kind: str

    _KINDS = ("separable_jz", "beam_splitter", "classical_rotation", "classical_X_case", "classical_Y_case")

    def __post_init__(self):
        if not np.isfinite(self.tau):
            raise ValueError("tau must be finite")
        if self.hamiltonian_kind not in self._KINDS:
            raise ValueError(f"unknown hamiltonian kind {self.hamiltonian_kind!r}")


def beam_splitter_angle(beta: complex, tau: float) -> float:
    return 2.0 * abs(beta) * tau


def jz_rotation_angle(mean_photons: float, tau: float) -> float:
    return mean_photons * tau


def product_state(psi_a: PureState, psi_b: PureState) -> PureState:
    basis = CompositeBasis(psi_a.basis, psi_b.basis)
    return PureState(np.kron(psi_a.amplitudes, psi_b.amplitudes), basis)


@dataclass
class EvolvedBranches:
    """Auxiliary branches of a number-coupled evolution, one per Jz eigenvalue.

    Branch k is exp(-i m_values[k] n_B tau)|psi_B(0)>, weighted by the probe
    amplitude coefficients[k].  Only rows listed in support_indices (relative
    to the full spin basis) are stored.
    """

    spin_basis: SpinBasis
    fock_basis: FockBasis
    support_indices: np.ndarray
    m_values: np.ndarray
    coefficients: np.ndarray
    vectors: np.ndarray  # shape (len(support), fock_dim)


def separable_evolve(
    psi_a: PureState, psi_b: PureState, tau: float, support_only: bool = False
) -> EvolvedBranches:
    """Evolve |psi_A> (x) |psi_B> under Jz (x) n_B for dimensionless time tau.

    n_B is diagonal, so each branch is an exact elementwise phase.  With
    support_only=True branches with zero probe amplitude are dropped (the
    reduced state does not depend on them).
    """
    spin_basis: SpinBasis = psi_a.basis
    fock_basis: FockBasis = psi_b.basis
    c = psi_a.amplitudes
    if support_only:
        support = np.flatnonzero(np.abs(c) > 0.0)
    else:
        support = np.arange(spin_basis.dim)
    m_vals = spin_basis.m_values[support]
    n_vals = np.arange(fock_basis.dim)
    phases = np.exp(-1j * tau * np.outer(m_vals, n_vals))
    return EvolvedBranches(
        spin_basis=spin_basis,
        fock_basis=fock_basis,
        support_indices=support,
        m_values=m_vals,
        coefficients=c[support].copy(),
        vectors=phases * psi_b.amplitudes[None, :],
    )


def branch_coherence(branches: EvolvedBranches) -> np.ndarray:
    """Overlap matrix C[m, n] = <branch_n | branch_m> over the stored branches."""
    b = branches.vectors
    return b @ dag(b)


def reduced_density_separable(branches: EvolvedBranches) -> DensityMatrix:
    """Probe state after tracing the mode: rho[m, n] = c_m c_n^* C[m, n]."""
    c = branches.coefficients
    rho_sup = np.outer(c, c.conj()) * branch_coherence(branches)
    dim = branches.spin_basis.dim
    if len(branches.support_indices) == dim:
        rho = rho_sup
    else:
        rho = np.zeros((dim, dim), dtype=complex)
        rho[np.ix_(branches.support_indices, branches.support_indices)] = rho_sup
    rho = (rho + dag(rho)) / 2.0  # scrub roundoff asymmetry
    return DensityMatrix(rho, basis=branches.spin_basis)


def beamsplitter_hamiltonian(basis: CompositeBasis) -> np.ndarray:
    """Quadrature coupling X (x) Jx + Y (x) Jy (dimensionless; g folded into tau)."""
    jx = spin_operator("x", basis.spin)
    jy = spin_operator("y", basis.spin)
    x = mode_operator("X", basis.fock)
    y = mode_operator("Y", basis.fock)
    return np.kron(jx, x) + np.kron(jy, y)


def case_hamiltonian(case: str, beta: float, basis: CompositeBasis) -> np.ndarray:
    """Beam-splitter case studies with one quadrature replaced by its mean.

    The label names the quadrature kept quantum (real beta, so <Y> = 0 and
    <X> = 2 beta): ``classical_X`` keeps X and drops the Y coupling entirely;
    ``classical_Y`` keeps Y and replaces X by 2 beta.
    """
    if np.imag(beta) != 0.0:
        raise ValueError("case studies are defined for real coherent amplitude")
    jx = spin_operator("x", basis.spin)
    jy = spin_operator("y", basis.spin)
    eye_f = np.eye(basis.fock.dim)
    if case == "classical_X":
        return np.kron(jx, mode_operator("X", basis.fock))
    if case == "classical_Y":
        return 2.0 * beta * np.kron(jx, eye_f) + np.kron(jy, mode_operator("Y", basis.fock))
    raise ValueError(f"unknown case {case!r}")


_PROPAGATOR_CACHE: dict = {}
_PROPAGATOR_CACHE_MAX = 4


def _fingerprint(h: np.ndarray) -> tuple:
    d = h.shape[0]
    return (d, complex(np.trace(h)), complex(h[0].sum()), complex(h[d // 2].sum()))


def make_propagator(h: np.ndarray) -> HermitianPropagator:
    """Eigendecompose H once for repeated exp(-i H tau) application."""
    return HermitianPropagator(h)


def evolve_full(h: np.ndarray, psi_ab: PureState, tau: float, propagator: HermitianPropagator = None) -> PureState:
    """exp(-i H tau)|psi_AB> via Hermitian eigendecomposition of H.

    The decomposition is cached per Hamiltonian array, so sweeping tau costs
    one matrix-vector pass per point; pass an explicit ``make_propagator``
    result to manage the lifetime yourself.
    """
    if propagator is None:
        if h.shape[0] != psi_ab.dim:
            raise DimensionMismatchError(f"H dim {h.shape[0]} != state dim {psi_ab.dim}")
        key = id(h)
        hit = _PROPAGATOR_CACHE.get(key)
        if hit is None or hit[0] != _fingerprint(h):
            if len(_PROPAGATOR_CACHE) >= _PROPAGATOR_CACHE_MAX:
                _PROPAGATOR_CACHE.pop(next(iter(_PROPAGATOR_CACHE)))
            hit = (_fingerprint(h), make_propagator(h))
            _PROPAGATOR_CACHE[key] = hit
        propagator = hit[1]
    return PureState(propagator.evolve(psi_ab.amplitudes, tau), psi_ab.basis)


def energy_expectation(h: np.ndarray, psi_ab: PureState) -> float:
    return float(np.real(expectation(h, psi_ab.amplitudes)))


def partial_trace_b(state, basis: CompositeBasis) -> DensityMatrix:
    """Reduced probe state: trace the Fock factor out of a pure or mixed state."""
    da, db = basis.spin.dim, basis.fock.dim
    if isinstance(state, PureState):
        if state.dim != da * db:
            raise DimensionMismatchError(f"state dim {state.dim} != {da}x{db}")
        psi = state.amplitudes.reshape(da, db)
        rho = psi @ dag(psi)
    elif isinstance(state, DensityMatrix) or (hasattr(state, "ndim") and state.ndim == 2):
        entries = state.entries if isinstance(state, DensityMatrix) else np.asarray(state)
        if entries.shape != (da * db, da * db):
            raise DimensionMismatchError(f"matrix shape {entries.shape} != ({da * db},)^2")
        rho = np.einsum("ikjk->ij", entries.reshape(da, db, da, db))
    else:
        raise TypeError("state must be a PureState, DensityMatrix or square array")
    rho = (rho + dag(rho)) / 2.0
    return DensityMatrix(rho, basis=basis.spin)


def classical_rotation(psi_a: PureState, axis: str, angle: float) -> PureState:
    """Decoherence-free rotation exp(-i J_axis angle) of the probe alone."""
    if not np.isfinite(angle):
        raise ValueError("angle must be finite")
    basis: SpinBasis = psi_a.basis
    if axis == "z":
        amps = np.exp(-1j * angle * basis.m_values) * psi_a.amplitudes
    else:
        w, v = np.linalg.eigh(spin_operator(axis, basis))
        amps = v @ (np.exp(-1j * angle * w) * (dag(v) @ psi_a.amplitudes))
    return PureState(amps, basis)
