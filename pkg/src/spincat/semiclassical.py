"""Gaussian-averaged classical rotations as a stand-in for mode entanglement.

The probe state is mixed over classically noisy rotation angles instead of
being entangled with the quantized mode, which needs only probe-sized
matrices.  Field quantization is gone in this picture, so coherence revivals
are absent by construction.

Angle statistics follow the quadratures of the mode state: a beam-splitter
pulse of mean angle theta = 2|beta| tau carries sigma_theta^2 =
theta^2 V(X)/(4 |beta|^2) and the azimuthal angle carries sigma_phi^2 =
V(Y)/(4 |beta|^2), with phi centered on arg(beta) = 0 for real amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bosonic import AuxStateSpec, FockBasis, quadrature_variances
from .linalg import dag
from .spin_algebra import SpinBasis, basis_change, spin_operator
from .states import DensityMatrix, PureState


@dataclass(frozen=True)
class GaussianNoiseSpec:
    """Mean and standard deviation of one noisy rotation angle."""

    mean: float
    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")


@dataclass(frozen=True)
class QuadratureGrid:
    """Discretized probability distribution: increasing nodes, unit-sum weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be equal-length vectors")
        if np.any(np.diff(self.nodes) <= 0) and self.nodes.size > 1:
            raise ValueError("nodes must be strictly increasing")
        if np.any(self.weights < 0) or abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")


def gaussian_grid(spec: GaussianNoiseSpec, n_points: int = 201, span_sigmas: float = 6.0) -> QuadratureGrid:
    """Uniform grid over mean +- span_sigmas*sigma with renormalized Gaussian weights.

    sigma = 0 degenerates to the single node (mean, 1).
    """
    if spec.sigma == 0.0:
        return QuadratureGrid(np.array([spec.mean]), np.array([1.0]))
    if n_points < 3 or n_points % 2 == 0:
        raise ValueError("n_points must be odd and >= 3")
    if span_sigmas <= 0:
        raise ValueError("span_sigmas must be positive")
    nodes = spec.mean + spec.sigma * np.linspace(-span_sigmas, span_sigmas, n_points)
    w = np.exp(-((nodes - spec.mean) ** 2) / (2.0 * spec.sigma**2))
    return QuadratureGrid(nodes, w / w.sum())


def gaussian_coherence_factors(level_values: np.ndarray, noise: GaussianNoiseSpec) -> np.ndarray:
    """Closed-form Gaussian average of the dephasing phases.

    C[m, n] = exp(-i (m-n) mean) exp(-(m-n)^2 sigma^2 / 2), the exact integral
    of exp(-i (m-n) angle) over the Gaussian angle distribution.
    """
    delta = np.subtract.outer(level_values, level_values)
    return np.exp(-1j * delta * noise.mean - 0.5 * delta**2 * noise.sigma**2)


def _grid_coherence_factors(level_values: np.ndarray, grid: QuadratureGrid) -> np.ndarray:
    delta = np.subtract.outer(level_values, level_values)
    return np.tensordot(grid.weights, np.exp(-1j * np.multiply.outer(grid.nodes, delta)), axes=1)


@lru_cache(maxsize=None)
def _x_frame(basis: SpinBasis) -> np.ndarray:
    return basis_change("x", "z", basis)


def semiclassical_jz(
    psi_a: PureState,
    noise: GaussianNoiseSpec,
    n_points: int = 201,
    span_sigmas: float = 6.0,
    method: str = "analytic",
) -> DensityMatrix:
    """Probe state after a Jz rotation by a Gaussian-distributed angle.

    Jz is diagonal, so the default path multiplies the pure projector by the
    exact Gaussian coherence factors; method="grid" keeps the Riemann-sum
    average as an independent check.
    """
    basis: SpinBasis = psi_a.basis
    if method == "analytic":
        c = gaussian_coherence_factors(basis.m_values, noise)
    elif method == "grid":
        c = _grid_coherence_factors(basis.m_values, gaussian_grid(noise, n_points, span_sigmas))
    else:
        raise ValueError(f"unknown method {method!r}")
    rho = psi_a.projector() * c
    rho = (rho + dag(rho)) / 2.0
    return DensityMatrix(rho, basis=basis)


def noise_from_optics(
    spec: AuxStateSpec, tau: float, basis: FockBasis = None
) -> tuple[GaussianNoiseSpec, GaussianNoiseSpec]:
    """(theta_noise, phi_noise) for a beam-splitter pulse of duration tau.

    Requires a displaced state with real positive amplitude; a Fock state has
    <X> = 0, so no rotation angle can be associated with it.
    """
    if spec.kind != "squeezed_coherent":
        raise ValueError("quadrature noise needs a squeezed-coherent state (Fock has <X> = 0)")
    beta = spec.beta
    if np.imag(beta) != 0.0 or np.real(beta) <= 0.0:
        raise ValueError("real positive coherent amplitude required")
    beta = float(np.real(beta))
    var_x, var_y = quadrature_variances(spec, basis)
    theta_mean = 2.0 * beta * tau
    sigma_theta = abs(theta_mean) * np.sqrt(var_x) / (2.0 * beta)
    sigma_phi = np.sqrt(var_y) / (2.0 * beta)
    return GaussianNoiseSpec(theta_mean, sigma_theta), GaussianNoiseSpec(0.0, sigma_phi)


def semiclassical_bs(
    psi_a: PureState,
    theta_noise: GaussianNoiseSpec,
    phi_noise: GaussianNoiseSpec,
    n_points: int = 201,
    span_sigmas: float = 6.0,
    method: str = "analytic",
) -> DensityMatrix:
    """Probe state after a noisy rotation exp(-i Jz phi) exp(-i Jx theta).

    The two averages are independent Gaussians.  The default path applies the
    theta average analytically in the Jx eigenbasis and the phi average
    analytically in the Jz eigenbasis, stitched together by the x->z basis
    change; method="grid" performs the double Riemann sum as an oracle.
    """
    basis: SpinBasis = psi_a.basis
    if method == "analytic":
        a = _x_frame(basis)
        cx = a.conj().T @ psi_a.amplitudes  # probe coefficients in the Jx eigenbasis
        mx = np.outer(cx, cx.conj()) * gaussian_coherence_factors(basis.m_values, theta_noise)
        rho = (a @ mx @ dag(a)) * gaussian_coherence_factors(basis.m_values, phi_noise)
    elif method == "grid":
        tgrid = gaussian_grid(theta_noise, n_points, span_sigmas)
        pgrid = gaussian_grid(phi_noise, n_points, span_sigmas)
        w, v = np.linalg.eigh(spin_operator("x", basis))
        psi_x = dag(v) @ psi_a.amplitudes
        rho = np.zeros((basis.dim, basis.dim), dtype=complex)
        for theta, wt in zip(tgrid.nodes, tgrid.weights):
            rot = v @ (np.exp(-1j * theta * w) * psi_x)
            proj = np.outer(rot, rot.conj())
            for phi, wp in zip(pgrid.nodes, pgrid.weights):
                zphase = np.exp(-1j * phi * basis.m_values)
                rho += (wt * wp) * (zphase[:, None] * proj * zphase.conj()[None, :])
    else:
        raise ValueError(f"unknown method {method!r}")
    rho = (rho + dag(rho)) / 2.0
    return DensityMatrix(rho, basis=basis)
