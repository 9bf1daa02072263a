"""Truncated-Fock-space auxiliary mode.

Ladder/number/quadrature operators, displacement and squeezing unitaries,
squeezed coherent and Fock states, plus a centralized cutoff search so every
downstream computation runs on a validated truncation.

Sign convention, taken literally from the squeeze generator
exp[r (b^2 - b^dag^2)/2]: for real beta, r > 0 squeezes the amplitude
quadrature X (V(X) = e^{-2r}) and r < 0 squeezes the phase quadrature Y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CutoffSearchError, DimensionMismatchError, TruncationError
from .linalg import dag, require_hermitian, unitary_from_generator, variance
from .states import PureState

AMPLITUDE_GATE = 1e-6  # max |amplitude| tolerated on the last retained level
DEFAULT_CUTOFF_CEILING = 4096


@dataclass(frozen=True)
class FockBasis:
    """Single bosonic mode truncated at occupation n_cut (dimension n_cut+1).

    ``leakage`` records the tail probability achieved by the cutoff search
    that produced this basis (None when constructed by hand).
    """

    n_cut: int
    leakage: float = None

    def __post_init__(self):
        if self.n_cut < 1:
            raise ValueError("n_cut must be >= 1 (dimension >= 2)")

    @property
    def dim(self) -> int:
        return self.n_cut + 1


@dataclass(frozen=True)
class AuxStateSpec:
    """Auxiliary-state recipe: displaced squeezed vacuum or a Fock state."""

    kind: str = "squeezed_coherent"
    beta: complex = 0.0
    r: float = 0.0
    fock_n: int = 0

    def __post_init__(self):
        if self.kind not in ("squeezed_coherent", "fock"):
            raise ValueError(f"unknown aux state kind {self.kind!r}")
        if self.kind == "fock" and self.fock_n < 0:
            raise ValueError("fock_n must be nonnegative")

    @property
    def mean_photons(self) -> float:
        if self.kind == "fock":
            return float(self.fock_n)
        return float(abs(self.beta) ** 2 + np.sinh(self.r) ** 2)


def mode_operator(which: str, basis: FockBasis) -> np.ndarray:
    """One of {annihilation, number, X, Y} on the truncated space.

    X = b + b^dag and Y = -i(b - b^dag); their commutator is 2i only away
    from the truncation boundary.
    """
    dim = basis.dim
    if which == "number":
        return np.diag(np.arange(dim, dtype=complex))
    b = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(1, dim)
    b[ns - 1, ns] = np.sqrt(ns)
    if which == "annihilation":
        return b
    if which == "X":
        return b + dag(b)
    if which == "Y":
        return -1j * (b - dag(b))
    raise ValueError(f"unknown mode operator {which!r}")


def displacement_operator(beta: complex, basis: FockBasis) -> np.ndarray:
    """exp(beta b^dag - beta* b) via eigendecomposition of the Hermitian i*generator."""
    b = mode_operator("annihilation", basis)
    return unitary_from_generator(1j * (beta * dag(b) - np.conj(beta) * b), 1.0)


def squeeze_operator(r: float, basis: FockBasis) -> np.ndarray:
    """exp[r (b^2 - b^dag^2)/2] via eigendecomposition of the Hermitian i*generator."""
    b = mode_operator("annihilation", basis)
    return unitary_from_generator(0.5j * r * (b @ b - dag(b) @ dag(b)), 1.0)


def _build_squeezed_coherent(spec: AuxStateSpec, basis: FockBasis) -> np.ndarray:
    vac = np.zeros(basis.dim, dtype=complex)
    vac[0] = 1.0
    psi = vac if spec.r == 0.0 else squeeze_operator(spec.r, basis) @ vac
    if spec.beta != 0.0:
        psi = displacement_operator(spec.beta, basis) @ psi
    return psi


def squeezed_coherent(spec: AuxStateSpec, basis: FockBasis) -> PureState:
    """Displaced squeezed vacuum D(beta) S(r) |0> on the truncated space.

    Raises TruncationError when the amplitude on the last retained level
    exceeds the gate, i.e. when the basis is too small for the state.
    """
    if spec.kind != "squeezed_coherent":
        raise ValueError(f"spec kind {spec.kind!r} is not squeezed_coherent")
    psi = _build_squeezed_coherent(spec, basis)
    edge = abs(psi[-1])
    if edge > AMPLITUDE_GATE:
        raise TruncationError(
            f"|amplitude| {edge:.2e} at n_cut={basis.n_cut} exceeds {AMPLITUDE_GATE:g}; "
            "increase the cutoff (see choose_cutoff)"
        )
    return PureState(psi, basis)


def fock_state(n: int, basis: FockBasis) -> PureState:
    if not 0 <= n <= basis.n_cut:
        raise IndexError(f"Fock occupation {n} outside [0, {basis.n_cut}]")
    amps = np.zeros(basis.dim, dtype=complex)
    amps[n] = 1.0
    return PureState(amps, basis)


def aux_state(spec: AuxStateSpec, basis: FockBasis) -> PureState:
    """Construct the state described by spec on the given basis."""
    if spec.kind == "fock":
        return fock_state(spec.fock_n, basis)
    return squeezed_coherent(spec, basis)


def aux_qfi(state: PureState | np.ndarray, generator: np.ndarray) -> float:
    """QFI 4 V(G) of a pure auxiliary state for generator G."""
    psi = state.amplitudes if isinstance(state, PureState) else np.asarray(state)
    if psi.shape[0] != generator.shape[0]:
        raise DimensionMismatchError(
            f"state dim {psi.shape[0]} != generator dim {generator.shape[0]}"
        )
    require_hermitian(generator, tol=1e-10, what="generator")
    return 4.0 * variance(generator, psi)


def choose_cutoff(
    spec: AuxStateSpec,
    tolerance: float = 1e-10,
    ceiling: int = DEFAULT_CUTOFF_CEILING,
) -> FockBasis:
    """Smallest admissible cutoff n_cut = ceil(N_B + c e^{|r|} sqrt(N_B+1)).

    c is scanned upward from 8 until the constructed state leaves less than
    ``tolerance`` tail probability beyond n_cut-2 and passes the edge
    amplitude gate.  The achieved leakage is recorded on the returned basis.
    """
    if not 0.0 < tolerance <= 1e-3:
        raise ValueError(f"tolerance must be in (0, 1e-3], got {tolerance:g}")
    n_b = spec.mean_photons
    r = spec.r if spec.kind == "squeezed_coherent" else 0.0
    c = 8
    while True:
        n_cut = max(int(np.ceil(n_b + c * np.exp(abs(r)) * np.sqrt(n_b + 1.0))), 1)
        if n_cut > ceiling:
            raise CutoffSearchError(
                f"cutoff search exceeded ceiling {ceiling} for N_B={n_b:g}, r={r:g}"
            )
        basis = FockBasis(n_cut)
        if spec.kind == "fock":
            if spec.fock_n <= n_cut - 2:
                return FockBasis(n_cut, leakage=0.0)
        else:
            psi = _build_squeezed_coherent(spec, basis)
            tail = float(np.sum(np.abs(psi[n_cut - 1 :]) ** 2))
            if tail < tolerance and abs(psi[-1]) <= AMPLITUDE_GATE:
                return FockBasis(n_cut, leakage=tail)
        c += 1


def number_variance(spec: AuxStateSpec, basis: FockBasis = None) -> float:
    """V(n) of the specified state.

    Closed form when no basis is given: |beta cosh r - beta* sinh r|^2 +
    2 cosh^2(r) sinh^2(r) for squeezed coherent states (amplitude squeezing
    r > 0 narrows the number distribution for real beta), 0 for Fock states.
    """
    if basis is not None:
        psi = aux_state(spec, basis)
        return variance(mode_operator("number", basis), psi.amplitudes)
    if spec.kind == "fock":
        return 0.0
    ch, sh = np.cosh(spec.r), np.sinh(spec.r)
    return float(abs(spec.beta * ch - np.conj(spec.beta) * sh) ** 2 + 2.0 * ch**2 * sh**2)


def quadrature_variances(spec: AuxStateSpec, basis: FockBasis = None) -> tuple[float, float]:
    """(V(X), V(Y)) for the specified state.

    Closed form when no basis is given: e^{-2r}, e^{+2r} for squeezed
    coherent states and 2n+1, 2n+1 for Fock states; numeric on the truncated
    basis otherwise.
    """
    if basis is None:
        if spec.kind == "fock":
            v = 2.0 * spec.fock_n + 1.0
            return v, v
        return float(np.exp(-2.0 * spec.r)), float(np.exp(2.0 * spec.r))
    psi = aux_state(spec, basis)
    return (
        variance(mode_operator("X", basis), psi.amplitudes),
        variance(mode_operator("Y", basis), psi.amplitudes),
    )
