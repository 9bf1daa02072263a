"""Collective pseudo-spin operators, rotations and probe states.

Works on the (N_A+1)-dimensional symmetric subspace of N_A two-level bosons,
i.e. a single spin j = N_A/2.  Basis ordering is fixed throughout: Jz
eigenvalues ascending, index k <-> m = k - N_A/2, so the last basis vector
is the all-up state |N_A, 0>.

Angle conventions (they differ, and both are load-bearing):

* ``rotation_operator(theta, phi)`` is the literal product
  exp(-i Jz phi) exp(-i Jx theta); no global-phase correction is applied.
  ``coherent_spin_state`` rotates the all-up state with it, which lands the
  Bloch vector at (sin(theta)sin(phi), -sin(theta)cos(phi), cos(theta)) --
  e.g. (pi/2, 0) points along -y.
* ``spin_cat`` and ``axis_operator`` use standard spherical angles: the cat
  axis is (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)) -- e.g.
  (pi/2, pi/2) is the Jy cat and (0, 0) the NOON state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OddAtomNumberError
from .linalg import dag, unitary_from_generator
from .states import PureState

_AXES = ("x", "y", "z")


@dataclass(frozen=True)
class SpinBasis:
    """Symmetric subspace of n_atoms two-level particles (dimension n_atoms+1)."""

    n_atoms: int

    def __post_init__(self):
        if self.n_atoms < 0 or self.n_atoms != int(self.n_atoms):
            raise ValueError(f"n_atoms must be a nonnegative integer, got {self.n_atoms}")

    @property
    def dim(self) -> int:
        return self.n_atoms + 1

    @property
    def j(self) -> float:
        return self.n_atoms / 2.0

    @property
    def m_values(self) -> np.ndarray:
        """Jz eigenvalues, ascending: -j, -j+1, ..., +j."""
        return np.arange(self.dim) - self.j


def spin_operator(axis: str, basis: SpinBasis) -> np.ndarray:
    """Angular-momentum matrix for axis in {x, y, z, plus, minus}.

    Jz is diagonal in the basis ordering above; J+/- carry the standard
    sqrt(j(j+1) - m(m+-1)) matrix elements; Jx = (J+ + J-)/2 and
    Jy = (J+ - J-)/(2i).
    """
    j = basis.j
    m = basis.m_values
    if axis == "z":
        return np.diag(m.astype(complex))
    raising = np.zeros((basis.dim, basis.dim), dtype=complex)
    mm = m[:-1]  # J+ |m> lands on |m+1>; the top state is annihilated
    raising[np.arange(1, basis.dim), np.arange(basis.dim - 1)] = np.sqrt(
        j * (j + 1) - mm * (mm + 1)
    )
    if axis == "plus":
        return raising
    if axis == "minus":
        return dag(raising)
    if axis == "x":
        return (raising + dag(raising)) / 2.0
    if axis == "y":
        return (raising - dag(raising)) / 2.0j
    raise ValueError(f"unknown axis {axis!r}")


def rotation_operator(theta: float, phi: float, basis: SpinBasis) -> np.ndarray:
    """exp(-i Jz phi) exp(-i Jx theta), each factor by eigendecomposition."""
    ux = unitary_from_generator(spin_operator("x", basis), theta)
    zphase = np.exp(-1j * phi * basis.m_values)
    return zphase[:, None] * ux


def axis_operator(theta: float, phi: float, basis: SpinBasis) -> np.ndarray:
    """Spin component along the standard spherical axis (theta, phi)."""
    nx = np.sin(theta) * np.cos(phi)
    ny = np.sin(theta) * np.sin(phi)
    nz = np.cos(theta)
    return (
        nx * spin_operator("x", basis)
        + ny * spin_operator("y", basis)
        + nz * spin_operator("z", basis)
    )


def coherent_spin_state(theta: float, phi: float, basis: SpinBasis) -> PureState:
    """Rotated all-up state R(theta, phi)|N_A, 0>; an uncorrelated ensemble."""
    amps = rotation_operator(theta, phi, basis)[:, -1].copy()
    return PureState(amps, basis)


def spin_cat(theta: float, phi: float, rel_phase: float, basis: SpinBasis) -> PureState:
    """Equal superposition of the extreme spin eigenstates along (theta, phi).

    (|max> + exp(i rel_phase)|min>)/sqrt(2), where |max>, |min> are the
    m = +-N_A/2 basis vectors rotated onto the standard spherical axis with
    exp(-i Jz phi) exp(-i Jy theta).  The two branches are orthogonal, so
    the normalization is exact.
    """
    uy = unitary_from_generator(spin_operator("y", basis), theta)
    zphase = np.exp(-1j * phi * basis.m_values)
    rot = zphase[:, None] * uy
    amps = (rot[:, -1] + np.exp(1j * rel_phase) * rot[:, 0]) / np.sqrt(2.0)
    return PureState(amps, basis)


def named_state(kind: str, basis: SpinBasis) -> PureState:
    """Construct one of the stock probe states: noon, twin_fock or oat_cat."""
    n = basis.n_atoms
    if kind == "noon":
        amps = np.zeros(basis.dim, dtype=complex)
        amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
        return PureState(amps, basis)
    if kind == "twin_fock":
        if n % 2 != 0:
            raise OddAtomNumberError(f"twin-Fock state needs even atom number, got {n}")
        amps = np.zeros(basis.dim, dtype=complex)
        amps[n // 2] = 1.0
        return PureState(amps, basis)
    if kind == "oat_cat":
        # one-axis twisting of the equatorial state for a quarter period
        css = coherent_spin_state(np.pi / 2, 0.0, basis)
        phases = np.exp(-1j * (np.pi / 2) * basis.m_values**2)
        return PureState(phases * css.amplitudes, basis)
    raise ValueError(f"unknown state kind {kind!r}")


def basis_change(from_axis: str, to_axis: str, basis: SpinBasis) -> np.ndarray:
    """Overlap matrix A[j, k] = <j; to_axis | k; from_axis>.

    Columns are eigenvectors of the from-axis spin operator expressed in the
    to-axis eigenbasis, ordered by ascending eigenvalue, with the phase of
    each column fixed so its largest-magnitude entry is real positive.
    """
    if from_axis not in _AXES or to_axis not in _AXES:
        raise ValueError(f"axes must be in {_AXES}")
    a = _eigenvector_frame(from_axis, basis)
    if to_axis != "z":
        a = dag(_eigenvector_frame(to_axis, basis)) @ a
    return _fix_column_phases(a)


def _eigenvector_frame(axis: str, basis: SpinBasis) -> np.ndarray:
    """Eigenvectors of J_axis in the Jz basis, columns by ascending eigenvalue."""
    if axis == "z":
        return np.eye(basis.dim, dtype=complex)
    _, v = np.linalg.eigh(spin_operator(axis, basis))
    return _fix_column_phases(v)


def _fix_column_phases(v: np.ndarray) -> np.ndarray:
    out = v.copy()
    for k in range(out.shape[1]):
        lead = np.argmax(np.abs(out[:, k]))
        phase = out[lead, k] / abs(out[lead, k])
        out[:, k] = out[:, k] / phase
    return out
