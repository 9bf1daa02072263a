"""Information metrics and closed-form decoherence predictions.

Quantum Fisher information for pure and mixed states, an independent
fidelity-based QFI oracle, coherence matrices (numeric overlaps and closed
forms for squeezed coherent light), short-time/revival approximations for
cat states, the approximate beam-splitter generator result, and the photon
budgets needed to keep a rotated cat above twin-Fock usefulness.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import bosonic, evolution, semiclassical, spin_algebra
from .bosonic import AuxStateSpec, choose_cutoff, number_variance
from .errors import (
    BracketError,
    BranchTrackingError,
    DimensionMismatchError,
    NumericalInstabilityError,
    ParameterRangeError,
    UnsupportedAngleError,
)
from .linalg import dag, require_hermitian, unitary_from_generator, variance
from .states import DensityMatrix, PureState

DEFAULT_EIGEN_THRESHOLD = 1e-12


@dataclass(frozen=True)
class QfiResult:
    """QFI value plus the diagnostics of the eigenpair sum that produced it."""

    value: float
    generator_label: str = ""
    eigen_threshold_used: float = 0.0
    discarded_pair_weight: float = 0.0

    def __float__(self) -> float:
        return self.value


def qfi_pure(psi: PureState, generator: np.ndarray, label: str = "") -> QfiResult:
    """Pure-state QFI 4 V(G)."""
    if psi.dim != generator.shape[0]:
        raise DimensionMismatchError(f"state dim {psi.dim} != generator dim {generator.shape[0]}")
    require_hermitian(generator, tol=1e-10, what="generator")
    return QfiResult(4.0 * variance(generator, psi.amplitudes), generator_label=label)


def qfi_mixed(
    rho: DensityMatrix | np.ndarray,
    generator: np.ndarray,
    eigen_threshold: float = DEFAULT_EIGEN_THRESHOLD,
    label: str = "",
) -> QfiResult:
    """Mixed-state QFI 2 sum_ij (l_i - l_j)^2 / (l_i + l_j) |<e_i|G|e_j>|^2.

    Eigenpairs with l_i + l_j below ``eigen_threshold`` are skipped (they are
    0/0 artifacts of null subspaces); the skipped |<e_i|G|e_j>|^2 mass is
    reported in the result for inspection.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(np.asarray(rho))
    if rho.dim != generator.shape[0]:
        raise DimensionMismatchError(f"rho dim {rho.dim} != generator dim {generator.shape[0]}")
    require_hermitian(generator, tol=1e-10, what="generator")
    w, v = rho.eigh()
    g = dag(v) @ generator @ v
    gsq = np.abs(g) ** 2
    s = np.add.outer(w, w)
    d = np.subtract.outer(w, w)
    mask = s > eigen_threshold
    terms = np.zeros_like(s)
    np.divide(2.0 * d * d, s, out=terms, where=mask)
    value = float(np.sum(terms * gsq))
    discarded = float(np.sum(gsq[~mask]))
    return QfiResult(value, label, eigen_threshold, discarded)


def _sqrt_psd(rho: DensityMatrix) -> np.ndarray:
    w, v = rho.eigh()
    return (v * np.sqrt(w)) @ dag(v)


def uhlmann_fidelity(rho: DensityMatrix, sigma: np.ndarray) -> float:
    """F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    sq = _sqrt_psd(rho)
    ev = np.linalg.eigvalsh(sq @ sigma @ sq)
    return float(np.sum(np.sqrt(np.clip(ev, 0.0, None))) ** 2)


def qfi_fidelity_oracle(rho: DensityMatrix | np.ndarray, generator: np.ndarray, dchi: float = 1e-3) -> float:
    """QFI estimated from the fidelity drop under exp(-i G dchi).

    8 (1 - sqrt(F_U)) / dchi^2 evaluated at dchi and dchi/2, Richardson
    extrapolated (the error is even in dchi).  Entirely independent of the
    eigenpair formula, so it serves as a cross-check oracle.
    """
    if not 1e-5 <= dchi <= 1e-3:
        raise ParameterRangeError(f"dchi must be in [1e-5, 1e-3], got {dchi:g}")
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(np.asarray(rho))
    require_hermitian(generator, tol=1e-10, what="generator")

    def estimate(step: float) -> float:
        u = unitary_from_generator(generator, step)
        sigma = u @ rho.entries @ dag(u)
        return 8.0 * (1.0 - np.sqrt(uhlmann_fidelity(rho, sigma))) / step**2

    coarse = estimate(dchi)
    fine = estimate(dchi / 2.0)
    result = (4.0 * fine - coarse) / 3.0
    scale = max(abs(fine), abs(coarse), 1e-9)
    if abs(fine - coarse) > 0.01 * scale:
        raise NumericalInstabilityError(
            f"fidelity QFI estimates disagree beyond 1%: {coarse:.6g} vs {fine:.6g}"
        )
    return float(result)


def purity(rho: DensityMatrix | np.ndarray) -> float:
    entries = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return float(np.real(np.trace(entries @ entries)))


# ---------------------------------------------------------------------------
# coherence matrices


def coherence_numeric(
    psi_b: PureState | np.ndarray,
    generator_b: np.ndarray,
    tau: float,
    level_values: np.ndarray,
) -> np.ndarray:
    """Overlap matrix C[m, n] = <psi_B| exp(-i (l_m - l_n) G_B tau) |psi_B>.

    l_m are the probe levels coupled by the interaction; G_B is diagonalized
    once and the matrix is assembled from the spectral weights of psi_B.
    """
    psi = psi_b.amplitudes if isinstance(psi_b, PureState) else np.asarray(psi_b)
    if psi.shape[0] != generator_b.shape[0]:
        raise DimensionMismatchError("state and generator dimensions differ")
    require_hermitian(generator_b, tol=1e-10, what="generator")
    levels = np.asarray(level_values, dtype=float)
    if np.allclose(generator_b, np.diag(np.diagonal(generator_b))):
        g = np.real(np.diagonal(generator_b))
        weights = np.abs(psi) ** 2
    else:
        g, v = np.linalg.eigh(generator_b)
        weights = np.abs(dag(v) @ psi) ** 2
    delta = np.subtract.outer(levels, levels)
    phases = np.exp(-1j * tau * np.multiply.outer(delta, g))
    return phases @ weights


def coherence_coherent_analytic(beta: complex, tau, delta: int):
    """Closed-form coherence of coherent light: exp[N_B (e^{-i delta tau} - 1)].

    |C|^2 = exp(2 N_B (cos(delta tau) - 1)); periodic with full revivals at
    delta * tau = 2 pi k.
    """
    n_b = abs(beta) ** 2
    return np.exp(n_b * (np.exp(-1j * delta * np.asarray(tau)) - 1.0))


def coherence_squeezed_analytic(
    beta: float,
    r: float,
    tau,
    delta: int,
    r_eps: float = 1e-6,
    path_points: int = 129,
):
    """Closed-form coherence of squeezed coherent light (real beta).

    The complex square root in the denominator is followed by phase
    continuity along a tau path starting from C(0) = 1; scalar tau inputs are
    expanded to an internal path.  Below |r| <= r_eps the expression
    degenerates (coth r diverges) and the coherent-light form is returned.
    """
    scalar = np.ndim(tau) == 0
    if abs(r) <= r_eps:
        out = coherence_coherent_analytic(beta, tau, delta)
        return complex(out) if scalar else out
    if scalar:
        path = np.linspace(0.0, float(tau), path_points)
    else:
        path = np.concatenate([[0.0], np.asarray(tau, dtype=float)])
    theta = delta * path
    phase = np.exp(-2j * theta)
    root_arg = np.cosh(r) ** 2 - phase * np.sinh(r) ** 2
    angles = np.unwrap(np.angle(root_arg))
    if np.max(np.abs(np.diff(angles)), initial=0.0) > np.pi / 2:
        raise BranchTrackingError("tau path too coarse to follow the square-root branch")
    denom = np.sqrt(np.abs(root_arg)) * np.exp(0.5j * angles)
    coth = np.cosh(r) / np.sinh(r)
    e = np.exp(-1j * theta)
    numer = np.exp(beta**2 * (1.0 + coth) * (e - 1.0) / (e + coth))
    c = numer / denom
    return complex(c[-1]) if scalar else c[1:]


def aux_coherence_matrix(spec: AuxStateSpec, tau: float, level_values: np.ndarray) -> np.ndarray:
    """Closed-form coherence matrix C[m, n] for a spec'd auxiliary state.

    Level values must be integer-spaced (Jz eigenvalues are); Fock states
    give pure phases exp(-i (m-n) n_F tau).
    """
    levels = np.asarray(level_values, dtype=float)
    deltas = np.round(np.subtract.outer(levels, levels)).astype(int)
    if spec.kind == "fock":
        return np.exp(-1j * deltas * spec.fock_n * tau)
    unique = np.unique(np.abs(deltas))
    table = {}
    for d in unique:
        table[int(d)] = (
            1.0 + 0.0j
            if d == 0
            else coherence_squeezed_analytic(float(np.real(spec.beta)), spec.r, tau, int(d))
        )
    c = np.empty(deltas.shape, dtype=complex)
    for d, val in table.items():
        c[deltas == d] = val
        c[deltas == -d] = np.conj(val)
    return c


def check_coherence_matrix(c: np.ndarray, tol: float = 1e-12) -> None:
    """Assert the structural invariants of a coherence matrix."""
    if np.max(np.abs(np.diagonal(c) - 1.0)) > tol:
        raise ValueError("coherence diagonal must be exactly 1")
    if np.max(np.abs(c - dag(c))) > tol:
        raise ValueError("coherence matrix must be conjugate-symmetric")
    if np.max(np.abs(c)) > 1.0 + tol:
        raise ValueError("coherence magnitudes must not exceed 1")


# ---------------------------------------------------------------------------
# closed-form predictions for cat probes


def short_time_predictions(f_b: float, n_atoms: int, tau) -> tuple:
    """Quadratic-in-time decay (gamma, F_A) of a cat dephased at rate F_B.

    gamma ~ exp(-F_B N^2 tau^2 / 8), F_A ~ N^2 exp(-F_B N^2 tau^2 / 4); holds
    for any auxiliary state, but only while N tau sqrt(F_B) is small.
    """
    t2 = np.asarray(tau) ** 2
    gamma = np.exp(-f_b * n_atoms**2 * t2 / 8.0)
    f_a = n_atoms**2 * np.exp(-f_b * n_atoms**2 * t2 / 4.0)
    return gamma, f_a


def qfi_revival_prediction(f_b: float, n_atoms: int, tau, beta: float = None, r: float = None):
    """Cat QFI N^2 exp(F_B [cos(N tau) - 1] / 2) including coherence revivals.

    Specific to squeezed coherent (and trivially Fock) auxiliary states with
    the bare number generator; requires beta^2 >> sinh^2(r), which is checked
    as a warning when beta and r are supplied.
    """
    if beta is not None and r is not None and r != 0.0:
        if abs(beta) ** 2 < 10.0 * np.sinh(r) ** 2:
            warnings.warn(
                "revival prediction outside its validity range (beta^2 < 10 sinh^2 r)",
                stacklevel=2,
            )
    return n_atoms**2 * np.exp(0.5 * f_b * (np.cos(n_atoms * np.asarray(tau)) - 1.0))


def cat_qfi_from_purity(gamma: float, n_atoms: int) -> float:
    """F_A = N^2 (2 gamma - 1) for a cat along the dephasing axis."""
    if not 0.5 - 1e-12 <= gamma <= 1.0 + 1e-12:
        raise ParameterRangeError(f"cat purity must lie in [1/2, 1], got {gamma}")
    return n_atoms**2 * (2.0 * gamma - 1.0)


def cat_purity_from_qfi(f_a: float, n_atoms: int) -> float:
    if not -1e-9 <= f_a <= n_atoms**2 * (1.0 + 1e-12):
        raise ParameterRangeError(f"cat QFI must lie in [0, N^2], got {f_a}")
    return 0.5 * (f_a / n_atoms**2 + 1.0)


def cat_purity_from_cmax(c_max: complex) -> float:
    """gamma = (1 + |C_max|^2)/2 from the extreme off-diagonal coherence."""
    mag = abs(c_max)
    if mag > 1.0 + 1e-12:
        raise ParameterRangeError(f"|C_max| must not exceed 1, got {mag}")
    return 0.5 * (1.0 + mag**2)


def cat_cmax_from_purity(gamma: float) -> float:
    if not 0.5 - 1e-12 <= gamma <= 1.0 + 1e-12:
        raise ParameterRangeError(f"cat purity must lie in [1/2, 1], got {gamma}")
    return float(np.sqrt(max(2.0 * gamma - 1.0, 0.0)))


# ---------------------------------------------------------------------------
# beam-splitter generator approximation


def beamsplitter_aux_qfi(beta: float, r: float = 0.0) -> float:
    """QFI of the effective beam-splitter generator Y/<X>: V(Y)/|beta|^2 = e^{2r}/beta^2."""
    if beta <= 0:
        raise ParameterRangeError("beta must be real positive")
    return float(np.exp(2.0 * r) / beta**2)


def beamsplitter_generator_prediction(beta: float, r: float, n_atoms: int) -> float:
    """Cat QFI after a quarter rotation: N^2 exp(-F_B N^2/4), F_B = V(Y)/beta^2.

    Phase squeezing (r < 0) lowers V(Y) and therefore costs less coherence
    than amplitude squeezing at the same beta.
    """
    f_b = beamsplitter_aux_qfi(beta, r)
    return float(n_atoms**2 * np.exp(-0.25 * f_b * n_atoms**2))


# ---------------------------------------------------------------------------
# photon budgets: occupation needed to stay above twin-Fock usefulness

LN2 = float(np.log(2.0))
SC_PHASE_DIFFUSION_STEP = np.pi / 3  # empirical rule of thumb for rotated cats

_REGIMES = ("noon_jz", "jycat_jz", "jycat_bs")


def nb_tfs(regime: str, n_atoms: int, angle: float, r: float = 0.0) -> float:
    """Closed-form photon number keeping F_A >= N^2/2 after a rotation.

    noon_jz:  phi^2 e^{-2r} N^2 / ln 2   (cat along the rotation axis)
    jycat_jz: (phi / (pi/3))^2 e^{-2r}   (heuristic; independent of N)
    jycat_bs: e^{2r} N^2 / (4 ln 2)      (quarter rotation onto the cat axis)
    """
    if regime not in _REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    if angle <= 0:
        raise ParameterRangeError("rotation angle must be positive")
    if regime == "noon_jz":
        return float(angle**2 * np.exp(-2.0 * r) * n_atoms**2 / LN2)
    if regime == "jycat_jz":
        return float((angle / SC_PHASE_DIFFUSION_STEP) ** 2 * np.exp(-2.0 * r))
    if abs(angle - np.pi / 2) > 1e-9:
        raise UnsupportedAngleError("the beam-splitter budget is derived for angle pi/2 only")
    return float(np.exp(2.0 * r) * n_atoms**2 / (4.0 * LN2))


@dataclass(frozen=True)
class NbTfsResult:
    """Empirical photon budget: bisection result plus how it was obtained."""

    value: float
    crossed: bool
    engine: str
    evaluations: int
    bracket: tuple


def _jz_regime_qfi(
    regime: str,
    probe: PureState,
    generator: np.ndarray,
    spec: AuxStateSpec,
    angle: float,
    engine: str,
    cutoff_tolerance: float,
) -> float:
    n_b = spec.mean_photons
    tau = angle / n_b
    if engine == "exact":
        basis_b = choose_cutoff(spec, cutoff_tolerance, ceiling=200_000)
        psi_b = bosonic.aux_state(spec, basis_b)
        branches = evolution.separable_evolve(probe, psi_b, tau, support_only=True)
        rho = evolution.reduced_density_separable(branches)
    elif engine == "semiclassical":
        sigma = np.sqrt(number_variance(spec)) * tau
        rho = semiclassical.semiclassical_jz(probe, semiclassical.GaussianNoiseSpec(angle, sigma))
    elif engine == "analytic":
        c = aux_coherence_matrix(spec, tau, probe.basis.m_values)
        rho_entries = probe.projector() * c
        rho = DensityMatrix((rho_entries + dag(rho_entries)) / 2.0, basis=probe.basis)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return qfi_mixed(rho, generator).value


def _bs_semiclassical_qfi(probe, generator, spec, angle) -> float:
    beta = float(np.real(spec.beta))
    tau = angle / (2.0 * beta)
    theta_noise, phi_noise = semiclassical.noise_from_optics(spec, tau)
    rho = semiclassical.semiclassical_bs(probe, theta_noise, phi_noise)
    return qfi_mixed(rho, generator).value


class _BsExactEvaluator:
    """Exact composite beam-splitter QFI with one shared eigendecomposition.

    The coupling matrix does not depend on beta, so a single cutoff sized for
    the largest amplitude in the bracket serves every bisection step.
    """

    def __init__(self, probe, generator, angle, r, beta_sq_max, cutoff_tolerance, margin=None):
        self.probe = probe
        self.generator = generator
        self.angle = angle
        self.r = r
        self.cutoff_tolerance = cutoff_tolerance
        self.margin = margin if margin is not None else probe.basis.n_atoms + 6
        self._build(beta_sq_max)

    def _build(self, beta_sq_max):
        top = AuxStateSpec(beta=np.sqrt(beta_sq_max), r=self.r)
        base = choose_cutoff(top, self.cutoff_tolerance)
        self.fock_basis = bosonic.FockBasis(base.n_cut + self.margin, leakage=base.leakage)
        self.basis = evolution.CompositeBasis(self.probe.basis, self.fock_basis)
        self.beta_sq_max = beta_sq_max
        h = evolution.beamsplitter_hamiltonian(self.basis)
        self.propagator = evolution.make_propagator(h)

    def __call__(self, beta_sq: float) -> float:
        if beta_sq > self.beta_sq_max:
            self._build(beta_sq * 2.0)
        spec = AuxStateSpec(beta=np.sqrt(beta_sq), r=self.r)
        psi_b = bosonic.aux_state(spec, self.fock_basis)
        psi = evolution.product_state(self.probe, psi_b)
        tau = self.angle / (2.0 * np.sqrt(beta_sq))
        evolved = evolution.evolve_full(None, psi, tau, propagator=self.propagator)
        rho = evolution.partial_trace_b(evolved, self.basis)
        return qfi_mixed(rho, self.generator).value


def nb_tfs_empirical(
    regime: str,
    n_atoms: int,
    angle: float,
    aux_family: AuxStateSpec,
    engine: str = "auto",
    bracket: tuple = (1.0, 1e7),
    rel_width: float = 1e-3,
    size_threshold: int = 24,
    cutoff_tolerance: float = 1e-10,
) -> NbTfsResult:
    """Bisection on |beta|^2 (r fixed) until F_A crosses N^2/2.

    The photon number is scanned geometrically downward from the top of the
    bracket (the large-N_B side is the monotone regime) and local
    monotonicity is verified by sampling before bisecting.  engine="auto"
    follows problem size: exact composite/branch evolution up to
    ``size_threshold`` atoms, the semi-classical picture beyond.
    """
    if regime not in _REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    basis = spin_algebra.SpinBasis(n_atoms)
    if regime == "noon_jz":
        probe = spin_algebra.named_state("noon", basis)
        generator = spin_algebra.spin_operator("z", basis)
    else:
        probe = spin_algebra.spin_cat(np.pi / 2, np.pi / 2, 0.0, basis)
        generator = spin_algebra.spin_operator(
            "y" if regime == "jycat_jz" else "z", basis
        )
    target = n_atoms**2 / 2.0

    if aux_family.kind == "fock":
        if regime == "jycat_bs":
            raise BracketError("a Fock state has <X> = 0 and cannot drive the rotation")
        # zero generator variance: no coherence is lost, the threshold is never crossed
        return NbTfsResult(bracket[0], crossed=False, engine="analytic", evaluations=0, bracket=bracket)

    if engine == "auto":
        engine = "exact" if n_atoms <= size_threshold else "semiclassical"

    evaluations = 0

    if regime == "jycat_bs":
        if engine == "exact":
            # cheap semi-classical pre-bracket, then exact refinement
            def f_cheap(beta_sq):
                spec = AuxStateSpec(beta=np.sqrt(beta_sq), r=aux_family.r)
                return _bs_semiclassical_qfi(probe, generator, spec, angle)

            lo, hi, crossed, n_ev = _scan_bracket(f_cheap, bracket, target)
            evaluations += n_ev
            if not crossed:
                return NbTfsResult(bracket[0], False, "semiclassical-prescan", evaluations, bracket)
            lo, hi = max(bracket[0], lo / 4.0), min(bracket[1], hi * 4.0)
            f = _BsExactEvaluator(probe, generator, angle, aux_family.r, hi, cutoff_tolerance)
            lo, hi, crossed, n_ev = _scan_bracket(f, (lo, hi), target, factor=2.0)
            evaluations += n_ev
            if not crossed:
                return NbTfsResult(lo, False, engine, evaluations, (lo, hi))
        else:
            def f(beta_sq):
                spec = AuxStateSpec(beta=np.sqrt(beta_sq), r=aux_family.r)
                return _bs_semiclassical_qfi(probe, generator, spec, angle)

            lo, hi, crossed, n_ev = _scan_bracket(f, bracket, target)
            evaluations += n_ev
            if not crossed:
                return NbTfsResult(bracket[0], False, engine, evaluations, bracket)
    else:
        def f(beta_sq):
            spec = AuxStateSpec(beta=np.sqrt(beta_sq), r=aux_family.r)
            return _jz_regime_qfi(regime, probe, generator, spec, angle, engine, cutoff_tolerance)

        lo, hi, crossed, n_ev = _scan_bracket(f, bracket, target)
        evaluations += n_ev
        if not crossed:
            return NbTfsResult(bracket[0], False, engine, evaluations, bracket)

    evaluations += _verify_monotone(f, lo, hi)
    value, n_ev = _bisect(f, lo, hi, target, rel_width)
    evaluations += n_ev
    return NbTfsResult(value, True, engine, evaluations, (lo, hi))


def _scan_bracket(f, bracket, target, factor=2.0):
    """Walk geometrically down from the top of the bracket to enclose the crossing."""
    lo_limit, hi = bracket
    if f(hi) < target:
        raise BracketError(f"F_A below target even at N_B = {hi:g}")
    n_ev = 1
    upper = hi
    while upper > lo_limit:
        lower = max(upper / factor, lo_limit)
        n_ev += 1
        if f(lower) < target:
            return lower, upper, True, n_ev
        upper = lower
    return lo_limit, hi, False, n_ev


def _verify_monotone(f, lo, hi, samples=5, slack=1e-9):
    xs = np.geomspace(lo, hi, samples)
    vals = [f(x) for x in xs]
    if np.any(np.diff(vals) < -slack * max(abs(v) for v in vals)):
        raise BracketError(f"F_A not monotone on [{lo:g}, {hi:g}]: {vals}")
    return samples


def _bisect(f, lo, hi, target, rel_width):
    n_ev = 0
    while (hi - lo) > rel_width * 0.5 * (hi + lo):
        mid = np.sqrt(lo * hi)
        n_ev += 1
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return float(np.sqrt(lo * hi)), n_ev
