"""Truncated Fock-space states: cat states, Fock states, thermal weights.

All photon states live on the truncated basis |0>..|n_max>.  Construction
routines guarantee that the probability weight lost to truncation stays below
an explicit tail tolerance, so downstream sums over n can be treated as if
they ran to infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TruncationSpec",
    "PhotonAmplitudes",
    "JointState",
    "ThermalEnsemble",
    "choose_truncation",
    "make_cat",
    "make_fock",
    "thermal_weights",
    "make_thermal_ensemble",
    "joint_up",
    "cat_norm_sq",
    "cat_mean_photon",
]

NORM_TOL = 1e-12

# extra Fock levels beyond the tail bound; counter-rotating dynamics
# populates neighboring sectors
TRUNCATION_PAD = 5


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TruncationSpec:
    """Highest retained Fock level and the admissible weight above it."""

    n_max: int
    tail_tolerance: float = 1e-12

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {self.n_max}")
        if not (0.0 < self.tail_tolerance < 1.0):
            raise ValueError("tail_tolerance must lie in (0, 1)")

    @property
    def dim(self) -> int:
        return self.n_max + 1


@dataclass(frozen=True)
class PhotonAmplitudes:
    """Complex amplitudes c_n over |0>..|n_max>, unit norm."""

    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"photon amplitudes not normalized: |c|^2 = {norm!r}")
        object.__setattr__(self, "c", _readonly(c))

    @property
    def n_max(self) -> int:
        return len(self.c) - 1

    def weights(self) -> np.ndarray:
        return np.abs(self.c) ** 2

    def mean_photon(self) -> float:
        n = np.arange(len(self.c))
        return float(np.sum(n * self.weights()))


@dataclass(frozen=True)
class JointState:
    """Amplitudes over the product basis {|up,n>, |down,n>}, n = 0..n_max.

    ``t`` is the time label in units of 1/sqrt(v); None before the state has
    been handed to the propagator.
    """

    up: np.ndarray
    down: np.ndarray
    t: float | None = None

    def __post_init__(self):
        up = np.asarray(self.up, dtype=complex)
        down = np.asarray(self.down, dtype=complex)
        if up.shape != down.shape or up.ndim != 1:
            raise ValueError("up/down amplitude vectors must be 1-D of equal length")
        object.__setattr__(self, "up", _readonly(up))
        object.__setattr__(self, "down", _readonly(down))

    @property
    def n_max(self) -> int:
        return len(self.up) - 1

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.up) ** 2) + np.sum(np.abs(self.down) ** 2))

    def with_time(self, t: float) -> "JointState":
        return JointState(self.up, self.down, t)


@dataclass(frozen=True)
class ThermalEnsemble:
    """Boltzmann weights p(n) plus one initial |up,n> state per Fock level."""

    weights: np.ndarray
    sector_states: tuple = field(default_factory=tuple)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0):
            raise ValueError("thermal weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > NORM_TOL:
            raise ValueError("thermal weights must sum to 1")
        object.__setattr__(self, "weights", _readonly(w))
        object.__setattr__(self, "sector_states", tuple(self.sector_states))


def _poisson_tail_nmax(lam: float, eps: float) -> int:
    """Smallest N with P[Poisson(lam) > N] <= eps, by direct summation."""
    if lam <= 0.0:
        return 0
    term = math.exp(-lam)
    cum = term
    n = 0
    while 1.0 - cum > eps:
        n += 1
        term *= lam / n
        cum += term
        if n > 100000:
            raise RuntimeError("Poisson tail summation failed to converge")
    return n


def _geometric_tail_nmax(mean: float, eps: float) -> int:
    """Smallest N with geometric(mean) tail above N <= eps."""
    if mean <= 0.0:
        return 0
    q = mean / (1.0 + mean)
    # tail above N is q^(N+1)
    n = 0
    tail = q
    while tail > eps:
        n += 1
        tail *= q
        if n > 100000:
            raise RuntimeError("geometric tail summation failed to converge")
    return n


def choose_truncation(mean_photon: float, eps: float, kind: str = "poisson") -> TruncationSpec:
    """Pick n_max by direct tail summation so that the photon-number tail
    above it is <= eps, then pad by a safety margin.

    kind selects the distribution family: "poisson" for coherent
    superpositions, "geometric" for thermal fields (much heavier tail at the
    same mean).
    """
    if mean_photon < 0:
        raise ValueError("mean_photon must be >= 0")
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must lie in (0, 1)")
    if kind == "poisson":
        n = _poisson_tail_nmax(mean_photon, eps)
    elif kind == "geometric":
        n = _geometric_tail_nmax(mean_photon, eps)
    else:
        raise ValueError(f"unknown distribution kind {kind!r}")
    return TruncationSpec(n_max=n + TRUNCATION_PAD, tail_tolerance=eps)


def cat_norm_sq(alpha: float, theta: float) -> float:
    """Normalization N_theta^2 = 2(1 + cos(theta) exp(-2 alpha^2))."""
    return 2.0 * (1.0 + math.cos(theta) * math.exp(-2.0 * alpha * alpha))


def cat_weights_exact(alpha: float, theta: float, n: np.ndarray) -> np.ndarray:
    """Exact |C_n|^2 of the coherent-superposition state, untruncated norm 1."""
    n = np.atleast_1d(np.asarray(n, dtype=int))
    lam = alpha * alpha
    nsq = cat_norm_sq(alpha, theta)
    lgam = np.array([math.lgamma(k + 1) for k in n])
    if lam > 0:
        pois = np.exp(-lam + n * math.log(lam) - lgam)
    else:
        pois = (n == 0).astype(float)
    parity = 2.0 * (1.0 + math.cos(theta) * (-1.0) ** n)
    return pois * parity / nsq


def cat_mean_photon(alpha: float, theta: float) -> float:
    """Mean photon number 2 alpha^2 (1 - exp(-2 alpha^2) cos theta) / N_theta^2."""
    lam = alpha * alpha
    nsq = cat_norm_sq(alpha, theta)
    if nsq < 1e-12:
        return 1.0  # alpha -> 0 odd state tends to |1>
    return 2.0 * lam * (1.0 - math.exp(-2.0 * lam) * math.cos(theta)) / nsq


def make_cat(alpha: float, theta: float, trunc: TruncationSpec) -> PhotonAmplitudes:
    """Coherent superposition (|alpha> + e^{i theta} |-alpha>)/N_theta.

    c_n is proportional to exp(-alpha^2/2) alpha^n (1 + e^{i theta} (-1)^n) / sqrt(n!).
    alpha is restricted to real >= 0.
    """
    if alpha < 0:
        raise ValueError("alpha must be real and nonnegative")
    nsq = cat_norm_sq(alpha, theta)
    if nsq < 1e-12:
        raise ValueError(
            "degenerate normalization (alpha = 0 with cos(theta) = -1); "
            "the limiting state is the single-photon Fock state"
        )
    n = np.arange(trunc.n_max + 1)
    lam = alpha * alpha
    # amplitudes in log space to dodge overflow in n!
    if alpha > 0:
        log_mag = (
            -lam / 2.0 + n * math.log(alpha)
            - 0.5 * np.array([math.lgamma(k + 1) for k in n])
        )
        mag = np.exp(log_mag)
    else:
        mag = (n == 0).astype(float)
    phase = 1.0 + np.exp(1j * theta) * (-1.0) ** n
    c = mag * phase
    norm_sq_trunc = float(np.sum(np.abs(c) ** 2))
    # exact untruncated norm of the same unnormalized sequence is N_theta^2
    deficit = 1.0 - norm_sq_trunc / nsq
    if deficit > trunc.tail_tolerance:
        raise ValueError(
            f"truncation too small: weight {deficit:.3e} above n_max={trunc.n_max} "
            f"exceeds tail tolerance {trunc.tail_tolerance:.3e}"
        )
    return PhotonAmplitudes(c / math.sqrt(norm_sq_trunc))


def make_fock(n: int, trunc: TruncationSpec) -> PhotonAmplitudes:
    """Fock state |n> on the truncated basis."""
    if not (0 <= n <= trunc.n_max):
        raise ValueError(f"Fock index {n} outside truncated basis 0..{trunc.n_max}")
    c = np.zeros(trunc.n_max + 1, dtype=complex)
    c[n] = 1.0
    return PhotonAmplitudes(c)


def thermal_weights(omega: float, T: float, trunc: TruncationSpec) -> np.ndarray:
    """Boltzmann probabilities p(n) ~ exp(-n omega / T), renormalized over 0..n_max."""
    if omega <= 0:
        raise ValueError("omega must be > 0")
    if T < 0:
        raise ValueError("temperature must be >= 0")
    p = np.zeros(trunc.n_max + 1)
    if T == 0.0:
        p[0] = 1.0
        return p
    n = np.arange(trunc.n_max + 1)
    p = np.exp(-n * omega / T)
    return p / p.sum()


def make_thermal_ensemble(omega: float, T: float, trunc: TruncationSpec) -> ThermalEnsemble:
    """Thermal diagonal ensemble of |up, n> initial states."""
    w = thermal_weights(omega, T, trunc)
    states = tuple(joint_up(make_fock(n, trunc)) for n in range(trunc.n_max + 1))
    return ThermalEnsemble(w, states)


def joint_up(ph: PhotonAmplitudes) -> JointState:
    """Product state |up> (x) sum_n c_n |n>."""
    return JointState(ph.c, np.zeros_like(ph.c))
