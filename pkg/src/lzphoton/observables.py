"""Physical quantities extracted from joint TLS+field states.

All functions are pure and frame-invariant: multiplying the amplitudes by
photon-number-dependent phases (the rotating-frame local unitary) changes no
value computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fockspace import JointState

__all__ = [
    "ReducedTLS",
    "ObservableSeries",
    "p_lz",
    "reduce_tls",
    "linear_entropy",
    "photon_moments",
    "mandel_q",
    "total_number",
    "series_from_states",
    "tail_mean",
]


@dataclass(frozen=True)
class ReducedTLS:
    """Reduced 2x2 density matrix of the two-level system."""

    rho_uu: float
    rho_dd: float
    rho_ud: complex

    def __post_init__(self):
        if self.rho_uu < -1e-10 or self.rho_dd < -1e-10:
            raise ValueError("negative population in reduced density matrix")
        # slack matches the worst norm drift the propagator will let through
        if abs(self.rho_uu + self.rho_dd - 1.0) > 2e-6:
            raise ValueError("reduced density matrix trace differs from 1")


def p_lz(state: JointState) -> float:
    """Probability of occupying the initially empty |down> level."""
    return float(np.sum(np.abs(state.down) ** 2))


def reduce_tls(state: JointState) -> ReducedTLS:
    """Partial trace over the photon mode."""
    rho_uu = float(np.sum(np.abs(state.up) ** 2))
    rho_dd = float(np.sum(np.abs(state.down) ** 2))
    rho_ud = complex(np.sum(state.up * np.conj(state.down)))
    return ReducedTLS(rho_uu, rho_dd, rho_ud)


def linear_entropy(rho: ReducedTLS) -> float:
    """E_l = 1 - Tr rho^2, in [0, 1/2] for a qubit."""
    return 1.0 - (rho.rho_uu**2 + rho.rho_dd**2 + 2.0 * abs(rho.rho_ud) ** 2)


def photon_moments(state: JointState) -> tuple[float, float]:
    """(<n>, <n^2>) of the photon mode."""
    n = np.arange(len(state.up))
    pop = np.abs(state.up) ** 2 + np.abs(state.down) ** 2
    nbar = float(np.sum(n * pop))
    n2 = float(np.sum(n * n * pop))
    return nbar, n2


def mandel_q(nbar: float, n2: float) -> float:
    """Q = (variance of n)/nbar - 1; NaN where nbar = 0 (undefined)."""
    if nbar <= 0.0:
        return math.nan
    return (n2 - nbar * nbar) / nbar - 1.0


def total_number(state: JointState) -> float:
    """<N> with N = a^dag a + sigma_z/2, the RWA conserved quantity."""
    nbar, _ = photon_moments(state)
    rho_uu = float(np.sum(np.abs(state.up) ** 2))
    rho_dd = float(np.sum(np.abs(state.down) ** 2))
    return nbar + 0.5 * (rho_uu - rho_dd)


@dataclass(frozen=True)
class ObservableSeries:
    """Aligned time series of the standard observables."""

    t: np.ndarray
    p_lz: np.ndarray
    e_l: np.ndarray
    q: np.ndarray
    nbar: np.ndarray
    n2: np.ndarray
    norm: np.ndarray

    def __post_init__(self):
        for name in ("t", "p_lz", "e_l", "q", "nbar", "n2", "norm"):
            a = np.asarray(getattr(self, name), dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)


def series_from_states(times, states) -> ObservableSeries:
    """Compute the observable series for a list of sampled JointStates."""
    rows_p, rows_e, rows_q, rows_n, rows_n2, rows_norm = [], [], [], [], [], []
    for s in states:
        norm = s.norm_sq()
        rho = reduce_tls(s)
        nbar, n2 = photon_moments(s)
        rows_p.append(rho.rho_dd)
        rows_e.append(linear_entropy(rho))
        rows_q.append(mandel_q(nbar, n2))
        rows_n.append(nbar)
        rows_n2.append(n2)
        rows_norm.append(norm)
    return ObservableSeries(
        np.asarray(times, dtype=float),
        np.array(rows_p),
        np.array(rows_e),
        np.array(rows_q),
        np.array(rows_n),
        np.array(rows_n2),
        np.array(rows_norm),
    )


def tail_mean(values, frac: float = 0.1) -> float:
    """Mean over the trailing fraction of a sampled series.

    Long-time values are read off visibly oscillating curves, so a plain
    final sample would be noisy; the tail average suppresses the residual
    Rabi-like oscillation.
    """
    values = np.asarray(values, dtype=float)
    k = max(1, int(math.ceil(frac * len(values))))
    return float(np.mean(values[-k:]))
