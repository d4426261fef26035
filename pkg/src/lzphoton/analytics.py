"""Closed-form and asymptotic results for the swept TLS + photon-mode model.

Every infinite-time probability here is genuinely closed form (no
integration), so these double as fast sweep kernels.  The truncated weighted
sums (`plz_fock_avg`, `plz_norwa_sum`, `plz_thermal_sum`) are the brute-force
oracles against which the closed forms are checked to machine precision.

Two printed-formula issues are handled explicitly:

* The thermal RWA result reduces, at T -> 0, to the survival (not the
  transition) probability; the canonical `plz_thermal_rwa` is therefore the
  transition probability derived from the geometric-weighted sum, and the
  survival orientation is exposed separately.
* The thermal independent-crossing result is exposed in two variants: the
  sum-consistent form (canonical, agrees with the weighted joint-probability
  oracle exactly) and the literal printed form, whose generating function is
  missing a (1+x) factor relative to the coherent-superposition analogue.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .fockspace import cat_mean_photon, cat_norm_sq
from .hamiltonians import LZParams

__all__ = [
    "SectorCoeffs",
    "PcfConvergenceError",
    "p_up0",
    "p_up_n",
    "plz_fock_avg",
    "plz_cat_rwa",
    "plz_ys",
    "plz_even",
    "plz_odd",
    "joint_up_prob",
    "plz_norwa_sum",
    "plz_cat_norwa",
    "plz_thermal_rwa",
    "plz_thermal_survival",
    "plz_thermal_sum",
    "plz_thermal_norwa",
    "plz_thermal_norwa_printed",
    "photon_stats_infty",
    "pcf_D",
    "sector_coeffs",
    "sector_coeffs_analytic",
]

PCF_Z_CAP = 30.0


class PcfConvergenceError(RuntimeError):
    """The parabolic cylinder function evaluation failed to converge."""


# ---------------------------------------------------------------------------
# survival probabilities and weighted-sum oracles


def p_up0(delta: float, v: float = 1.0) -> float:
    """Vacuum survival probability exp(-pi Delta^2 / 2v)."""
    if v <= 0:
        raise ValueError("v must be > 0")
    return math.exp(-math.pi * delta * delta / (2.0 * v))


def p_up_n(n: int, delta: float, v: float = 1.0) -> float:
    """Survival from |up,n>: P_up0^(n+1).

    n = -1 is admitted with value 1 (a zero-splitting crossing that cannot
    flip); the joint-probability formula needs that extension.
    """
    if n < -1:
        raise ValueError("n must be >= -1")
    return p_up0(delta, v) ** (n + 1)


def plz_fock_avg(weights, delta: float, v: float = 1.0) -> float:
    """Transition probability for a photon distribution |C_n|^2 (RWA):
    1 - sum_n |C_n|^2 P_up0^(n+1).  Direct truncated sum."""
    w = np.asarray(weights, dtype=float)
    if abs(float(w.sum()) - 1.0) > 1e-9:
        raise ValueError("weights must sum to 1")
    p0 = p_up0(delta, v)
    n = np.arange(len(w))
    return 1.0 - float(np.sum(w * p0 ** (n + 1)))


# ---------------------------------------------------------------------------
# coherent-superposition closed forms (RWA)


def plz_cat_rwa(alpha2: float, theta: float, delta: float, v: float = 1.0) -> float:
    """Final transition probability for (|alpha> + e^{i theta}|-alpha>)/N."""
    if alpha2 < 0:
        raise ValueError("alpha2 must be >= 0")
    p0 = p_up0(delta, v)
    alpha = math.sqrt(alpha2)
    nsq = cat_norm_sq(alpha, theta)
    if nsq < 1e-12:
        # alpha -> 0 with cos(theta) = -1: the state tends to |1>
        return 1.0 - p0 * p0
    num = math.exp(alpha2 * p0) + math.cos(theta) * math.exp(-alpha2 * p0)
    return 1.0 - 2.0 * p0 * num / (nsq * math.exp(alpha2))


def plz_ys(alpha2: float, delta: float, v: float = 1.0) -> float:
    """theta = pi/2 specialization: 1 - P_up0 exp(-alpha2 (1 - P_up0))."""
    p0 = p_up0(delta, v)
    return 1.0 - p0 * math.exp(-alpha2 * (1.0 - p0))


def plz_even(alpha2: float, delta: float, v: float = 1.0) -> float:
    """theta = 0 specialization: 1 - P_up0 cosh(alpha2 P_up0)/cosh(alpha2)."""
    p0 = p_up0(delta, v)
    if alpha2 == 0.0:
        return 1.0 - p0
    return 1.0 - p0 * math.cosh(alpha2 * p0) / math.cosh(alpha2)


def plz_odd(alpha2: float, delta: float, v: float = 1.0) -> float:
    """theta = pi specialization: 1 - P_up0 sinh(alpha2 P_up0)/sinh(alpha2)."""
    p0 = p_up0(delta, v)
    if alpha2 == 0.0:
        return 1.0 - p0 * p0  # limit: the odd state tends to |1>
    return 1.0 - p0 * math.sinh(alpha2 * p0) / math.sinh(alpha2)


# ---------------------------------------------------------------------------
# independent-crossing (non-RWA) results


def joint_up_prob(n: int, delta: float, v: float = 1.0) -> float:
    """Probability of ending up in |up> from |up,n> across both crossing
    groups: P_up(n-1) P_up(n) + (1 - P_up(n-1))(1 - P_up(n-2)).

    The m = -1 convention P_up(m) = P_up0^(m+1) = 1 makes the single formula
    cover n = 0 (reduces to P_up(0)) and n = 1.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return p_up_n(0, delta, v)
    return p_up_n(n - 1, delta, v) * p_up_n(n, delta, v) + (
        1.0 - p_up_n(n - 1, delta, v)
    ) * (1.0 - p_up_n(n - 2, delta, v))


def plz_norwa_sum(weights, delta: float, v: float = 1.0) -> float:
    """Oracle: 1 - sum_n |C_n|^2 P_{up,n->up}."""
    w = np.asarray(weights, dtype=float)
    return 1.0 - float(
        sum(w[n] * joint_up_prob(n, delta, v) for n in range(len(w)))
    )


def plz_cat_norwa(alpha2: float, theta: float, delta: float, v: float = 1.0) -> float:
    """Independent-crossing transition probability for a coherent
    superposition: (K/P_up0)[f(P_up0) - f(P_up0^2)] with
    f(x) = (1+x)(e^{alpha2 x} + cos(theta) e^{-alpha2 x})."""
    if alpha2 < 0:
        raise ValueError("alpha2 must be >= 0")
    p0 = p_up0(delta, v)
    if p0 >= 1.0:
        raise ValueError("requires delta > 0")
    c = math.cos(theta)
    denom = 1.0 + c * math.exp(-2.0 * alpha2)
    if denom < 1e-12:
        # alpha -> 0 odd-state limit |1>: 1 - joint probability from n=1
        return 1.0 - joint_up_prob(1, delta, v)
    k = math.exp(-alpha2) / denom

    def f(x: float) -> float:
        return (1.0 + x) * (math.exp(alpha2 * x) + c * math.exp(-alpha2 * x))

    return k / p0 * (f(p0) - f(p0 * p0))


# ---------------------------------------------------------------------------
# thermal closed forms


def _thermal_q(omega: float, T: float) -> float:
    if omega <= 0:
        raise ValueError("omega must be > 0")
    if T < 0:
        raise ValueError("temperature must be >= 0")
    return 0.0 if T == 0.0 else math.exp(-omega / T)


def plz_thermal_rwa(omega: float, T: float, delta: float, v: float = 1.0) -> float:
    """Thermal transition probability (RWA), derived from the geometric sum:
    1 - P_up0 (1-q)/(1 - q P_up0) with q = exp(-omega/T)."""
    q = _thermal_q(omega, T)
    p0 = p_up0(delta, v)
    return 1.0 - p0 * (1.0 - q) / (1.0 - q * p0)


def plz_thermal_survival(omega: float, T: float, delta: float, v: float = 1.0) -> float:
    """The other orientation: (1 - P0_LZ)/(1 + nbar P0_LZ), which is the
    survival probability (it tends to P_up0, not 1 - P_up0, as T -> 0)."""
    return 1.0 - plz_thermal_rwa(omega, T, delta, v)


def plz_thermal_sum(omega: float, T: float, delta: float, v: float = 1.0,
                    n_max: int = 400, joint: bool = False) -> float:
    """Oracle: geometric-weighted truncated sum, RWA (joint=False) or
    independent-crossing (joint=True)."""
    q = _thermal_q(omega, T)
    w = (1.0 - q) * q ** np.arange(n_max + 1)
    w = w / w.sum()
    if joint:
        return plz_norwa_sum(w, delta, v)
    return plz_fock_avg(w, delta, v)


def plz_thermal_norwa(omega: float, T: float, delta: float, v: float = 1.0) -> float:
    """Independent-crossing thermal transition probability, sum-consistent
    form: (G/P_up0)[(1+P_up0) g(P_up0) - (1+P_up0^2) g(P_up0^2)] with
    g(x) = 1/(1 - x exp(-omega/T)) and G = 1 - exp(-omega/T)."""
    p0 = p_up0(delta, v)
    if p0 >= 1.0:
        raise ValueError("requires delta > 0")
    q = _thermal_q(omega, T)
    if q == 0.0:
        return 1.0 - p0  # vacuum joint value
    g = 1.0 - q
    return g / p0 * (
        (1.0 + p0) / (1.0 - q * p0) - (1.0 + p0 * p0) / (1.0 - q * p0 * p0)
    )


def plz_thermal_norwa_printed(omega: float, T: float, delta: float, v: float = 1.0) -> float:
    """Literal printed variant without the (1+x) factors:
    (G/P_up0)[g(P_up0) - g(P_up0^2)].  Kept for comparison; it does not
    reproduce the weighted joint-probability sum and vanishes as T -> 0."""
    p0 = p_up0(delta, v)
    if p0 >= 1.0:
        raise ValueError("requires delta > 0")
    q = _thermal_q(omega, T)
    g = 1.0 - q
    return g / p0 * (1.0 / (1.0 - q * p0) - 1.0 / (1.0 - q * p0 * p0))


# ---------------------------------------------------------------------------
# photon statistics at infinite time (RWA)


def photon_stats_infty(alpha2: float, theta: float, delta: float, v: float = 1.0
                       ) -> tuple[float, float, float]:
    """(nbar_inf, <n^2>_inf, Q_inf) for a coherent-superposition initial
    state under the RWA.  Q is NaN when nbar_inf = 0 (alpha = 0, delta = 0)."""
    p0 = p_up0(delta, v)
    alpha = math.sqrt(alpha2)
    nbar0 = cat_mean_photon(alpha, theta)
    plz = plz_cat_rwa(alpha2, theta, delta, v)
    nbar_inf = nbar0 + plz
    nsq = cat_norm_sq(alpha, theta)
    if nsq < 1e-12:
        cross = 0.0  # |1> limit: the alpha-weighted cross term vanishes
    else:
        cross = (
            -4.0 * alpha2 * p0 * p0 / (nsq * math.exp(alpha2))
            * (math.exp(alpha2 * p0) - math.exp(-alpha2 * p0) * math.cos(theta))
        )
    n2_inf = cross + alpha2 * alpha2 + 3.0 * nbar0 + plz
    if nbar_inf <= 0.0:
        return nbar_inf, n2_inf, math.nan
    q_inf = (n2_inf - nbar_inf * nbar_inf) / nbar_inf - 1.0
    return nbar_inf, n2_inf, q_inf


# ---------------------------------------------------------------------------
# parabolic cylinder functions and sector coefficients


def pcf_D(nu: complex, z: complex, z_cap: float = PCF_Z_CAP) -> complex:
    """Parabolic cylinder function D_nu(z), arbitrary complex order.

    Evaluated through the Kummer confluent-hypergeometric representation
    with enough working precision to absorb the cancellation between the two
    series at moderate |z|.  Valid for |z| <= z_cap (default 30); the working
    precision grows like |z|^2, so larger arguments are refused rather than
    returned inaccurately.
    """
    if abs(z) > z_cap:
        raise ValueError(f"|z| = {abs(z):.3g} exceeds the validity cap {z_cap}")
    dps = 25 + int(0.35 * abs(z) ** 2)
    try:
        with mp.workdps(dps):
            a = mp.mpc(nu)
            zz = mp.mpc(z)
            w = zz * zz / 2
            # reciprocal gamma is entire, so integer orders need no special casing
            term1 = mp.hyp1f1(-a / 2, mp.mpf(1) / 2, w) * mp.rgamma((1 - a) / 2)
            term2 = (
                mp.sqrt(2) * zz * mp.hyp1f1((1 - a) / 2, mp.mpf(3) / 2, w)
                * mp.rgamma(-a / 2)
            )
            val = mp.power(2, a / 2) * mp.exp(-w / 2) * mp.sqrt(mp.pi) * (term1 - term2)
            return complex(val)
    except mp.libmp.NoConvergence as exc:  # pragma: no cover - defensive
        raise PcfConvergenceError(f"pcf_D failed at nu={nu}, z={z}") from exc


def _z_of_t(v: float, t: float) -> complex:
    """Argument Z_t = -sqrt(2) e^{i pi/4} sqrt(v/2) t of the sector solution."""
    return -math.sqrt(v) * cmath.exp(1j * math.pi / 4.0) * t


@dataclass(frozen=True)
class SectorCoeffs:
    """Boundary-condition constants of the two-level sector solution.

    The relation between the nu and mu constants carries the opposite global
    sign from the usual printed convention; the sign used here is the one
    consistent with our Hamiltonian sign convention, fixed by matching the
    numerically integrated sector system componentwise.
    """

    n: int
    delta_n: float
    mu_plus: complex
    mu_minus: complex
    t0: float

    @property
    def nu_plus(self) -> complex:
        return self.mu_plus * cmath.exp(-1j * math.pi / 4.0) / math.sqrt(self.delta_n)

    @property
    def nu_minus(self) -> complex:
        return -self.mu_minus * cmath.exp(-1j * math.pi / 4.0) / math.sqrt(self.delta_n)


def sector_coeffs(n: int, params: LZParams, t0: float) -> SectorCoeffs:
    """Constants enforcing (A, B) = (1, 0) at preparation time t0."""
    delta_n = params.delta**2 * (n + 1) / (4.0 * params.v)
    if delta_n <= 0.0:
        raise ValueError("sector coefficients require delta > 0")
    tau0 = t0 - params.detuning / params.v
    z0 = _z_of_t(params.v, tau0)
    nu0 = -1j * delta_n
    d0p = pcf_D(nu0, z0)
    d0m = pcf_D(nu0, -z0)
    d1p = pcf_D(-1 + nu0, z0)
    d1m = pcf_D(-1 + nu0, -z0)
    denom = d0m * d1p + d0p * d1m
    mu_plus = d0m / denom
    mu_minus = mu_plus * d0p / d0m
    return SectorCoeffs(n, delta_n, mu_plus, mu_minus, t0)


def sector_coeffs_analytic(n: int, params: LZParams, t, t0: float):
    """Analytic sector amplitudes (A_n(t), B_n(t)) prepared in |up,n> at t0.

    t may be a scalar or an array; returns complex arrays of matching shape.
    """
    sc = sector_coeffs(n, params, t0)
    nu0 = -1j * sc.delta_n
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    a = np.empty(len(ts), dtype=complex)
    b = np.empty(len(ts), dtype=complex)
    for i, ti in enumerate(ts):
        tau = ti - params.detuning / params.v
        zt = _z_of_t(params.v, tau)
        a[i] = sc.mu_plus * pcf_D(-1 + nu0, zt) + sc.mu_minus * pcf_D(-1 + nu0, -zt)
        b[i] = sc.nu_plus * pcf_D(nu0, zt) + sc.nu_minus * pcf_D(nu0, -zt)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(a[0]), complex(b[0])
    return a, b
