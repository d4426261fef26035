"""Time-dependent Hamiltonians for the swept two-level system + photon mode.

Two models:

* RWA : rotating-frame Jaynes-Cummings form with linearly swept bias,
  H(t) = -(v t - delta_omega)/2 sigma_z - (Delta/2)(a sigma_+ + a^dag sigma_-).
* FULL: lab-frame Hamiltonian including the counter-rotating coupling,
  H(t) = omega0/2 sigma_z + omega a^dag a - v t/2 sigma_z
         - (Delta/2) sigma_x (a + a^dag).

Convention: sigma_z |up> = +|up>.  Energies are measured in units of sqrt(v)
and times in 1/sqrt(v); v is kept explicit with default 1 so parameter values
can be used verbatim.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .fockspace import JointState

__all__ = [
    "Model",
    "LZParams",
    "SpectrumSlice",
    "apply_h",
    "hamiltonian_matrix",
    "adiabatic_spectrum",
    "crossing_times",
    "independence_check",
]


class Model(enum.Enum):
    RWA = "rwa"
    FULL = "full"


@dataclass(frozen=True)
class LZParams:
    delta: float
    omega: float = 10.0
    omega0: float | None = None  # None means resonance omega0 = omega
    v: float = 1.0
    model: Model = Model.RWA

    def __post_init__(self):
        if self.v <= 0:
            raise ValueError("sweep velocity v must be > 0")
        if self.delta < 0:
            raise ValueError("coupling delta must be >= 0")
        if self.omega <= 0:
            raise ValueError("photon frequency omega must be > 0")
        if self.omega0 is None:
            object.__setattr__(self, "omega0", self.omega)
        if self.model is Model.FULL and self.detuning != 0.0:
            raise ValueError("finite detuning is supported only under the RWA")

    @property
    def detuning(self) -> float:
        return self.omega0 - self.omega


def _coupling_rwa(params: LZParams, dim: int) -> np.ndarray:
    # <up,n|H|down,n+1> = -(Delta/2) sqrt(n+1)
    return -(params.delta / 2.0) * np.sqrt(np.arange(1, dim + 1))


def apply_h(params: LZParams, t: float, state: JointState) -> tuple[np.ndarray, np.ndarray]:
    """Return the derivative (-i H(t) |psi>) as (d_up, d_down) amplitude arrays."""
    up, down = state.up, state.down
    if up.shape != down.shape:
        raise ValueError("state dimension mismatch")
    if not math.isfinite(t):
        raise ValueError("time must be finite")
    dim = len(up)
    hup = np.empty(dim, dtype=complex)
    hdown = np.empty(dim, dtype=complex)
    if params.model is Model.RWA:
        bias = -(params.v * t - params.detuning) / 2.0
        g = _coupling_rwa(params, dim)  # couples up_n <-> down_{n+1}
        hup[:] = bias * up
        hdown[:] = -bias * down
        hup[:-1] += g[:-1] * down[1:]
        hdown[1:] += g[:-1] * up[:-1]
    else:
        n = np.arange(dim)
        diag_bias = (params.omega0 - params.v * t) / 2.0
        hup[:] = (diag_bias + params.omega * n) * up
        hdown[:] = (-diag_bias + params.omega * n) * down
        g = -(params.delta / 2.0) * np.sqrt(np.arange(1, dim + 1))
        # co-rotating: up_n <-> down_{n+1}, weight sqrt(n+1)
        hup[:-1] += g[:-1] * down[1:]
        hdown[1:] += g[:-1] * up[:-1]
        # counter-rotating: up_n <-> down_{n-1}, weight sqrt(n)
        hup[1:] += g[:-1] * down[:-1]
        hdown[:-1] += g[:-1] * up[1:]
    return -1j * hup, -1j * hdown


def hamiltonian_matrix(params: LZParams, t: float, n_max: int) -> np.ndarray:
    """Dense H(t) over the basis |up,0>..|up,n_max>, |down,0>..|down,n_max>."""
    dim = n_max + 1
    h = np.zeros((2 * dim, 2 * dim))
    n = np.arange(dim)
    g = -(params.delta / 2.0) * np.sqrt(np.arange(1, dim + 1))
    if params.model is Model.RWA:
        bias = -(params.v * t - params.detuning) / 2.0
        h[n, n] = bias
        h[dim + n, dim + n] = -bias
        for k in range(dim - 1):
            h[k, dim + k + 1] = g[k]
            h[dim + k + 1, k] = g[k]
    else:
        diag_bias = (params.omega0 - params.v * t) / 2.0
        h[n, n] = diag_bias + params.omega * n
        h[dim + n, dim + n] = -diag_bias + params.omega * n
        for k in range(dim - 1):
            h[k, dim + k + 1] = g[k]
            h[dim + k + 1, k] = g[k]
            h[k + 1, dim + k] = g[k]
            h[dim + k, k + 1] = g[k]
    return h


@dataclass(frozen=True)
class SpectrumSlice:
    t: float
    eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.sort(np.asarray(self.eigenvalues, dtype=float))
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)


def adiabatic_spectrum(params: LZParams, t_grid, n_max: int) -> list[SpectrumSlice]:
    """Instantaneous eigenvalues of H(t) on each grid point, ascending."""
    slices = []
    for t in np.asarray(t_grid, dtype=float):
        ev = np.linalg.eigvalsh(hamiltonian_matrix(params, float(t), n_max))
        slices.append(SpectrumSlice(float(t), ev))
    return slices


def crossing_times(params: LZParams) -> tuple[float, float]:
    """(t_cross, tau_lz): separation of the two crossing groups and the
    duration of an individual transition."""
    t_cross = 2.0 * params.omega / params.v
    tau_lz = max(1.0 / math.sqrt(params.v), params.delta / params.v)
    return t_cross, tau_lz


def independence_check(params: LZParams, alpha: float) -> bool:
    """True iff omega > max(sqrt(v)/4, |alpha| Delta), the regime where the
    two crossing groups can be treated as independent transitions."""
    return params.omega > max(math.sqrt(params.v) / 4.0, abs(alpha) * params.delta)
