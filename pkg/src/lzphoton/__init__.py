"""Landau-Zener transitions of a two-level system coupled to a quantized
photon mode: numerical sweep dynamics (with and without the rotating-wave
approximation), closed-form transition probabilities for coherent
superpositions and thermal fields, entanglement and photon statistics."""

__version__ = "0.1.0"

from .fockspace import (
    JointState,
    PhotonAmplitudes,
    ThermalEnsemble,
    TruncationSpec,
    choose_truncation,
    joint_up,
    make_cat,
    make_fock,
    make_thermal_ensemble,
    thermal_weights,
)
from .hamiltonians import (
    LZParams,
    Model,
    SpectrumSlice,
    adiabatic_spectrum,
    apply_h,
    crossing_times,
    independence_check,
)
from .observables import (
    ObservableSeries,
    ReducedTLS,
    linear_entropy,
    mandel_q,
    p_lz,
    photon_moments,
    reduce_tls,
    tail_mean,
    total_number,
)
from .propagator import (
    IntegratorConfig,
    PropagationError,
    Trajectory,
    evolve,
    evolve_sector_rwa,
    evolve_thermal,
    trajectory_series,
)
from . import analytics
