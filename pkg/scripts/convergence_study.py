#!/usr/bin/env python3
"""Convergence study behind the default integrator settings.

Sweeps the local error tolerance and the Fock-space truncation for one
representative scenario and prints the change in the final transition
probability and the measured norm drift, so the defaults (rel_tol 1e-10,
abs_tol 1e-12, automatic truncation with 1e-12 tail) can be judged.
"""

import math
import sys

from lzphoton.fockspace import TruncationSpec, joint_up, make_cat
from lzphoton.hamiltonians import LZParams
from lzphoton.observables import tail_mean
from lzphoton.propagator import (
    IntegratorConfig,
    PropagationError,
    evolve,
    trajectory_series,
)


def final_p(rel_tol: float, n_max: int) -> tuple[float, float]:
    state = joint_up(make_cat(1.0, math.pi / 2.0, TruncationSpec(n_max)))
    cfg = IntegratorConfig(rel_tol=rel_tol, abs_tol=rel_tol * 1e-2,
                           sample_count=801)
    traj = evolve(state, LZParams(delta=0.5), cfg)
    return tail_mean(trajectory_series(traj).p_lz), traj.norm_drift


def main() -> int:
    print("rel_tol   n_max   final_p_lz          norm_drift")
    base, _ = final_p(1e-12, 40)
    for rel in (1e-6, 1e-8, 1e-10, 1e-12):
        for n_max in (20, 30, 40):
            try:
                p, drift = final_p(rel, n_max)
            except PropagationError as exc:
                print(f"{rel:8.0e}  {n_max:5d}   aborted: {exc}")
                continue
            print(f"{rel:8.0e}  {n_max:5d}   {p:.12f}   {drift:8.1e}"
                  f"   (shift {p - base:+.2e})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
