import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lzphoton.fockspace import JointState
from lzphoton.hamiltonians import (
    LZParams,
    Model,
    adiabatic_spectrum,
    apply_h,
    crossing_times,
    hamiltonian_matrix,
    independence_check,
)


def _random_state(rng, dim):
    psi = rng.standard_normal(2 * dim) + 1j * rng.standard_normal(2 * dim)
    psi /= np.linalg.norm(psi)
    return JointState(psi[:dim], psi[dim:])


def test_params_validation():
    with pytest.raises(ValueError):
        LZParams(delta=0.5, v=0.0)
    with pytest.raises(ValueError):
        LZParams(delta=-0.1)
    with pytest.raises(ValueError):
        LZParams(delta=0.5, omega=0.0)
    with pytest.raises(ValueError, match="detuning"):
        LZParams(delta=0.5, omega=10.0, omega0=11.0, model=Model.FULL)


def test_resonance_default():
    p = LZParams(delta=0.5, omega=7.0)
    assert p.omega0 == 7.0
    assert p.detuning == 0.0


def test_detuning_value():
    p = LZParams(delta=0.5, omega=10.0, omega0=10.5)
    assert p.detuning == pytest.approx(0.5)


@given(
    st.sampled_from([Model.RWA, Model.FULL]),
    st.floats(min_value=-20.0, max_value=20.0),
    st.floats(min_value=0.0, max_value=2.0),
)
def test_hamiltonian_matrix_is_symmetric(model, t, delta):
    p = LZParams(delta=delta, omega=3.0, model=model)
    h = hamiltonian_matrix(p, t, 5)
    assert np.allclose(h, h.T, atol=0.0)


def test_rwa_coupling_elements():
    p = LZParams(delta=0.5)
    h = hamiltonian_matrix(p, 0.0, 4)
    dim = 5
    for n in range(4):
        assert h[n, dim + n + 1] == pytest.approx(-0.25 * math.sqrt(n + 1))
    # no counter-rotating block under the RWA
    assert h[1, dim + 0] == 0.0


def test_full_coupling_has_both_blocks():
    p = LZParams(delta=0.5, omega=10.0, model=Model.FULL)
    h = hamiltonian_matrix(p, 0.0, 4)
    dim = 5
    assert h[0, dim + 1] == pytest.approx(-0.25)
    assert h[1, dim + 0] == pytest.approx(-0.25)
    assert h[2, dim + 1] == pytest.approx(-0.25 * math.sqrt(2.0))


def test_full_diagonal_includes_photon_energy():
    p = LZParams(delta=0.0, omega=10.0, model=Model.FULL)
    h = hamiltonian_matrix(p, 1.0, 3)
    dim = 4
    # |up,n>: (omega0 - v t)/2 + omega n
    assert h[2, 2] == pytest.approx((10.0 - 1.0) / 2.0 + 20.0)
    assert h[dim + 2, dim + 2] == pytest.approx(-(10.0 - 1.0) / 2.0 + 20.0)


@given(
    st.sampled_from([Model.RWA, Model.FULL]),
    st.floats(min_value=-10.0, max_value=10.0),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_apply_h_matches_dense_matrix(model, t, seed):
    p = LZParams(delta=0.7, omega=4.0, model=model)
    dim = 6
    s = _random_state(np.random.default_rng(seed), dim)
    du, dd = apply_h(p, t, s)
    h = hamiltonian_matrix(p, t, dim - 1)
    ref = -1j * (h @ np.concatenate([s.up, s.down]))
    assert np.allclose(du, ref[:dim], atol=1e-12)
    assert np.allclose(dd, ref[dim:], atol=1e-12)


def test_apply_h_rejects_nonfinite_time():
    p = LZParams(delta=0.5)
    s = _random_state(np.random.default_rng(0), 3)
    with pytest.raises(ValueError):
        apply_h(p, math.inf, s)


def test_rwa_sector_gap_at_crossing():
    # the |up,n>, |down,n+1> pair crosses at t = detuning/v with minimum
    # splitting Delta sqrt(n+1)
    p = LZParams(delta=0.5)
    slices = adiabatic_spectrum(p, [0.0], 1)
    ev = slices[0].eigenvalues
    # basis n_max=1: pairs (up0, down1) gap 0.5 and two uncoupled levels at 0
    gaps = np.diff(ev)
    assert ev.shape == (4,)
    assert max(ev) - min(ev) == pytest.approx(0.5, abs=1e-12)
    assert np.count_nonzero(np.abs(ev) < 1e-12) == 2
    assert np.all(gaps >= -1e-15)


def test_spectrum_is_sorted():
    p = LZParams(delta=0.5, omega=10.0, model=Model.FULL)
    for s in adiabatic_spectrum(p, np.linspace(-30, 30, 7), 3):
        assert np.all(np.diff(s.eigenvalues) >= 0.0)


def test_crossing_times_frozen():
    p = LZParams(delta=0.5, omega=10.0)
    t_cross, tau = crossing_times(p)
    assert t_cross == pytest.approx(20.0)
    assert tau == pytest.approx(1.0)
    p2 = LZParams(delta=3.0, omega=10.0)
    assert crossing_times(p2)[1] == pytest.approx(3.0)


def test_independence_check():
    assert independence_check(LZParams(delta=0.5, omega=10.0), alpha=1.0)
    assert not independence_check(LZParams(delta=0.5, omega=0.2), alpha=1.0)
    # large photon amplitude defeats the separation
    assert not independence_check(LZParams(delta=0.5, omega=1.0), alpha=4.0)
