import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lzphoton.fockspace import (
    TRUNCATION_PAD,
    JointState,
    PhotonAmplitudes,
    TruncationSpec,
    cat_mean_photon,
    cat_norm_sq,
    cat_weights_exact,
    choose_truncation,
    joint_up,
    make_cat,
    make_fock,
    make_thermal_ensemble,
    thermal_weights,
)

PI = math.pi


def test_truncation_spec_dim():
    assert TruncationSpec(7).dim == 8


def test_truncation_spec_rejects_bad_values():
    with pytest.raises(ValueError):
        TruncationSpec(-1)
    with pytest.raises(ValueError):
        TruncationSpec(3, tail_tolerance=0.0)
    with pytest.raises(ValueError):
        TruncationSpec(3, tail_tolerance=1.5)


@given(st.floats(min_value=0.0, max_value=30.0), st.sampled_from([1e-8, 1e-12]))
def test_poisson_truncation_controls_the_tail(lam, eps):
    spec = choose_truncation(lam, eps)
    n_bound = spec.n_max - TRUNCATION_PAD
    # direct tail sum of the Poisson distribution above the unpadded bound
    n = np.arange(0, n_bound + 1)
    if lam == 0.0:
        head = 1.0
    else:
        head = float(np.sum(np.exp(-lam + n * np.log(lam)
                                   - [math.lgamma(k + 1) for k in n])))
    assert 1.0 - head <= eps * (1.0 + 1e-9)


@given(st.floats(min_value=0.01, max_value=10.0))
def test_geometric_truncation_controls_the_tail(mean):
    eps = 1e-10
    spec = choose_truncation(mean, eps, kind="geometric")
    q = mean / (1.0 + mean)
    tail = q ** (spec.n_max - TRUNCATION_PAD + 1)
    assert tail <= eps * (1.0 + 1e-9)


def test_choose_truncation_unknown_kind():
    with pytest.raises(ValueError):
        choose_truncation(1.0, 1e-10, kind="zipf")


@given(
    st.floats(min_value=0.0, max_value=4.0),
    st.floats(min_value=0.0, max_value=2.0 * PI),
)
def test_cat_state_is_normalized_and_matches_exact_weights(alpha2, theta):
    alpha = math.sqrt(alpha2)
    if cat_norm_sq(alpha, theta) < 1e-6:
        return  # degenerate corner covered separately
    trunc = choose_truncation(alpha2, 1e-13)
    ph = make_cat(alpha, theta, trunc)
    assert abs(float(np.sum(ph.weights())) - 1.0) < 1e-12
    exact = cat_weights_exact(alpha, theta, np.arange(trunc.n_max + 1))
    assert np.allclose(ph.weights(), exact, atol=1e-11)


def test_cat_parity_selection():
    trunc = choose_truncation(2.0, 1e-13)
    even = make_cat(math.sqrt(2.0), 0.0, trunc).weights()
    odd = make_cat(math.sqrt(2.0), PI, trunc).weights()
    assert np.all(even[1::2] < 1e-14)
    assert np.all(odd[0::2] < 1e-14)


def test_cat_mean_photon_even_state_is_lam_tanh_lam():
    # 2 lam (1 - e^{-2 lam}) / (2 (1 + e^{-2 lam})) = lam tanh(lam)
    assert cat_mean_photon(1.0, 0.0) == pytest.approx(math.tanh(1.0), abs=1e-14)
    trunc = choose_truncation(1.0, 1e-13)
    ph = make_cat(1.0, 0.0, trunc)
    assert ph.mean_photon() == pytest.approx(math.tanh(1.0), abs=1e-10)


def test_cat_degenerate_normalization_raises():
    with pytest.raises(ValueError, match="degenerate"):
        make_cat(0.0, PI, TruncationSpec(5))


def test_cat_rejects_negative_alpha():
    with pytest.raises(ValueError):
        make_cat(-1.0, 0.0, TruncationSpec(5))


def test_cat_rejects_too_small_truncation():
    with pytest.raises(ValueError, match="truncation too small"):
        make_cat(2.0, PI / 2.0, TruncationSpec(3, 1e-12))


def test_fock_state():
    ph = make_fock(3, TruncationSpec(6))
    assert ph.weights()[3] == 1.0
    assert ph.mean_photon() == 3.0
    with pytest.raises(ValueError):
        make_fock(7, TruncationSpec(6))


def test_photon_amplitudes_must_be_normalized():
    with pytest.raises(ValueError, match="not normalized"):
        PhotonAmplitudes(np.array([0.5, 0.5]))


@given(st.floats(min_value=0.05, max_value=5.0), st.floats(min_value=0.2, max_value=5.0))
def test_thermal_weights_geometric_ratio(omega, T):
    spec = choose_truncation(1.0 / math.expm1(omega / T), 1e-12, kind="geometric")
    w = thermal_weights(omega, T, spec)
    ratios = w[1:] / w[:-1]
    assert np.allclose(ratios, math.exp(-omega / T), rtol=1e-12)


def test_thermal_weights_zero_temperature_is_vacuum():
    w = thermal_weights(1.0, 0.0, TruncationSpec(4))
    assert w[0] == 1.0
    assert np.all(w[1:] == 0.0)


def test_thermal_mean_photon_frozen():
    # omega = T = 1: mean occupation 1/(e - 1)
    spec = choose_truncation(1.0 / math.expm1(1.0), 1e-13, kind="geometric")
    w = thermal_weights(1.0, 1.0, spec)
    mean = float(np.sum(np.arange(len(w)) * w))
    assert mean == pytest.approx(0.58197670686932642, abs=1e-10)


def test_thermal_ensemble_members_are_fock_states():
    ens = make_thermal_ensemble(1.0, 1.0, TruncationSpec(10))
    assert len(ens.sector_states) == 11
    s3 = ens.sector_states[3]
    assert abs(s3.up[3]) == 1.0
    assert np.all(s3.down == 0.0)


def test_joint_up_and_norm():
    ph = make_fock(0, TruncationSpec(2))
    s = joint_up(ph)
    assert s.norm_sq() == pytest.approx(1.0, abs=1e-14)
    assert np.all(s.down == 0.0)
    assert s.with_time(2.5).t == 2.5


def test_joint_state_shape_mismatch():
    with pytest.raises(ValueError):
        JointState(np.zeros(3, complex), np.zeros(4, complex))
