import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covosc.formfactor import (
    FormFactorCurve,
    Kinematics,
    eta_for_time_ratio,
    eta_of_q2,
    f_asymptote,
    f_three_quark,
    g_asymptote,
    g_by_quadrature,
    g_closed_form,
    g_nonrelativistic,
    overlap_product,
    time_dilation_ratio,
)
from covosc.oscillator import Rapidity, psi
from covosc.specfun import QuadratureError

M = 1.0
LOG_Q2 = np.concatenate([[0.0], np.logspace(-3, 2, 19)])


def test_eta_of_q2():
    assert float(eta_of_q2(0.0, M)) == 0.0
    eta = float(eta_of_q2(4.0, M))
    assert math.tanh(eta) ** 2 == pytest.approx(0.5, rel=1e-14)
    assert eta == pytest.approx(math.atanh(1 / math.sqrt(2)), rel=1e-14)
    assert eta == pytest.approx(0.8814, abs=1e-4)
    assert eta_of_q2(1e8, M).velocity() == pytest.approx(1.0, abs=1e-4)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 1e6), st.floats(0.1, 10))
def test_kinematics_invariants(q2, mass):
    k = Kinematics(q2, mass)
    assert 0 <= k.tanh_squared < 1
    assert k.momentum == pytest.approx(math.sqrt(q2) / 2)
    assert 4 * k.momentum**2 == pytest.approx(q2)


def test_tanh_squared_monotone():
    vals = [Kinematics(q).tanh_squared for q in np.logspace(-3, 8, 50)]
    assert np.all(np.diff(vals) > 0)


def test_kinematics_validation():
    with pytest.raises(ValueError):
        Kinematics(-1.0)
    with pytest.raises(ValueError):
        Kinematics(1.0, 0.0)


def test_overlap_product_examples():
    assert overlap_product(0.0, 0.0, 0.0) == pytest.approx(1 / math.pi, rel=1e-15)
    assert overlap_product(1.0, 0.5, 0.5) == pytest.approx(math.exp(-math.cosh(2.0) * 0.5) / math.pi, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(-2, 2), st.floats(-3, 3), st.floats(-3, 3))
def test_overlap_factorizes(eta, z, t):
    expected = psi(0, -eta, z, t) * psi(0, eta, z, t)
    assert overlap_product(eta, z, t) == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_overlap_crosscheck_point():
    eta = Rapidity(0.9)
    assert overlap_product(eta, 0.3, -0.2) == pytest.approx(
        psi(0, 0.9, 0.3, -0.2) * psi(0, -0.9, 0.3, -0.2), rel=1e-12)


def test_g_closed_form_examples():
    assert g_closed_form(0.0, M) == 1.0
    assert g_closed_form(2.0, M) == pytest.approx(0.5 * math.exp(-0.25), rel=1e-15)
    assert g_closed_form(2.0, M) == pytest.approx(0.38940, abs=1e-5)
    q2 = 1e6
    assert g_closed_form(q2, M) == pytest.approx(2 / q2 * math.exp(-0.5), rel=1e-5)


def test_g_quadrature_examples():
    assert g_by_quadrature(0.0, M, 64) == pytest.approx(1.0, abs=1e-12)
    assert g_by_quadrature(2.0, M, 128) == pytest.approx(g_closed_form(2.0, M), abs=1e-10)
    _, im = g_by_quadrature(3.0, M, 128, return_imag=True)
    assert abs(im) < 1e-12


@pytest.mark.parametrize("q2", LOG_Q2)
@pytest.mark.parametrize("mass", [1.0, 0.938, 2.5])
def test_g_quadrature_oracle(q2, mass):
    q2 = q2 * mass**2
    assert g_by_quadrature(q2, mass) == pytest.approx(g_closed_form(q2, mass), abs=1e-10)


def test_g_quadrature_needs_nodes():
    with pytest.raises(ValueError):
        g_by_quadrature(1.0, M, 16)


def test_g_quadrature_error_paths(monkeypatch):
    import covosc.formfactor as ff

    monkeypatch.setattr(ff, "_g_quad", lambda q2, m, nodes: (0.5, 1e-6))
    with pytest.raises(QuadratureError, match="imaginary"):
        g_by_quadrature(1.0, M)
    monkeypatch.setattr(ff, "_g_quad", lambda q2, m, nodes: (1.0 / nodes, 0.0))
    with pytest.raises(QuadratureError, match="doubling"):
        g_by_quadrature(1.0, M)


def test_f_three_quark_examples():
    assert f_three_quark(0.0, M) == 1.0
    assert f_three_quark(2.0, M) == pytest.approx(0.25 * math.exp(-0.5), rel=1e-15)
    assert f_three_quark(2.0, M) == pytest.approx(0.15163, abs=1e-5)
    a = 1e4**2 * f_three_quark(1e4, M)
    b = 1e6**2 * f_three_quark(1e6, M)
    assert a / b == pytest.approx(1.0, abs=0.01)


def test_f_is_square_of_g_shape():
    # two oscillator modes: F(Q^2) = g(Q^2)^2
    for q2 in LOG_Q2:
        assert f_three_quark(q2) == pytest.approx(g_closed_form(q2) ** 2, rel=1e-14)


def test_dipole_asymptotics():
    for mass in (1.0, 0.5):
        q2 = 1e4 * mass**2
        assert q2**2 * f_three_quark(q2, mass) == pytest.approx(f_asymptote(mass), rel=0.01)
        assert q2 * g_closed_form(q2, mass) == pytest.approx(g_asymptote(mass), rel=0.01)


def test_nonrelativistic():
    assert g_nonrelativistic(0.0) == 1.0
    assert g_nonrelativistic(4.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert g_closed_form(40.0, M) / g_nonrelativistic(40.0) > 100


def test_monotone_decay():
    q2 = np.linspace(0, 200, 401)
    g = [g_closed_form(q) for q in q2]
    f = [f_three_quark(q) for q in q2]
    assert np.all(np.diff(g) < 0)
    assert np.all(np.diff(f) < 0)


def test_time_dilation():
    assert time_dilation_ratio(0.0) == 1.0
    eta = eta_for_time_ratio(1e-6)
    assert float(eta) == pytest.approx(3 * math.log(10), rel=1e-14)
    assert float(eta) == pytest.approx(6.9078, abs=1e-4)
    assert time_dilation_ratio(eta) == pytest.approx(1e-6, rel=1e-12)
    vals = [time_dilation_ratio(e) for e in np.linspace(0, 8, 30)]
    assert np.all(np.diff(vals) < 0)


@pytest.mark.parametrize("variant", ["two-quark-g", "three-quark-F", "nonrelativistic"])
def test_curves_start_at_one(variant):
    curve = FormFactorCurve.sample(variant, [0.0, 1.0, 10.0])
    assert curve.samples[0] == (0.0, 1.0)
    assert np.all(np.diff(curve.values()) < 0)


def test_unknown_variant():
    with pytest.raises(ValueError):
        FormFactorCurve.sample("dipole", [0.0])
