import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numphase.state import Tolerances, eigenstate, make_fock_state, random_state
from numphase.uncertainty import (
    Classification,
    analyze,
    classify,
    condition7_residuals,
    covariance_matrix_path,
    covariance_product,
    decompose_eq8,
    delta_n_formula,
    moments,
    report_row,
    rsur_check,
    schwartz_check,
    wave_phase_moments,
    CSV_COLUMNS,
)

from oracles import closed_form_wave, gl_integral

PHASE_SPREAD = np.pi / np.sqrt(3)
PLUS = [1, 1]
MINUS = [1, -1]


def quadrature_moments(coeffs):
    psi, _ = closed_form_wave(coeffs)
    mean = gl_integral(lambda p: p * np.abs(psi(p)) ** 2).real
    mean2 = gl_integral(lambda p: p**2 * np.abs(psi(p)) ** 2).real
    return mean, mean2


@pytest.mark.parametrize("n", [0, 3, 7])
def test_eigenstate_moments(n):
    mo = moments(eigenstate(n, 8))
    assert mo.delta_n == 0.0
    assert mo.delta_phi == pytest.approx(1.8137993642342178, abs=1e-10)
    assert mo.mean_n == n


def test_plus_state_moments():
    mo = moments(make_fock_state(PLUS))
    assert mo.delta_n == pytest.approx(0.5, abs=1e-14)
    mean, mean2 = quadrature_moments(make_fock_state(PLUS).coeffs)
    assert mean == pytest.approx(np.pi, abs=1e-12)
    assert mean2 == pytest.approx(4 * np.pi**2 / 3 + 2, abs=1e-12)
    assert mo.mean_phi == pytest.approx(mean, abs=1e-12)
    assert mo.delta_phi**2 == pytest.approx(np.pi**2 / 3 + 2, abs=1e-12)


def test_variance_identities(rng):
    for _ in range(50):
        mo = moments(random_state(7, rng))
        assert abs(mo.delta_n**2 - (mo.mean_n2 - mo.mean_n**2)) < 1e-12
        assert abs(mo.delta_phi**2 - (mo.mean_phi2 - mo.mean_phi**2)) < 1e-12
        assert 0 <= mo.delta_phi <= 2 * np.pi


def test_matrix_and_wave_phase_moments_agree(rng):
    for _ in range(100):
        s = random_state(int(rng.integers(2, 13)), rng)
        mo = moments(s)
        mean, mean2, dphi = wave_phase_moments(s)
        assert abs(mo.mean_phi - mean) < 1e-10
        assert abs(mo.mean_phi2 - mean2) < 1e-10
        assert abs(mo.delta_phi - dphi) < 1e-10


def test_moments_dimension_mismatch():
    from numphase.operators import build_operators

    with pytest.raises(ValueError):
        moments(eigenstate(0, 4), build_operators(5))


@pytest.mark.parametrize("n", range(5))
def test_covariance_eigenstate(n):
    assert abs(covariance_product(eigenstate(n, 8))) < 1e-10


@pytest.mark.parametrize("coeffs, expected", [(PLUS, -0.5j), (MINUS, 0.5j)])
def test_covariance_two_mode(coeffs, expected):
    s = make_fock_state(coeffs)
    assert covariance_product(s) == pytest.approx(expected, abs=1e-12)
    assert covariance_matrix_path(s) == pytest.approx(expected, abs=1e-12)
    # direct quadrature of (N psi, Phi psi) - <N><Phi>
    psi, dpsi = closed_form_wave(s.coeffs)
    direct = gl_integral(lambda p: np.conj(1j * dpsi(p)) * p * psi(p)) - 0.5 * np.pi
    assert covariance_product(s) == pytest.approx(direct, abs=1e-12)


def test_covariance_paths_agree(rng):
    for _ in range(100):
        s = random_state(int(rng.integers(2, 13)), rng)
        assert abs(covariance_product(s) - covariance_matrix_path(s)) < 1e-10


def test_schwartz_eigenstate_is_trivial_equality():
    r = schwartz_check(eigenstate(2, 6))
    assert r.lhs == 0.0 and r.rhs < 1e-10 and r.holds


def test_schwartz_plus_state():
    r = schwartz_check(make_fock_state(PLUS))
    assert r.lhs == pytest.approx(0.5 * np.sqrt(np.pi**2 / 3 + 2), abs=1e-12)
    assert r.lhs == pytest.approx(1.14999, abs=1e-5)
    assert r.rhs == pytest.approx(0.5, abs=1e-12)
    assert r.holds


def test_schwartz_random_sweep():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        assert schwartz_check(random_state(int(rng.integers(2, 13)), rng)).holds


def test_rsur_eigenstate_fails_half_bound():
    r = rsur_check(eigenstate(3, 6))
    assert r.lhs == 0 and r.rhs_half == 0.5 and not r.holds_eq4


@pytest.mark.parametrize("coeffs", [PLUS, MINUS])
def test_rsur_two_mode(coeffs):
    r = rsur_check(make_fock_state(coeffs))
    assert r.rhs == pytest.approx(0.5, abs=1e-12)
    assert r.holds_eq3


def test_residuals_eigenstate():
    r = condition7_residuals(eigenstate(4, 8))
    assert abs(abs(r[0, 1]) - 1) < 1e-10
    for j, k in [(0, 0), (1, 0), (1, 1)]:
        assert abs(r[j, k]) < 1e-10


def test_residuals_minus_state_all_vanish():
    assert np.max(np.abs(condition7_residuals(make_fock_state(MINUS)))) < 1e-10


def test_residual_structure_random(rng):
    for _ in range(200):
        s = random_state(int(rng.integers(2, 13)), rng)
        r = condition7_residuals(s)
        b = abs(s.coeffs.sum()) ** 2
        assert abs(abs(r[0, 1]) - b) < 1e-10
        assert r[0, 1] == pytest.approx(-1j * b, abs=1e-10)
        assert max(abs(r[0, 0]), abs(r[1, 0]), abs(r[1, 1])) < 1e-10


def test_eq8_valid_state_real_parts():
    a, c, err = decompose_eq8(make_fock_state(MINUS))
    assert abs(a.imag) < 1e-10 and abs(c.imag) < 1e-10
    assert err < 1e-10


@pytest.mark.parametrize("n", range(4))
def test_eq8_eigenstate_reconstruction_gap(n):
    # gap = |cov - (anticomm - i comm)| = |(N psi, Phi psi) - (psi, N Phi psi)| = B = 1
    _, _, err = decompose_eq8(eigenstate(n, 6))
    assert err == pytest.approx(1.0, abs=1e-10)


def test_eq8_realness_whenever_residuals_vanish():
    rng = np.random.default_rng(3)
    for _ in range(200):
        c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        c[-1] = -c[:-1].sum()  # force sum C_n = 0
        s = make_fock_state(c)
        assert np.max(np.abs(condition7_residuals(s))) < 1e-8
        a, comm, err = decompose_eq8(s)
        assert abs(a.imag) < 1e-10 and abs(comm.imag) < 1e-10 and err < 1e-10


def test_conditional_rsur_on_zero_boundary_states():
    rng = np.random.default_rng(11)
    for _ in range(200):
        c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        c[0] -= c.sum()
        rep = analyze(make_fock_state(c))
        assert rep.classification is Classification.RSUR_VALID
        assert rep.schwartz_lhs >= rep.rsur_rhs - 1e-10


@pytest.mark.parametrize(
    "probs, expected",
    [([0, 0, 1], 0.0), ([0.5, 0.5], 0.5), ([0.25, 0, 0.75], np.sqrt(0.75))],
)
def test_delta_n_formula(probs, expected):
    s = make_fock_state(np.sqrt(probs))
    assert delta_n_formula(s) == pytest.approx(expected, abs=1e-14)


def test_delta_n_formula_matches_operator(rng):
    for _ in range(1000):
        s = random_state(int(rng.integers(2, 13)), rng)
        assert abs(delta_n_formula(s) - moments(s).delta_n) < 1e-12


@pytest.mark.parametrize(
    "state, expected",
    [
        (eigenstate(2, 5), Classification.DEGENERATE),
        (make_fock_state(MINUS), Classification.RSUR_VALID),
        (make_fock_state(PLUS), Classification.RSUR_INVALID),
    ],
)
def test_classification(state, expected):
    rep = analyze(state)
    assert rep.classification is expected
    assert classify(rep) is expected


def test_classify_respects_tolerances():
    rep = analyze(make_fock_state(PLUS))
    assert classify(rep, Tolerances(residual_tol=10.0)) is Classification.RSUR_VALID


def test_report_row_layout():
    rep = analyze(make_fock_state(PLUS), state_id="plus")
    row = report_row(rep)
    assert len(row) == len(CSV_COLUMNS)
    assert row[0] == "plus" and row[-1] == "RSUR_INVALID"
    assert float(row[CSV_COLUMNS.index("abs_r_NPhi")]) == pytest.approx(2, abs=1e-10)


complex_coeff = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


@settings(max_examples=150, deadline=None)
@given(st.lists(complex_coeff, min_size=2, max_size=12).filter(lambda c: np.linalg.norm(c) > 1e-3))
def test_report_invariants(coeffs):
    rep = analyze(make_fock_state(coeffs))
    assert rep.schwartz_lhs >= rep.schwartz_rhs - 1e-10
    assert 0 <= rep.delta_phi <= 2 * np.pi
    assert rep.mean_phi2 <= 4 * np.pi**2
    if rep.max_residual < 1e-8:
        assert rep.schwartz_lhs >= rep.rsur_rhs - 1e-10
