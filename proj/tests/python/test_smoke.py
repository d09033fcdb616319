import cmath

import pytest

import qsf


def rel(a, b):
    s = max(abs(a), abs(b))
    return abs(a - b) / s if s else 0.0


def test_basic_values():
    assert qsf.Aq(0.5, 0) == 1
    assert qsf.Aiq(0.5, 0) == 1
    assert qsf.eq(0.5, 0) == 1
    assert qsf.qpochhammer(0.5, 0.5, 2) == pytest.approx(0.375)
    assert abs(qsf.theta(0.5, -1)) < 1e-12


def test_theta_inversion():
    x = 1.7 + 0.4j
    assert rel(qsf.theta(0.5, 1 / x), qsf.theta(0.5, x) / x) < 1e-12


def test_phi_matches_eq():
    assert rel(qsf.phi([0], [], 0.5, 0.25), qsf.eq(0.5, 0.25)) < 1e-12


def test_solution_residual():
    q = 0.4
    x = 0.8
    u = qsf.eval_solution("u1", q, x)
    res = q * x * qsf.eval_solution("u1", q, q * q * x) - qsf.eval_solution(
        "u1", q, q * x
    ) + u
    assert abs(res) < 1e-12 * max(1.0, abs(u))


def test_resummation_solves_equation():
    q, lam, x = 0.4, 0.9, 0.7
    u2 = lambda y: qsf.theta(q, y) * qsf.resum_2f0(q, lam, y)
    res = q * x * u2(q * q * x) - u2(q * x) + u2(x)
    assert abs(res) < 1e-9 * abs(u2(x))


def test_verify_report_shape():
    rep = qsf.verify_identity("qexp_pair", 0.5, 0.3)
    assert rep["pass"]
    assert rep["identity_id"] == "qexp_pair"
    for key in ("q", "x", "lhs", "rhs", "abs_err", "rel_err", "tol", "metadata"):
        assert key in rep


def test_known_misprint_is_reported():
    printed = qsf.verify_identity("main_matrix_row1", 0.4, 1.3 + 0.2j)
    corrected = qsf.verify_identity("main_matrix_row1_corrected", 0.4, 1.3 + 0.2j)
    assert not printed["pass"]
    assert corrected["pass"]


def test_audit():
    pts = qsf.sample_points("two_f_zero", 0.4, 0.9, 8, 7)
    rep = qsf.audit_normalization("two_f_zero", 0.4, 0.9, pts)
    assert rep["match_count"] == 1
    assert rep["best"]["form"] == "expansion"
    assert rep["best"]["k"] == (0, 0)
    assert rep["best"]["j"] == (0, 0)


def test_domain_errors_become_value_errors():
    with pytest.raises(ValueError):
        qsf.theta(1.5, 1.0)  # |q| >= 1
    with pytest.raises(ValueError):
        qsf.eq(0.5, 2.0)  # pole at q^{-1}
    with pytest.raises(ValueError):
        qsf.resum_2f0(0.5, 0.9, 0.0)


def test_residue_route_matches_series():
    q, t = 0.4, 1.3
    lhs = qsf.residue_laplace_qairy(q, t)
    rhs = qsf.Aq(q * q, -(q**3) * t * t)
    assert rel(lhs, rhs) < 1e-10


def test_stokes_dependence():
    a = qsf.resum_2f0(0.5, 0.9, 0.7)
    b = qsf.resum_2f0(0.5, 1.3, 0.7)
    assert rel(a, b) > 1e-6
