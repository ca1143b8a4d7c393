import math

import numpy as np
import pytest

try:
    import poncelet as pc
except ImportError:
    import _poncelet as pc


def chapple():
    s3 = math.sqrt(3.0)
    C = np.diag([1.0, 1.0, -9.0]).astype(complex)
    D = np.array([[1, 0, -s3], [0, 1, 0], [-s3, 0, 2]], dtype=complex)
    return C, D


def diag_pair(l1, l2, l3):
    return np.eye(3, dtype=complex), np.diag([l1, l2, l3]).astype(complex)


def test_sigma_and_gamma():
    C, D = diag_pair(1, 2, 3)
    s30, s21, s12, s03 = pc.sigma(C, D)
    assert abs(s30 - 1) < 1e-14
    assert abs(s21 - 6) < 1e-14
    assert abs(s12 - 11) < 1e-14
    assert abs(s03 - 6) < 1e-14
    assert abs(pc.gamma(C, D) - 23) < 1e-12


def test_chapple_is_satisfied():
    C, D = chapple()
    v = pc.cayley_condition(C, D)
    assert v["satisfied"]
    assert abs(v["gamma"]) < v["threshold"]
    errs = pc.closure_errors(C, D, seed=42, count=5)
    assert max(errs) < 1e-8


def test_negative_control_does_not_close():
    C, D = diag_pair(1, 2, 3)
    v = pc.cayley_condition(C, D)
    assert not v["satisfied"]
    errs = pc.closure_errors(C, D, seed=42, count=5)
    assert min(errs) > 1e-3


def test_j_values():
    assert abs(pc.j_from_lambda([1, 2, 3]) - 1728) < 1e-8
    w = complex(-0.5, math.sqrt(3) / 2)
    assert abs(pc.j_from_lambda([1, w, w * w])) < 1e-10
    C, D = diag_pair(1, 2, 4)
    assert abs(pc.j_from_pair(C, D) - 21952.0 / 9.0) < 1e-9


def test_normal_form_diagonalizes():
    C, D = chapple()
    nf = pc.normal_form(C, D)
    A = np.asarray(nf["A"])
    assert np.max(np.abs(A.T @ C @ A - np.eye(3))) < 1e-8
    AtDA = A.T @ D @ A
    assert np.max(np.abs(AtDA - np.diag(np.diag(AtDA)))) < 1e-7


def test_isotropy_orders():
    assert pc.isotropy_order(*diag_pair(1, 2, 5)) == 4
    w = complex(-0.5, math.sqrt(3) / 2)
    assert pc.isotropy_order(*diag_pair(1, w, w * w)) == 12


def test_fiber_degree():
    rec = pc.fiber(100 + 0j)
    assert rec["total"] == 24
    assert rec["orbits"] == 4
    assert rec["max_residual"] < 1e-8


def test_gradients():
    C, D = chapple()
    for r in range(3):
        assert pc.gradient_fd_error(C, D, r) < 1e-6


def test_sampling_and_quadric():
    D = np.diag([1.0, 1.0, -1.0]).astype(complex)
    samples = pc.sample_cayley(D, 42, 5)
    assert len(samples) == 5
    for Cm in samples:
        Cm = np.asarray(Cm)
        scale = max(1.0, np.max(np.abs(Cm)) ** 2)
        assert abs(pc.gamma(Cm, D)) < 1e-8 * scale
        assert pc.psi_quadric_residual(D, Cm) < 1e-9
    again = pc.sample_cayley(D, 42, 5)
    for a, b in zip(samples, again):
        assert np.array_equal(np.asarray(a), np.asarray(b))


def test_errors_surface_as_exceptions():
    C = np.eye(3, dtype=complex)
    with pytest.raises(Exception):
        pc.fiber(0j)
    with pytest.raises(Exception):
        pc.j_from_lambda([1, 1, 2])
    assert not pc.is_transverse(C, C)
