import numpy as np
import pytest

from numradlab import errors
from numradlab.linalg import (
    abs_operator,
    adjoint,
    apply_scalar_function,
    hermitian_eigen,
    hermitian_part,
    hermitian_power,
    lambda_max,
    lambda_min,
    loewner_leq,
    norm_hermitian,
    operator_norm,
)
from numradlab.radius import complex_gaussian, numerical_radius, stream_rng


def random_complex(rng, n):
    return complex_gaussian(rng, (n, n))


def random_hermitian(rng, n):
    return hermitian_part(random_complex(rng, n))


def test_adjoint_examples():
    I = np.eye(2, dtype=complex)
    np.testing.assert_array_equal(adjoint(I), I)
    A = np.array([[0, 1], [0, 0]], dtype=complex)
    np.testing.assert_array_equal(adjoint(A), np.array([[0, 0], [1, 0]]))
    B = np.array([[1j, 0], [0, 0]])
    np.testing.assert_array_equal(adjoint(B), np.array([[-1j, 0], [0, 0]]))


def test_adjoint_involution_exact():
    rng = stream_rng(0, "adjoint")
    A = random_complex(rng, 5)
    np.testing.assert_array_equal(adjoint(adjoint(A)), A)


def test_hermitian_eigen_trivial():
    eig = hermitian_eigen(np.eye(2, dtype=complex))
    np.testing.assert_allclose(eig.eigenvalues, [1.0, 1.0])
    pauli_x = np.array([[0, 1], [1, 0]], dtype=complex)
    eig = hermitian_eigen(pauli_x)
    np.testing.assert_allclose(eig.eigenvalues, [-1.0, 1.0], atol=1e-14)


def test_hermitian_eigen_residual_8x8():
    rng = stream_rng(1, "eigres")
    H = random_hermitian(rng, 8)
    eig = hermitian_eigen(H)
    resid = np.linalg.norm(H @ eig.vectors - eig.vectors * eig.eigenvalues, 2)
    assert resid <= 1e-10
    assert np.all(np.diff(eig.eigenvalues) >= 0)
    unit = np.linalg.norm(eig.vectors.conj().T @ eig.vectors - np.eye(8), 2)
    assert unit <= 1e-10


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(errors.NotHermitian):
        hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


def test_operator_norm_examples():
    assert operator_norm(np.diag([2.0, -5.0]).astype(complex)) == pytest.approx(5.0)
    assert operator_norm(np.array([[0, 3], [0, 0]], dtype=complex)) == pytest.approx(3.0)
    # sum of the first hard-coded example pair
    A = np.array([[1, 0], [-3, 1]], dtype=complex)
    B = np.array([[-1, 2], [0, 1]], dtype=complex)
    assert operator_norm(A + B) ** 2 == pytest.approx(14.52, abs=5e-3)


def test_norm_properties_random():
    rng = stream_rng(2, "normprops")
    for n in (1, 2, 3, 5, 8):
        A = random_complex(rng, n)
        nrm = operator_norm(A)
        assert operator_norm(adjoint(A)) == pytest.approx(nrm, rel=1e-10)
        assert operator_norm(adjoint(A) @ A) == pytest.approx(nrm**2, rel=1e-10)
        # cross-check against an independent SVD oracle
        assert nrm == pytest.approx(np.linalg.svd(A, compute_uv=False)[0], rel=1e-12)


def test_abs_operator_examples():
    A = np.array([[0, 2], [0, 0]], dtype=complex)
    np.testing.assert_allclose(abs_operator(A), np.diag([0.0, 2.0]), atol=1e-12)
    rng = stream_rng(3, "abspos")
    H = random_hermitian(rng, 4)
    P = hermitian_power(H @ H, 0.5)  # PSD by construction
    np.testing.assert_allclose(abs_operator(P), P, atol=1e-10)


def test_abs_operator_cross_checked_by_singular_values():
    A = np.array([[1, 0], [-3, 1]], dtype=complex)
    absA = abs_operator(A)
    assert norm_hermitian(absA) == pytest.approx(operator_norm(A), rel=1e-12)
    sv = np.linalg.svd(A, compute_uv=False)
    np.testing.assert_allclose(np.linalg.eigvalsh(absA), np.sort(sv), atol=1e-12)


def test_abs_operator_square_reconstructs_gram():
    rng = stream_rng(4, "abssquare")
    for n in (2, 5, 8):
        A = random_complex(rng, n)
        absA = abs_operator(A)
        err = np.linalg.norm(absA @ absA - adjoint(A) @ A, 2)
        assert err <= 1e-11 * n * (1.0 + operator_norm(A) ** 2)


def test_apply_scalar_function_examples():
    from numradlab.functions import power

    rng = stream_rng(5, "fc")
    H = random_hermitian(rng, 4)
    H += (operator_norm(H) + 1.0) * np.eye(4)  # shift spectrum into [0, inf)
    np.testing.assert_allclose(apply_scalar_function(power(1.0), H), H, atol=1e-12)
    np.testing.assert_allclose(
        apply_scalar_function(power(0.5), np.diag([4.0, 9.0]).astype(complex)),
        np.diag([2.0, 3.0]),
        atol=1e-12,
    )
    pauli_x = np.array([[0, 1], [1, 0]], dtype=complex)
    np.testing.assert_allclose(apply_scalar_function(power(2.0), pauli_x), np.eye(2), atol=1e-12)


def test_apply_scalar_function_commutes_and_composes():
    from numradlab.functions import power

    rng = stream_rng(6, "compose")
    G = random_complex(rng, 5)
    P = hermitian_part(adjoint(G) @ G)  # PSD
    fP = apply_scalar_function(power(1.5), P)
    assert np.linalg.norm(fP @ P - P @ fP, 2) <= 1e-10 * (1 + operator_norm(P) ** 2)
    # (t^a) o (t^b) = t^(ab) on PSD inputs
    inner = apply_scalar_function(power(0.5), P)
    outer = apply_scalar_function(power(3.0), inner)
    direct = apply_scalar_function(power(1.5), P)
    assert np.linalg.norm(outer - direct, 2) <= 1e-10 * (1 + operator_norm(P) ** 1.5)


def test_apply_scalar_function_domain_violation():
    from numradlab.functions import power

    H = np.diag([1.0, -2.0]).astype(complex)
    with pytest.raises(errors.DomainViolation):
        apply_scalar_function(power(0.5), H)


def test_lambda_extremes_examples():
    assert lambda_min(np.diag([1.0, 4.0]).astype(complex)) == pytest.approx(1.0)
    assert lambda_max(np.diag([1.0, 4.0]).astype(complex)) == pytest.approx(4.0)
    Z = np.zeros((3, 3), dtype=complex)
    assert lambda_min(Z) == 0.0
    assert lambda_max(Z) == 0.0


def test_lambda_min_matches_hand_computed_radius_gap():
    # 2x2 nilpotent Jordan block: |A| has spectrum {0, 1} and w(A) = 1/2,
    # so (|A| - w I)^2 has minimum eigenvalue 1/4.
    A = np.array([[0, 1], [0, 0]], dtype=complex)
    w = numerical_radius(A).value
    T = (abs_operator(A) - w * np.eye(2)) @ (abs_operator(A) - w * np.eye(2))
    assert lambda_min(T) == pytest.approx(0.25, abs=1e-10)


def test_lambda_min_is_quadratic_form_infimum():
    rng = stream_rng(7, "rayleigh")
    H = random_hermitian(rng, 4)
    lam = lambda_min(H)
    X = complex_gaussian(rng, (10_000, 4))
    X /= np.linalg.norm(X, axis=1)[:, None]
    forms = np.einsum("ij,ij->i", X.conj(), X @ H.T).real
    assert forms.min() >= lam - 1e-12
    # dimension-2 exhaustive parametrization tightens the sampled gap
    H2 = random_hermitian(rng, 2)
    t = np.linspace(0, np.pi / 2, 400)
    phi = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    tt, pp = np.meshgrid(t, phi)
    xs = np.stack([np.cos(tt).ravel(), (np.exp(1j * pp) * np.sin(tt)).ravel()], axis=1)
    forms2 = np.einsum("ij,ij->i", xs.conj(), xs @ H2.T).real
    assert abs(forms2.min() - lambda_min(H2)) <= 1e-4 * (1 + abs(lambda_min(H2)))


def test_loewner_examples():
    assert loewner_leq(np.diag([1.0, 2.0]).astype(complex), np.diag([2.0, 3.0]).astype(complex))
    A = np.diag([1.0, 5.0]).astype(complex)
    assert loewner_leq(A, A)
    B = np.diag([2.0, 3.0]).astype(complex)
    assert not loewner_leq(np.diag([1.0, 5.0]).astype(complex), B)
    assert not loewner_leq(B, np.diag([1.0, 5.0]).astype(complex))


def test_loewner_reflexive_transitive_on_psd_chains():
    rng = stream_rng(8, "chain")
    for _ in range(25):
        n = int(rng.integers(2, 6))
        G = random_complex(rng, n)
        A = hermitian_part(adjoint(G) @ G)
        Wp = random_complex(rng, n)
        Wq = random_complex(rng, n)
        P = hermitian_part(adjoint(Wp) @ Wp)
        Q = hermitian_part(adjoint(Wq) @ Wq)
        B = A + P
        C = B + Q
        assert loewner_leq(A, A)
        assert loewner_leq(A, B) and loewner_leq(B, C)
        assert loewner_leq(A, C)


def test_hermitian_power_negative_requires_invertible():
    with pytest.raises(errors.NotInvertible):
        hermitian_power(np.diag([1.0, 0.0]).astype(complex), -0.5)
    with pytest.raises(errors.NotPositive):
        hermitian_power(np.diag([1.0, -1.0]).astype(complex), 0.5)
