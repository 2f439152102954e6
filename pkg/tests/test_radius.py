import numpy as np
import pytest

from numradlab.ensembles import EnsembleSpec, sample
from numradlab.errors import DimensionMismatch
from numradlab.linalg import operator_norm
from numradlab.radius import (
    SphereSampler,
    _rotated_stack,
    complex_gaussian,
    euclidean_radius,
    numerical_radius,
    quad_forms,
    sphere_sup,
    stream_rng,
)


def dense_sweep_oracle(A, grid=100_000):
    """Independent oracle: plain dense angle grid, no refinement."""
    best = -np.inf
    th = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    for i in range(0, grid, 10_000):
        vals = np.linalg.eigvalsh(_rotated_stack(A, th[i : i + 10_000]))[:, -1]
        best = max(best, float(vals.max()))
    return best


def test_radius_examples():
    assert numerical_radius(np.diag([1.0, -3.0]).astype(complex)).value == pytest.approx(3.0, abs=1e-10)
    nil = np.array([[0, 1], [0, 0]], dtype=complex)
    res = numerical_radius(nil)
    assert res.value == pytest.approx(0.5, abs=1e-10)
    # frozen from the dense sweep oracle (and the 2x2 ellipse geometry)
    jordan = np.array([[1, 1], [0, 1]], dtype=complex)
    assert dense_sweep_oracle(jordan, grid=20_000) == pytest.approx(1.5, abs=1e-7)
    assert numerical_radius(jordan).value == pytest.approx(1.5, abs=1e-10)


def test_radius_against_dense_oracle_random():
    rng = stream_rng(20, "oracle")
    for n in (2, 3, 5, 8):
        for _ in range(10):
            A = complex_gaussian(rng, (n, n))
            fast = numerical_radius(A).value
            oracle = dense_sweep_oracle(A, grid=20_000)
            assert fast >= oracle - 1e-9
            assert fast <= oracle + 1e-6  # oracle grid error bound


def test_radius_result_invariants():
    rng = stream_rng(21, "resinv")
    for n in (1, 2, 3, 5, 8):
        A = complex_gaussian(rng, (n, n))
        res = numerical_radius(A)
        nrm = operator_norm(A)
        assert abs(np.linalg.norm(res.witness) - 1.0) <= 1e-12
        rq = abs(np.vdot(res.witness, A @ res.witness))
        assert rq <= res.value + 1e-9 * (1.0 + nrm)
        assert rq >= res.value - res.refinement_width - 1e-12
        assert 0.0 <= res.theta_star < 2 * np.pi
        assert nrm / 2 - 1e-10 <= res.value <= nrm + 1e-10


def test_radius_rejects_bad_arguments():
    A = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        numerical_radius(A, grid=8)
    with pytest.raises(ValueError):
        numerical_radius(A, tol=0.0)


def test_sandwich_property_bulk():
    for dim in (2, 3, 5, 8):
        ens = EnsembleSpec(dim=dim, kind="generic", seed=100 + dim)
        for i in range(500):
            A = sample(ens, i)
            res = numerical_radius(A, grid=64, tol=1e-7)
            nrm = operator_norm(A)
            assert nrm / 2 - 1e-8 <= res.value <= nrm + 1e-8


def test_normal_matrices_radius_is_spectral_radius():
    for dim in (2, 3, 5, 8):
        ens = EnsembleSpec(dim=dim, kind="normal", seed=200 + dim)
        for i in range(25):
            A = sample(ens, i)
            w = numerical_radius(A).value
            rho = float(np.max(np.abs(np.linalg.eigvals(A))))
            assert abs(w - rho) <= 1e-8


def test_square_zero_radius_is_half_norm():
    for dim in (2, 3, 5, 8):
        ens = EnsembleSpec(dim=dim, kind="square-zero", seed=300 + dim)
        for i in range(25):
            A = sample(ens, i)
            w = numerical_radius(A).value
            assert abs(w - operator_norm(A) / 2) <= 1e-8


def test_sphere_sup_examples():
    T = np.diag([1.0, 4.0]).astype(complex)
    val, x = sphere_sup(lambda X: quad_forms(T, X).real, 2, SphereSampler(seed=5))
    assert val == pytest.approx(4.0, abs=1e-6)
    assert abs(np.linalg.norm(x) - 1.0) <= 1e-12
    zval, _ = sphere_sup(lambda X: np.zeros(len(X)), 3, SphereSampler(seed=5))
    assert zval == 0.0


def test_sphere_sup_never_exceeds_sweep():
    rng = stream_rng(22, "sweepvs")
    for k in range(100):
        n = int(rng.integers(2, 6))
        A = complex_gaussian(rng, (n, n))
        w = numerical_radius(A).value
        val, _ = sphere_sup(
            lambda X: np.abs(quad_forms(A, X)), n, SphereSampler(seed=3000 + k, samples=1000, descent_steps=20)
        )
        assert val <= w + 1e-9


def test_sampler_determinism_and_prefix():
    s1 = SphereSampler(seed=77, samples=100)
    s2 = SphereSampler(seed=77, samples=100)
    np.testing.assert_array_equal(s1.unit_vectors(4), s2.unit_vectors(4))
    big = SphereSampler(seed=77, samples=400).unit_vectors(4)
    np.testing.assert_array_equal(big[:100], s1.unit_vectors(4))


def test_euclidean_radius_examples():
    rng = stream_rng(23, "we")
    A = complex_gaussian(rng, (2, 2))
    we = euclidean_radius(A, np.zeros((2, 2)), SphereSampler(seed=9))
    assert we == pytest.approx(numerical_radius(A).value, abs=1e-6)
    I = np.eye(2, dtype=complex)
    assert euclidean_radius(I, I) == pytest.approx(np.sqrt(2.0), abs=1e-9)
    # frozen from the one-dimensional exhaustive oracle: max over a in [0,1]
    # of sqrt(a^2 + (1-a)^2) = 1 at the endpoints
    D1 = np.diag([1.0, 0.0]).astype(complex)
    D2 = np.diag([0.0, 1.0]).astype(complex)
    assert euclidean_radius(D1, D2) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DimensionMismatch):
        euclidean_radius(np.eye(2, dtype=complex), np.eye(3, dtype=complex))


def test_euclidean_radius_hermitian_vs_sampling():
    rng = stream_rng(24, "wecross")
    for k in range(20):
        n = int(rng.integers(2, 5))
        G1 = complex_gaussian(rng, (n, n))
        G2 = complex_gaussian(rng, (n, n))
        A = G1.conj().T @ G1
        B = G2.conj().T @ G2
        sweep = euclidean_radius(A, B)
        sampled, _ = sphere_sup(
            lambda X: np.hypot(np.abs(quad_forms(A, X)), np.abs(quad_forms(B, X))),
            n,
            SphereSampler(seed=4000 + k),
        )
        assert sampled <= sweep + 1e-7
        assert sweep <= sampled + 1e-5
