import numpy as np
import pytest

from numradlab import errors
from numradlab.functions import (
    CONCAVE,
    CONVEX,
    INCREASING,
    NONNEG,
    SUPERQUADRATIC,
    deformed_exp_function,
    jensen_gap_mu,
    parse_function,
    parse_pair,
    power,
    schwarz_power_pair,
    superquadratic_defect,
    validate_schwarz_pair,
)
from numradlab.linalg import hermitian_part
from numradlab.radius import SphereSampler, complex_gaussian, stream_rng


def test_power_flags():
    p = power(2.0)
    assert {NONNEG, INCREASING, CONVEX, SUPERQUADRATIC} <= p.flags
    assert CONCAVE not in p.flags
    half = power(0.5)
    assert {NONNEG, INCREASING, CONCAVE} <= half.flags
    assert CONVEX not in half.flags and SUPERQUADRATIC not in half.flags
    lin = power(1.0)
    assert {CONVEX, CONCAVE, INCREASING} <= lin.flags
    inv = power(-1.0)
    assert CONVEX in inv.flags and INCREASING not in inv.flags


def test_eval_examples():
    assert power(2.0)(3.0) == pytest.approx(9.0)
    assert deformed_exp_function(1.0)(0.5) == pytest.approx(1.5)
    assert deformed_exp_function(-1.0)(0.5) == pytest.approx(2.0)
    with pytest.raises(errors.DomainViolation):
        deformed_exp_function(-1.0)(1.5)
    with pytest.raises(errors.UnsupportedParameter):
        deformed_exp_function(0.0)
    with pytest.raises(errors.DomainViolation):
        power(-0.5)(0.0)


def test_parse_names():
    assert parse_function("pow:2").params == (2.0,)
    assert parse_function("expr:-1").kind == "deformed-exp"
    pair = parse_pair("pow:0.3|pow:0.7")
    assert pair.f.params == (0.3,) and pair.g.params == (0.7,)
    with pytest.raises(errors.UnsupportedParameter):
        parse_function("exp:1")
    with pytest.raises(errors.UnsupportedParameter):
        parse_pair("pow:0.3|pow:0.8")  # f*g != t


def test_schwarz_pair_grid_invariant():
    t = np.linspace(0.0, 100.0, 1000)
    for alpha in (0.0, 0.25, 0.5, 0.8, 1.0):
        pair = schwarz_power_pair(alpha)
        validate_schwarz_pair(pair)
        err = np.abs(np.asarray(pair.f(t)) * np.asarray(pair.g(t)) - t)
        assert np.all(err <= 1e-12 * (1.0 + t))


def test_superquadratic_defect_hand_values():
    f2 = power(2.0)
    assert superquadratic_defect(f2, 1.0, 3.0) == pytest.approx(0.0, abs=1e-12)
    assert superquadratic_defect(f2, 0.7, 0.7) == pytest.approx(0.0, abs=1e-12)
    f3 = power(3.0)
    assert superquadratic_defect(f3, 1.0, 0.0) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(errors.NotSuperquadratic):
        superquadratic_defect(power(1.5), 1.0, 2.0)
    with pytest.raises(errors.DomainViolation):
        superquadratic_defect(f2, -1.0, 2.0)


def test_superquadratic_defect_grid():
    s = np.linspace(0.0, 10.0, 100)
    t = np.linspace(0.0, 10.0, 100)
    for r in (2.0, 2.5, 3.0, 4.0):
        f = power(r)
        worst = min(
            superquadratic_defect(f, float(si), float(ti)) for si in s for ti in t
        )
        assert worst >= -1e-12


def _random_psd(rng, n, shift=0.0):
    G = complex_gaussian(rng, (n, n))
    return hermitian_part(G.conj().T @ G) + shift * np.eye(n)


def test_jensen_gap_examples():
    rng = stream_rng(10, "jensen")
    A = _random_psd(rng, 3)
    sampler = SphereSampler(seed=42, samples=2000, descent_steps=30)
    assert jensen_gap_mu(power(2.0), A, A, sampler) == pytest.approx(0.0, abs=1e-10)
    # gap attained at the second basis vector: exhaustive 2-dim oracle gives 0
    A2 = np.diag([1.0, 3.0]).astype(complex)
    B2 = np.diag([5.0, 3.0]).astype(complex)
    est = jensen_gap_mu(power(2.0), A2, B2, sampler)
    assert -1e-12 <= est <= 1e-6
    t = np.linspace(0, np.pi / 2, 2000)
    u = np.cos(t) ** 2 * 1 + np.sin(t) ** 2 * 3
    v = np.cos(t) ** 2 * 5 + np.sin(t) ** 2 * 3
    oracle = np.min(u**2 + v**2 - 2 * ((u + v) / 2) ** 2)
    assert oracle == pytest.approx(0.0, abs=1e-12)


def test_jensen_gap_nonnegative_for_convex():
    rng = stream_rng(11, "jensen-prop")
    sampler = SphereSampler(seed=9, samples=500, descent_steps=10)
    for trial in range(100):
        n = 2 + trial % 5
        A = _random_psd(rng, n)
        B = _random_psd(rng, n)
        f = (power(2.0), power(3.0), power(1.5))[trial % 3]
        assert jensen_gap_mu(f, A, B, sampler) >= -1e-12


def test_jensen_gap_monotone_in_sample_count():
    rng = stream_rng(12, "jensen-mono")
    A = _random_psd(rng, 4)
    B = _random_psd(rng, 4)
    prev = np.inf
    for samples in (50, 200, 1000, 5000):
        est = jensen_gap_mu(power(2.0), A, B, SphereSampler(seed=7, samples=samples, descent_steps=12))
        assert est <= prev + 1e-15
        prev = est


def test_jensen_gap_flag_and_domain_checks():
    rng = stream_rng(13, "jensen-dom")
    A = _random_psd(rng, 3)
    with pytest.raises(errors.UnsupportedParameter):
        jensen_gap_mu(power(0.5), A, A, SphereSampler(seed=1))
    with pytest.raises(errors.DomainViolation):
        jensen_gap_mu(power(1.5), A - 10 * np.eye(3), A, SphereSampler(seed=1))
