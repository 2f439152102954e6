"""Catalog of scalar functions with verified property flags, multiplicative
pairs (f, g) with f(t) g(t) = t, the superquadratic defect, and the sampled
Jensen-gap functional for Hermitian pairs.

Flags are declared by the constructors and spot-validated by the test suite,
not derived symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainViolation, NotSuperquadratic, UnsupportedParameter
from .linalg import check_hermitian
from .radius import SphereSampler, quad_forms, sphere_inf

NONNEG = "nonnegative"
INCREASING = "increasing"
CONVEX = "convex"
CONCAVE = "concave"
SUPERQUADRATIC = "superquadratic"

# Relative clip slack at closed endpoints and exclusion margin at open ones.
_CLOSED_SLACK = 1e-12
_OPEN_MARGIN = 1e-10


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def admit(self, x):
        """Validate an array of points, clipping roundoff at closed endpoints."""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        lo_val = float(x.min(initial=np.inf))
        hi_val = float(x.max(initial=-np.inf))
        scale = max(1.0, abs(lo_val), abs(hi_val))
        out = x
        if np.isfinite(self.lo) and lo_val < self.lo:
            if self.lo_open or lo_val < self.lo - _CLOSED_SLACK * scale:
                raise DomainViolation(f"value {lo_val:.6e} outside domain (lower endpoint {self.lo:g})")
            out = np.maximum(out, self.lo)
        elif self.lo_open and np.isfinite(self.lo) and lo_val <= self.lo + _OPEN_MARGIN * scale:
            raise DomainViolation(f"value {lo_val:.6e} too close to open lower endpoint {self.lo:g}")
        if np.isfinite(self.hi) and hi_val > self.hi:
            if self.hi_open or hi_val > self.hi + _CLOSED_SLACK * scale:
                raise DomainViolation(f"value {hi_val:.6e} outside domain (upper endpoint {self.hi:g})")
            out = np.minimum(out, self.hi)
        elif self.hi_open and np.isfinite(self.hi) and hi_val >= self.hi - _OPEN_MARGIN * scale:
            raise DomainViolation(f"value {hi_val:.6e} too close to open upper endpoint {self.hi:g}")
        return out


@dataclass(frozen=True)
class ScalarFunction:
    """A catalog function: kind + parameters + declared property flags."""

    kind: str
    params: tuple
    flags: frozenset
    domain: Interval

    def __call__(self, t):
        scalar = np.isscalar(t) or getattr(t, "ndim", 1) == 0
        x = self.domain.admit(t)
        if self.kind == "power":
            (r,) = self.params
            y = x**r
        elif self.kind == "affine-power":
            scale, shift, r = self.params
            y = shift + scale * x**r
        elif self.kind == "deformed-exp":
            (r,) = self.params
            y = (1.0 + r * x) ** (1.0 / r)
        else:  # pragma: no cover
            raise UnsupportedParameter(f"unknown function kind {self.kind!r}")
        return float(y[0]) if scalar else y

    def derivative(self, t):
        """Pointwise derivative; used as the tangent constant of the defect."""
        x = float(t)
        if self.kind == "power":
            (r,) = self.params
            return r * x ** (r - 1.0) if r != 0 else 0.0
        if self.kind == "affine-power":
            scale, shift, r = self.params
            return scale * r * x ** (r - 1.0) if r != 0 else 0.0
        (r,) = self.params
        return (1.0 + r * x) ** (1.0 / r - 1.0)

    @property
    def name(self):
        if self.kind == "power":
            return f"pow:{self.params[0]:g}"
        if self.kind == "deformed-exp":
            return f"expr:{self.params[0]:g}"
        scale, shift, r = self.params
        return f"affine:{shift:g}:{scale:g}:{r:g}"


def power(r) -> ScalarFunction:
    """t -> t**r; nonnegative integer exponents extend to the whole line,
    other exponents live on [0, inf) (open at 0 when negative).

    Property flags describe the behaviour on [0, inf)."""
    r = float(r)
    flags = {NONNEG}
    if r > 0:
        flags.add(INCREASING)
    if r >= 1 or r < 0:
        flags.add(CONVEX)
    if 0 <= r <= 1:
        flags.add(CONCAVE)
    if r >= 2:
        flags.add(SUPERQUADRATIC)
    if r >= 0 and r == int(r):
        domain = Interval(-np.inf, np.inf)
    else:
        domain = Interval(0.0, np.inf, lo_open=r < 0)
    return ScalarFunction("power", (r,), frozenset(flags), domain)


def affine_power(scale, shift, exponent=1.0) -> ScalarFunction:
    """t -> shift + scale * t**exponent on [0, inf)."""
    scale, shift, exponent = float(scale), float(shift), float(exponent)
    flags = set()
    if scale >= 0 and shift >= 0:
        flags.add(NONNEG)
        if scale > 0 and exponent > 0:
            flags.add(INCREASING)
        if exponent >= 1:
            flags.add(CONVEX)
        if exponent <= 1:
            flags.add(CONCAVE)
    domain = Interval(0.0, np.inf, lo_open=exponent < 0)
    return ScalarFunction("affine-power", (scale, shift, exponent), frozenset(flags), domain)


def deformed_exp_function(r) -> ScalarFunction:
    """t -> (1 + r t)**(1/r), defined where 1 + r t > 0."""
    r = float(r)
    if r == 0:
        raise UnsupportedParameter("deformed exponential is undefined for r = 0")
    flags = {NONNEG, INCREASING}
    if r <= 1:
        flags.add(CONVEX)
    if r >= 1:
        flags.add(CONCAVE)
    if r > 0:
        domain = Interval(-1.0 / r, np.inf, lo_open=True)
    else:
        domain = Interval(-np.inf, -1.0 / r, hi_open=True)
    return ScalarFunction("deformed-exp", (r,), frozenset(flags), domain)


IDENTITY = power(1.0)


@dataclass(frozen=True)
class SchwarzPair:
    """Non-negative continuous pair with f(t) g(t) = t on [0, inf)."""

    f: ScalarFunction
    g: ScalarFunction

    @property
    def name(self):
        return f"{self.f.name}|{self.g.name}"


def schwarz_power_pair(alpha) -> SchwarzPair:
    """The power pair (t**alpha, t**(1-alpha)), 0 <= alpha <= 1."""
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise UnsupportedParameter("power pair exponent must lie in [0, 1]")
    return SchwarzPair(power(alpha), power(1.0 - alpha))


def validate_schwarz_pair(pair: SchwarzPair, t_max=100.0, points=1000, tol=1e-12):
    """Check f*g = t on a dense grid; raises UnsupportedParameter on failure."""
    t = np.linspace(0.0, t_max, points)
    ft = np.asarray(pair.f(t))
    gt = np.asarray(pair.g(t))
    if np.any(ft < -tol) or np.any(gt < -tol):
        raise UnsupportedParameter("pair functions must be non-negative")
    err = np.abs(ft * gt - t)
    bad = err > tol * (1.0 + t)
    if np.any(bad):
        k = int(np.argmax(err / (1.0 + t)))
        raise UnsupportedParameter(f"f(t)g(t) != t at t={t[k]:g} (error {err[k]:.3e})")


def parse_function(name) -> ScalarFunction:
    """Resolve catalog names: "pow:<r>", "expr:<r>", "affine:<shift>:<scale>[:<exp>]"."""
    parts = name.strip().split(":")
    try:
        if parts[0] == "pow" and len(parts) == 2:
            return power(float(parts[1]))
        if parts[0] == "expr" and len(parts) == 2:
            return deformed_exp_function(float(parts[1]))
        if parts[0] == "affine" and len(parts) in (3, 4):
            shift, scale = float(parts[1]), float(parts[2])
            exponent = float(parts[3]) if len(parts) == 4 else 1.0
            return affine_power(scale, shift, exponent)
    except ValueError as exc:
        raise UnsupportedParameter(f"bad function name {name!r}: {exc}") from exc
    raise UnsupportedParameter(f"unknown function name {name!r}")


def parse_pair(name) -> SchwarzPair:
    """Resolve pair names like "pow:0.3|pow:0.7"; the pair is validated."""
    halves = name.split("|")
    if len(halves) != 2:
        raise UnsupportedParameter(f"pair name must have two parts, got {name!r}")
    pair = SchwarzPair(parse_function(halves[0]), parse_function(halves[1]))
    validate_schwarz_pair(pair)
    return pair


def superquadratic_defect(f: ScalarFunction, s, t) -> float:
    """f(t) - f(|t-s|) - C_s (t - s) - f(s) with the catalog tangent C_s = f'(s)."""
    if SUPERQUADRATIC not in f.flags:
        raise NotSuperquadratic(f"{f.name} is not flagged superquadratic")
    s, t = float(s), float(t)
    if s < 0 or t < 0:
        raise DomainViolation("superquadratic defect requires s, t >= 0")
    c_s = f.derivative(s)
    return f(t) - f(abs(t - s)) - c_s * (t - s) - f(s)


# Descent refinement starts from the best of this fixed stream prefix, so the
# reported Jensen-gap estimate is monotone nonincreasing in the sample count
# (for sample counts at or above the prefix length).
_DESCENT_PREFIX = 32


def jensen_gap_mu(f: ScalarFunction, A, B, sampler: SphereSampler) -> float:
    """Upper estimate of the pointwise Jensen gap infimum for a Hermitian pair.

    Estimates inf over unit x of
        f(<Ax,x>) + f(<Bx,x>) - 2 f(<(A+B)/2 x, x>)
    by the minimum over the sample stream, combined with a local descent
    started from a fixed stream prefix. The sampled minimum can only
    overestimate the infimum, so subtracting it from an upper bound yields a
    stricter (sound) test. Non-negative for convex f.
    """
    if CONVEX not in f.flags:
        raise UnsupportedParameter(f"{f.name} is not flagged convex")
    A = check_hermitian(A)
    B = check_hermitian(B)
    if A.shape != B.shape:
        from .errors import DimensionMismatch

        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    spectra = np.concatenate([np.linalg.eigvalsh(A), np.linalg.eigvalsh(B)])
    f(spectra)  # raises DomainViolation if the spectra escape f's domain
    M = (A + B) / 2
    n = A.shape[0]

    def objective(X):
        qa = quad_forms(A, X).real
        qb = quad_forms(B, X).real
        qm = quad_forms(M, X).real
        return f(qa) + f(qb) - 2.0 * f(qm)

    sample_min = float(np.min(objective(sampler.unit_vectors(n))))
    prefix = SphereSampler(
        sampler.seed, min(sampler.samples, _DESCENT_PREFIX), sampler.descent_steps
    )
    descended, _ = sphere_inf(objective, n, prefix)
    return float(min(sample_min, descended))
