"""Spectral zeta functions: lattice constants, Epstein-Hurwitz zeta with
analytic continuation, the two-dimensional Kronecker-type closed form, and
the spectral zeta of the integer lattice and of finite bundle tori.

Two independent evaluation routes are kept alive wherever the package
cross-validates itself:

* ``eigensum``       -- lattice sums over the continuum spectrum, with
                        Hurwitz-zeta tail completion (d <= 2),
* ``integral_split`` -- Mellin integrals of the theta function, split at
                        t = 1 with the (4 pi t)^{-d/2} leading term removed
                        on (0, 1]; this is the analytic continuation and is
                        valid for every s away from the pole at d/2.

The derivative at s = 0 uses the dual (Poisson) form of theta minus its
k = 0 term, so the integrand on (0, 1] is a sum of exponentially small
terms rather than a difference of large ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bundle_graph import TorusBundleSpec, torus_eigenvalues
from .errors import PreconditionError
from .heat_theta import ContinuousTorusSpec, theta_continuous, theta_continuous_minus_leading
from .quadrature import QuadratureSpec, TailRule, integrate_interval, integrate_semi_infinite
from .special_functions import (
    bessel_i0_scaled_ratio_minus_one,
    bessel_i_scaled,
    hurwitz_zeta,
    log_bessel_i0_scaled,
    reciprocal_gamma,
    sin_pi,
)

EULER_GAMMA = 0.57721566490153286060651209008240243

ZETA_METHODS = ("eigensum", "integral_split", "closed_form_d1", "kronecker_d2", "poisson_dual")

DEFAULT_EIGENSUM_CAP = 4_000_000


@dataclass(frozen=True)
class ZetaEvaluation:
    value: float | complex
    error_estimate: float
    method: str

    def __post_init__(self):
        if self.error_estimate < 0:
            raise PreconditionError("error estimate must be nonnegative")
        if self.method not in ZETA_METHODS:
            raise PreconditionError(f"unknown method {self.method!r}")


def bernoulli_b2(x: float) -> float:
    """Second Bernoulli polynomial x^2 - x + 1/6."""
    return x * x - x + 1.0 / 6.0


def _scaled_i0_power(d: int, t: float) -> float:
    """(e^{-2t} I_0(2t))^d, the integrand core shared by c_d and the lattice zeta."""
    return bessel_i_scaled(0, 2.0 * t) ** d


def _scaled_i0_power_minus_one(d: int, t: float) -> float:
    """(e^{-2t} I_0(2t))^d - 1 without cancellation for small t."""
    return math.expm1(d * log_bessel_i0_scaled(2.0 * t))


def _scaled_i0_power_minus_leading(d: int, t: float) -> float:
    """(e^{-2t} I_0(2t))^d - (4 pi t)^{-d/2} without cancellation for large t."""
    r = bessel_i0_scaled_ratio_minus_one(2.0 * t)
    return (4.0 * math.pi * t) ** (-0.5 * d) * math.expm1(d * math.log1p(r))


# ---------------------------------------------------------------------------
# lattice constant c_d
# ---------------------------------------------------------------------------


def lattice_constant(d: int, quad: QuadratureSpec | None = None) -> float:
    """The per-vertex log-determinant constant

        - integral over (0, inf) of ((e^{-2dt} I_0(2t)^d - e^{-t}) / t) dt.

    Known values: 0 in dimension one and 4G/pi (G Catalan) in dimension two.
    """
    value, _ = lattice_constant_eval(d, quad)
    return value


def lattice_constant_eval(d: int, quad: QuadratureSpec | None = None) -> tuple[float, float]:
    if not 1 <= d <= 10:
        raise PreconditionError(f"dimension must be in 1..10, got {d}")
    quad = quad or QuadratureSpec(abs_tol=1e-11, rel_tol=1e-11, max_subdivisions=8000)

    def integrand(t: float) -> float:
        if t < 0.5:
            # e^{-t} expm1(d log(e^{-2t} I_0(2t)) + t) avoids the 1 - 1 loss
            return math.exp(-t) * math.expm1(d * log_bessel_i0_scaled(2.0 * t) + t) / t
        return (_scaled_i0_power(d, t) - math.exp(-t)) / t

    res = integrate_semi_infinite(
        integrand,
        0.0,
        quad,
        tail=TailRule("power", 0.5 * d + 1.0),
    )
    return -res.value, res.error_estimate


# ---------------------------------------------------------------------------
# Epstein-Hurwitz zeta
# ---------------------------------------------------------------------------


def _canonical(spec: ContinuousTorusSpec) -> tuple[tuple[float, ...], tuple[float, ...]]:
    return spec.alpha, spec.canonical_lam()


def _require_nontrivial(spec: ContinuousTorusSpec):
    if not spec.has_nontrivial_holonomy:
        raise PreconditionError(
            "all holonomies are trivial; the continuum spectral zeta has a "
            "zero mode and is refused"
        )


def _min_frequency(spec: ContinuousTorusSpec) -> float:
    """min over the dual lattice of sum ((k_i + lam_i)/alpha_i)^2 (> 0)."""
    alpha, lam = _canonical(spec)
    return sum((min(l, 1.0 - l) / a) ** 2 for a, l in zip(alpha, lam))


def _eigensum_d1(s: float, alpha: float, lam: float, explicit: int = 30):
    acc = 0.0
    for k in range(-explicit, explicit + 1):
        acc += abs(k + lam) ** (-2.0 * s)
    acc += hurwitz_zeta(2.0 * s, explicit + 1 + lam)
    acc += hurwitz_zeta(2.0 * s, explicit + 1 - lam)
    value = (2.0 * math.pi) ** (-2.0 * s) * alpha ** (2.0 * s) * acc
    return value, 1e-13 * abs(value)


def _inner_line_sum(u: float, s: float, alpha2: float, lam2: float) -> float:
    """sum over k of (u^2 + ((k + lam2)/alpha2)^2)^{-s}, Hurwitz-completed."""
    cut = max(64, int(math.ceil(8.0 * alpha2 * abs(u))) + 2)
    acc = 0.0
    for k in range(-cut, cut + 1):
        acc += (u * u + ((k + lam2) / alpha2) ** 2) ** (-s)
    # binomial tail: (u^2 + v^2)^{-s} = sum_m C(-s, m) u^{2m} v^{-2s-2m}
    coeff = 1.0
    u2 = u * u
    for m in range(0, 11):
        power = 2.0 * s + 2.0 * m
        tail = hurwitz_zeta(power, cut + 1 + lam2) + hurwitz_zeta(power, cut + 1 - lam2)
        acc += coeff * u2**m * alpha2**power * tail
        coeff *= -(s + m) / (m + 1.0)
    return acc


def _eigensum_d2(s: float, alpha, lam):
    alpha1, alpha2 = alpha
    lam1, lam2 = lam
    outer = max(30, int(math.ceil(6.5 * alpha1 / alpha2)))
    total = 0.0
    for k1 in range(-outer, outer + 1):
        total += _inner_line_sum((k1 + lam1) / alpha1, s, alpha2, lam2)
    # far outer columns: inner sum ~ alpha2 sqrt(pi) Gamma(s-1/2)/Gamma(s)
    # |u|^{1-2s} up to exponentially small Poisson corrections
    c_line = alpha2 * math.sqrt(math.pi) * math.gamma(s - 0.5) / math.gamma(s)
    tail = hurwitz_zeta(2.0 * s - 1.0, outer + 1 + lam1) + hurwitz_zeta(
        2.0 * s - 1.0, outer + 1 - lam1
    )
    total += c_line * alpha1 ** (2.0 * s - 1.0) * tail
    value = (2.0 * math.pi) ** (-2.0 * s) * total
    return value, 1e-12 * abs(value)


def epstein_hurwitz_zeta(
    s: float,
    spec: ContinuousTorusSpec,
    method: str = "auto",
    quad: QuadratureSpec | None = None,
) -> ZetaEvaluation:
    """Continuum spectral zeta  (2 pi)^{-2s} sum_K (sum_i ((k_i+lam_i)/alpha_i)^2)^{-s}.

    ``method="eigensum"`` runs the lattice sum with Hurwitz tail completion
    (d <= 2, s > d/2 + 0.25 only); ``method="integral_split"`` runs the
    Mellin-split analytic continuation, valid for every s != d/2.  The
    boundary holonomy value 1 is folded to 0 before summation.
    """
    _require_nontrivial(spec)
    d = spec.d
    if s == 0.5 * d:
        raise PreconditionError(f"pole at s = d/2 = {0.5 * d}")
    if method == "auto":
        method = "eigensum" if (d <= 2 and s >= 0.5 * d + 0.25) else "integral_split"
    if method == "eigensum":
        if d > 2:
            raise PreconditionError("eigensum route implemented for d <= 2 only")
        if s < 0.5 * d + 0.25:
            raise PreconditionError(
                f"eigensum converges too slowly within 0.25 of the pole; "
                f"need s >= {0.5 * d + 0.25}, got {s} (use the integral split)"
            )
        alpha, lam = _canonical(spec)
        if d == 1:
            value, err = _eigensum_d1(s, alpha[0], lam[0])
        else:
            value, err = _eigensum_d2(s, alpha, lam)
        return ZetaEvaluation(value, err, "eigensum")
    if method != "integral_split":
        raise PreconditionError(f"unknown method {method!r} for epstein_hurwitz_zeta")

    quad = quad or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10, max_subdivisions=8000)
    leading = math.prod(spec.alpha) * (4.0 * math.pi) ** (-0.5 * d)
    rate = 4.0 * math.pi**2 * _min_frequency(spec)

    tail_part = integrate_semi_infinite(
        lambda t: theta_continuous(spec, t, form="spectral") * t ** (s - 1.0),
        1.0,
        quad,
        tail=TailRule("exp", rate),
    )
    head_part = integrate_interval(
        lambda t: theta_continuous_minus_leading(spec, t) * t ** (s - 1.0),
        0.0,
        1.0,
        quad,
    )
    bracket = tail_part.value + head_part.value + leading / (s - 0.5 * d)
    rg = reciprocal_gamma(s)
    value = rg * bracket
    err = abs(rg) * (tail_part.error_estimate + head_part.error_estimate)
    return ZetaEvaluation(value, err, "integral_split")


def epstein_hurwitz_deriv0(
    spec: ContinuousTorusSpec,
    method: str = "auto",
    quad: QuadratureSpec | None = None,
) -> ZetaEvaluation:
    """d/ds at s = 0 of the continuum spectral zeta.

    The default route integrates the theta function:

        int_1^inf theta(t) dt/t
        + int_0^1 (theta(t) - prod(alpha) (4 pi t)^{-d/2}) dt/t
        - (2/d) prod(alpha) (4 pi)^{-d/2},

    with the middle integrand assembled from the Poisson-dual series so it
    is a sum of exponentially small terms.  Closed forms are available as
    ``closed_form_d1`` and ``kronecker_d2``.
    """
    _require_nontrivial(spec)
    d = spec.d
    if method == "closed_form_d1":
        if d != 1:
            raise PreconditionError("closed_form_d1 needs a one-dimensional spec")
        lam = spec.canonical_lam()[0]
        value = -2.0 * (math.log(sin_pi(lam)) + math.log(2.0))
        return ZetaEvaluation(value, 1e-14 * (1.0 + abs(value)), "closed_form_d1")
    if method == "kronecker_d2":
        if d != 2:
            raise PreconditionError("kronecker_d2 needs a two-dimensional spec")
        value = kronecker_deriv0(spec.alpha[0], spec.alpha[1], spec.lam[0], spec.lam[1])
        return ZetaEvaluation(value, 1e-12 * (1.0 + abs(value)), "kronecker_d2")
    if method not in ("auto", "poisson_dual"):
        raise PreconditionError(f"unknown method {method!r} for epstein_hurwitz_deriv0")

    quad = quad or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-11, max_subdivisions=8000)
    leading = math.prod(spec.alpha) * (4.0 * math.pi) ** (-0.5 * d)
    rate = 4.0 * math.pi**2 * _min_frequency(spec)
    tail_part = integrate_semi_infinite(
        lambda t: theta_continuous(spec, t, form="spectral") / t,
        1.0,
        quad,
        tail=TailRule("exp", rate),
    )
    head_part = integrate_interval(
        lambda t: theta_continuous_minus_leading(spec, t) / t, 0.0, 1.0, quad
    )
    value = tail_part.value + head_part.value - (2.0 / d) * leading
    err = tail_part.error_estimate + head_part.error_estimate
    return ZetaEvaluation(value, err, "poisson_dual")


def kronecker_deriv0(alpha1: float, alpha2: float, lam1: float, lam2: float) -> float:
    """Closed form for the derivative at 0 in dimension two:

        2 pi (alpha1/alpha2) B2(lam2)
        - 2 log prod over n in Z of |1 - e^{2 pi i lam1} e^{-2 pi (alpha1/alpha2)|n + lam2|}|.

    Factors are dropped once they differ from 1 by less than 1e-16.
    """
    if not (alpha1 > 0 and alpha2 > 0):
        raise PreconditionError("alpha values must be positive")
    for lam in (lam1, lam2):
        if not 0.0 <= lam <= 1.0:
            raise PreconditionError("holonomies must lie in [0, 1]")
    trivial1 = lam1 in (0.0, 1.0)
    trivial2 = lam2 in (0.0, 1.0)
    if trivial1 and trivial2:
        raise PreconditionError(
            "both holonomies trivial: the n = 0 factor vanishes and the "
            "closed form degenerates"
        )
    rho = alpha1 / alpha2
    cos1 = math.cos(2.0 * math.pi * lam1)
    log_product = 0.0
    # |n + lam2| over n in Z splits into the two ascending sequences
    # lam2, 1 + lam2, ...  and  1 - lam2, 2 - lam2, ...
    for x in (lam2, 1.0 - lam2):
        while True:
            w = 2.0 * math.pi * rho * x
            r = math.exp(-w)
            if r * (2.0 + r) < 1e-16:
                break  # remaining factors are 1 to machine precision
            log_product += 0.5 * math.log1p(r * (r - 2.0 * cos1))
            x += 1.0
    return 2.0 * math.pi * rho * bernoulli_b2(lam2) - 2.0 * log_product


# ---------------------------------------------------------------------------
# spectral zeta of the integer lattice
# ---------------------------------------------------------------------------


def _lattice_zeta_pieces(s: float, d: int, quad: QuadratureSpec):
    def head(t: float) -> float:
        return _scaled_i0_power_minus_one(d, t) * t ** (s - 1.0)

    if s < 1.0:
        # integrand ~ -2d t^s at 0; rectify the fractional power exactly
        head_res = _rectified_unit_integral(head, s, quad)
    else:
        head_res = integrate_interval(head, 0.0, 1.0, quad)

    def tail(t: float) -> float:
        return _scaled_i0_power_minus_leading(d, t) * t ** (s - 1.0)

    tail_res = integrate_semi_infinite(
        tail, 1.0, quad, tail=TailRule("power", 0.5 * d + 2.0 - s)
    )
    return head_res, tail_res


def _rectified_unit_integral(f, beta: float, quad: QuadratureSpec):
    """integral over (0, 1] of f with f ~ C t^{beta} at 0 (beta > -1)."""
    gamma = 1.0 / (1.0 + beta)

    def g(u: float) -> float:
        t = u**gamma
        return f(t) * gamma * u ** (gamma - 1.0)

    return integrate_interval(g, 0.0, 1.0, quad)


def lattice_zeta(s: float, d: int, quad: QuadratureSpec | None = None) -> ZetaEvaluation:
    """Spectral zeta of the integer lattice in dimension d.

    Implemented continuation window: -1 < s < d/2 + 1 with the pole at
    s = d/2 excluded (split at t = 1 and one subtracted asymptotic term of
    the Bessel integrand on the tail).  s = 0 returns the exact value 1.
    """
    if d < 1:
        raise PreconditionError("dimension must be >= 1")
    if s == 0.5 * d:
        raise PreconditionError(f"pole at s = d/2 = {0.5 * d}")
    if not (-1.0 < s < 0.5 * d + 1.0):
        raise PreconditionError(
            f"s = {s} outside the implemented continuation window "
            f"(-1, {0.5 * d + 1.0}) for d = {d}"
        )
    if s == 0.0:
        return ZetaEvaluation(1.0, 0.0, "integral_split")
    quad = quad or QuadratureSpec(abs_tol=1e-11, rel_tol=1e-10, max_subdivisions=8000)
    head_res, tail_res = _lattice_zeta_pieces(s, d, quad)
    bracket = head_res.value + 1.0 / s + tail_res.value
    bracket += (4.0 * math.pi) ** (-0.5 * d) / (0.5 * d - s)
    rg = reciprocal_gamma(s)
    value = rg * bracket
    err = abs(rg) * (head_res.error_estimate + tail_res.error_estimate)
    return ZetaEvaluation(value, err, "integral_split")


def lattice_zeta_deriv0(d: int, quad: QuadratureSpec | None = None) -> ZetaEvaluation:
    """d/ds at 0 of the lattice zeta; equals minus the lattice constant."""
    if d < 1:
        raise PreconditionError("dimension must be >= 1")
    quad = quad or QuadratureSpec(abs_tol=1e-11, rel_tol=1e-11, max_subdivisions=8000)
    head = integrate_interval(
        lambda t: _scaled_i0_power_minus_one(d, t) / t, 0.0, 1.0, quad
    )
    tail = integrate_semi_infinite(
        lambda t: _scaled_i0_power_minus_leading(d, t) / t,
        1.0,
        quad,
        tail=TailRule("power", 0.5 * d + 2.0),
    )
    value = EULER_GAMMA + head.value + tail.value
    value += (4.0 * math.pi) ** (-0.5 * d) * 2.0 / d
    return ZetaEvaluation(value, head.error_estimate + tail.error_estimate, "integral_split")


# ---------------------------------------------------------------------------
# spectral zeta of a finite bundle torus
# ---------------------------------------------------------------------------


def torus_zeta(s: complex, spec: TorusBundleSpec, max_terms: int = DEFAULT_EIGENSUM_CAP) -> complex:
    """Entire spectral zeta sum over the closed-form torus eigenvalues."""
    if spec.vertex_count > max_terms:
        raise PreconditionError(
            f"torus has {spec.vertex_count} eigenvalues, above cap {max_terms}"
        )
    if all(l == 0.0 for l in spec.holonomies):
        raise PreconditionError(
            "trivial bundle has a zero eigenvalue; the spectral zeta sum is refused"
        )
    evs = torus_eigenvalues(spec)
    if evs[0] <= 0.0:
        raise PreconditionError("nonpositive eigenvalue encountered")
    return complex(np.exp(-complex(s) * np.log(evs)).sum())


def torus_zeta_deriv0(spec: TorusBundleSpec, max_terms: int = DEFAULT_EIGENSUM_CAP) -> float:
    """Derivative at 0: minus the log determinant of the bundle Laplacian."""
    if spec.vertex_count > max_terms:
        raise PreconditionError(
            f"torus has {spec.vertex_count} eigenvalues, above cap {max_terms}"
        )
    if all(l == 0.0 for l in spec.holonomies):
        raise PreconditionError("trivial bundle has a zero eigenvalue")
    evs = torus_eigenvalues(spec)
    if evs[0] <= 0.0:
        raise PreconditionError("nonpositive eigenvalue encountered")
    return -float(np.log(evs).sum())
