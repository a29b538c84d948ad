"""Adaptive Gauss-Kronrod quadrature with semi-infinite tail substitutions.

Finite segments use the classical 7/15-point Gauss-Kronrod pair with
bisection driven by a worst-panel heap.  The unbounded tail [T, inf) is
folded onto (0, 1] with a substitution chosen from the tail class the
caller declares:

* exponential decay ``f ~ e^{-c t}``:  t = T - log(v)/c,
* power decay       ``f ~ t^{-p}``  :  t = T * v^{-1/(p-1)}  (p > 1).

An integrable power behavior ``f ~ (t - lower)^beta`` (beta > -1) at the
lower endpoint can be declared as well; the first unit segment is then
rectified by ``t = lower + u^{1/(1+beta)}``, which removes the singularity
exactly.  Non-convergence always raises; a value is never silently
returned with an unmet tolerance.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import PreconditionError, QuadratureError

# 15-point Kronrod nodes on [-1, 1] (nonnegative half; symmetric).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
# Kronrod weights matching _XGK.
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# 7-point Gauss weights (even-index Kronrod nodes are the Gauss nodes).
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy / effort budget for the adaptive integrators."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 4000
    split_points: tuple[float, ...] = ()

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise PreconditionError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise PreconditionError("max_subdivisions must be >= 1")
        object.__setattr__(self, "split_points", tuple(self.split_points))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class TailRule:
    """Declared behavior of the integrand as t -> infinity."""

    kind: str  # "exp" or "power"
    rate: float  # c in e^{-c t}, or the exponent p in t^{-p} (p > 1)

    def __post_init__(self):
        if self.kind not in ("exp", "power"):
            raise PreconditionError(f"unknown tail kind {self.kind!r}")
        if self.kind == "exp" and not self.rate > 0:
            raise PreconditionError("exponential tail needs a positive rate")
        if self.kind == "power" and not self.rate > 1:
            raise PreconditionError("power tail needs exponent > 1")


def _kronrod_panel(f, a: float, b: float):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fv = [0.0] * 15
    resk = 0.0
    resg = 0.0
    for i, x in enumerate(_XGK):
        if i == 7:
            fc = f(center)
            fv[7] = fc
            resk += _WGK[7] * fc
            resg += _WG[3] * fc
            continue
        f1 = f(center - half * x)
        f2 = f(center + half * x)
        fv[i] = f1
        fv[14 - i] = f2
        resk += _WGK[i] * (f1 + f2)
        if i % 2 == 1:
            resg += _WG[i // 2] * (f1 + f2)
    reskh = 0.5 * resk
    resasc = _WGK[7] * abs(fv[7] - reskh)
    for i in range(7):
        resasc += _WGK[i] * (abs(fv[i] - reskh) + abs(fv[14 - i] - reskh))
    resasc *= abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    return resk * half, err


def integrate_interval(f, a: float, b: float, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """Adaptive integral of f over the finite interval [a, b]."""
    spec = spec or QuadratureSpec()
    if not (math.isfinite(a) and math.isfinite(b)):
        raise PreconditionError("integrate_interval needs finite endpoints")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    edges = [a]
    for p in sorted(spec.split_points):
        if a < p < b:
            edges.append(p)
    edges.append(b)

    heap = []
    total = 0.0
    total_err = 0.0
    evals = 0
    for left, right in zip(edges, edges[1:]):
        val, err = _kronrod_panel(f, left, right)
        evals += 15
        total += val
        total_err += err
        heapq.heappush(heap, (-err, left, right, val))

    splits = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if splits >= spec.max_subdivisions:
            raise QuadratureError(
                f"quadrature did not converge after {splits} subdivisions: "
                f"value {total:.17g}, error estimate {total_err:.3g}",
                value=total,
                error_estimate=total_err,
            )
        neg_err, left, right, val = heapq.heappop(heap)
        mid = 0.5 * (left + right)
        if mid <= left or mid >= right:
            # Panel width at rounding limit: cannot be refined further.
            raise QuadratureError(
                f"panel [{left:.17g}, {right:.17g}] reached rounding limit with "
                f"total error estimate {total_err:.3g} above tolerance",
                value=total,
                error_estimate=total_err,
            )
        v1, e1 = _kronrod_panel(f, left, mid)
        v2, e2 = _kronrod_panel(f, mid, right)
        evals += 30
        total += v1 + v2 - val
        total_err += e1 + e2 - (-neg_err)
        heapq.heappush(heap, (-e1, left, mid, v1))
        heapq.heappush(heap, (-e2, mid, right, v2))
        splits += 1

    return QuadratureResult(total, total_err, evals)


def _tail_cut(lower: float, tail: TailRule) -> float:
    if tail.kind == "exp":
        return lower + max(2.0, 30.0 / tail.rate)
    return max(20.0, 2.0 * (lower + 1.0))


def integrate_semi_infinite(
    f,
    lower: float,
    spec: QuadratureSpec | None = None,
    tail: TailRule | None = None,
    singular_exponent: float | None = None,
) -> QuadratureResult:
    """Integral of f over [lower, infinity).

    ``tail`` declares the decay class at infinity (defaults to exponential
    with rate 1).  ``singular_exponent`` beta declares integrable power
    behavior (t-lower)^beta, beta in (-1, 0), at the lower endpoint.
    """
    spec = spec or QuadratureSpec()
    tail = tail or TailRule("exp", 1.0)
    if lower < 0 or not math.isfinite(lower):
        raise PreconditionError("lower limit must be finite and >= 0")
    if singular_exponent is not None and not (-1.0 < singular_exponent < 1.0):
        raise PreconditionError("singular_exponent must lie in (-1, 1)")

    cut = _tail_cut(lower, tail)
    sub_spec = QuadratureSpec(
        abs_tol=spec.abs_tol / 3.0,
        rel_tol=spec.rel_tol / 2.0,
        max_subdivisions=spec.max_subdivisions,
        split_points=spec.split_points,
    )

    value = 0.0
    error = 0.0
    evals = 0
    start = lower

    if singular_exponent is not None and singular_exponent != 0.0:
        beta = singular_exponent
        seg_end = min(lower + 1.0, cut)
        gamma = 1.0 / (1.0 + beta)

        def rectified(u, _f=f, _lo=lower, _g=gamma):
            return _f(_lo + u**_g) * _g * u ** (_g - 1.0)

        res = integrate_interval(rectified, 0.0, (seg_end - lower) ** (1.0 + beta), sub_spec)
        value += res.value
        error += res.error_estimate
        evals += res.evaluations
        start = seg_end

    if start < cut:
        res = integrate_interval(f, start, cut, sub_spec)
        value += res.value
        error += res.error_estimate
        evals += res.evaluations

    if tail.kind == "exp":
        c = tail.rate

        def tail_integrand(v, _f=f, _T=cut, _c=c):
            return _f(_T - math.log(v) / _c) / (_c * v)

    else:
        p = tail.rate
        expo = 1.0 / (p - 1.0)

        def tail_integrand(v, _f=f, _T=cut, _e=expo):
            t = _T * v**-_e
            return _f(t) * _e * _T * v ** (-_e - 1.0)

    res = integrate_interval(tail_integrand, 0.0, 1.0, sub_spec)
    value += res.value
    error += res.error_estimate
    evals += res.evaluations

    if error > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError(
            f"semi-infinite quadrature error estimate {error:.3g} exceeds tolerance",
            value=value,
            error_estimate=error,
        )
    return QuadratureResult(value, error, evals)
