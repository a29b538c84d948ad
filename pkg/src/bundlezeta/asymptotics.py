"""Limit-theorem harness: exact log-determinant decomposition, residuals of
the determinant and spectral-zeta asymptotics, rescaled-theta convergence,
and the root-splitting product formula for torus determinants.

``log_f`` is the determinant functional used by the product formula: the
determinant of the bundle Laplacian of a torus carrying one twisted edge
per direction, falling back to the product of nonzero eigenvalues when
every twist is trivial.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .bundle_graph import TorusBundleSpec, build_torus, laplacian, torus_eigenvalues
from .errors import PreconditionError
from .heat_theta import ContinuousTorusSpec, theta_continuous, theta_discrete, theta_discrete_minus_leading
from .quadrature import QuadratureSpec, TailRule, integrate_interval, integrate_semi_infinite
from .zeta import (
    _scaled_i0_power,
    epstein_hurwitz_deriv0,
    epstein_hurwitz_zeta,
    lattice_constant_eval,
    lattice_zeta,
    torus_zeta,
)

DENSE_CROSSCHECK_DIM = 2000


@dataclass(frozen=True)
class TorusFamily:
    """Sequence of torus bundles with a declared continuum limit.

    ``side_rule(n)`` gives the side lengths; the default weight rule puts
    the whole holonomy of each direction on a single edge, so the
    holonomies stay constant along the family.
    """

    d: int
    side_rule: Callable[[int], tuple[int, ...]]
    limit: ContinuousTorusSpec
    weight_rule: Callable[[int], Sequence[Sequence[complex]]] | None = None

    def spec(self, n: int) -> TorusBundleSpec:
        sides = tuple(int(x) for x in self.side_rule(n))
        if len(sides) != self.d:
            raise PreconditionError("side_rule returned wrong dimension")
        if self.weight_rule is None:
            return TorusBundleSpec.single_twist(self.d, sides, self.limit.lam)
        return TorusBundleSpec(self.d, sides, self.weight_rule(n))

    @staticmethod
    def from_multipliers(multipliers: Sequence[float], lam: Sequence[float]) -> "TorusFamily":
        """Family a_i(n) = round(m_i n), converging to alpha = multipliers."""
        mult = tuple(float(m) for m in multipliers)
        return TorusFamily(
            d=len(mult),
            side_rule=lambda n: tuple(int(round(m * n)) for m in mult),
            limit=ContinuousTorusSpec(mult, lam),
        )


@dataclass(frozen=True)
class ResidualSeries:
    ns: tuple[int, ...]
    residuals: tuple[float, ...]
    slope: float | None

    @staticmethod
    def fit(ns: Sequence[int], residuals: Sequence[float]) -> "ResidualSeries":
        ns = tuple(int(n) for n in ns)
        res = tuple(float(r) for r in residuals)
        if len(ns) != len(res):
            raise PreconditionError("ns and residuals must align")
        slope = None
        if len(ns) >= 2 and all(abs(r) > 1e-300 for r in res):
            slope = float(
                np.polyfit(np.log(np.array(ns, dtype=float)), np.log(np.abs(res)), 1)[0]
            )
        return ResidualSeries(ns, res, slope)


# ---------------------------------------------------------------------------
# log-determinants
# ---------------------------------------------------------------------------


def log_det(spec: TorusBundleSpec) -> float:
    """Sum of log eigenvalues from the closed-form spectrum (all > 0)."""
    if all(l == 0.0 for l in spec.holonomies):
        raise PreconditionError("trivial bundle: zero eigenvalue, use log_det_star")
    evs = torus_eigenvalues(spec)
    if evs[0] <= 0.0:
        raise PreconditionError("nonpositive eigenvalue encountered")
    return float(np.log(evs).sum())


def log_det_lu(spec: TorusBundleSpec, max_dimension: int = DENSE_CROSSCHECK_DIM) -> float:
    """Independent LU route through the dense assembled Laplacian."""
    if spec.vertex_count > max_dimension:
        raise PreconditionError(
            f"dense LU cross-check capped at dimension {max_dimension}"
        )
    sign, logabs = laplacian(build_torus(spec)).slogdet()
    if abs(sign - 1.0) > 1e-6:
        raise PreconditionError(f"determinant is not positive real (sign {sign})")
    return logabs


def log_det_star(spec: TorusBundleSpec) -> float:
    """log of the product of nonzero eigenvalues of the trivial bundle."""
    if any(l != 0.0 for l in spec.holonomies):
        raise PreconditionError("log_det_star is only defined for the trivial bundle")
    evs = torus_eigenvalues(spec)
    threshold = 1e-12 * max(float(evs[-1]), 1.0)
    small = int(np.count_nonzero(evs <= threshold))
    if small != 1:
        raise PreconditionError(
            f"expected exactly one zero mode on a connected torus, found {small}"
        )
    return float(np.log(evs[1:]).sum())


def log_f(sides: Sequence[int], z: Sequence[complex]) -> float:
    """Determinant functional of the one-twisted-edge-per-direction torus.

    Dispatches to the nonzero-eigenvalue product when every twist is
    trivial (its spectrum then contains the single zero mode).
    """
    lam = []
    for w in z:
        w = complex(w)
        if abs(abs(w) - 1.0) > 1e-12:
            raise PreconditionError(f"twist {w!r} is not unit modulus")
        turns = cmath.phase(w) / (2.0 * math.pi)
        lam.append(turns - math.floor(turns))
    spec = TorusBundleSpec.single_twist(len(sides), tuple(sides), tuple(lam))
    if all(l == 0.0 for l in spec.holonomies):
        return log_det_star(spec)
    return log_det(spec)


# ---------------------------------------------------------------------------
# exact decomposition of log det
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16)
def _cached_lattice_constant(d: int) -> tuple[float, float]:
    return lattice_constant_eval(d)


def logdet_correction(spec: TorusBundleSpec) -> float:
    """log det minus (number of vertices) times the lattice constant."""
    c_d, _ = _cached_lattice_constant(spec.d)
    return log_det(spec) - spec.vertex_count * c_d


def logdet_correction_integral(spec: TorusBundleSpec, quad: QuadratureSpec | None = None) -> float:
    """The same correction from its defining heat-trace integral

        - int_0^inf (theta(t) - N (e^{-2t} I_0(2t))^d) dt/t,   N = prod a_i.

    Exactness of the decomposition means this must agree with the
    algebraic route to quadrature accuracy.
    """
    if all(l == 0.0 for l in spec.holonomies):
        raise PreconditionError("trivial bundle: decomposition needs a positive spectrum")
    quad = quad or QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9, max_subdivisions=8000)
    d = spec.d
    n_vertices = spec.vertex_count
    evs_min = float(torus_eigenvalues(spec)[0])

    head = integrate_interval(
        lambda t: theta_discrete_minus_leading(spec, t) / t, 0.0, 1.0, quad
    )
    theta_tail = integrate_semi_infinite(
        lambda t: theta_discrete(spec, t) / t, 1.0, quad, tail=TailRule("exp", evs_min)
    )
    lead_tail = integrate_semi_infinite(
        lambda t: _scaled_i0_power(d, t) / t,
        1.0,
        quad,
        tail=TailRule("power", 0.5 * d + 1.0),
    )
    return -(head.value + theta_tail.value - n_vertices * lead_tail.value)


# ---------------------------------------------------------------------------
# residual series for the limit theorems
# ---------------------------------------------------------------------------


def logdet_limit_residuals(family: TorusFamily, ns: Sequence[int]) -> ResidualSeries:
    """r(n) = log det - N(n) c_d + zeta_EH'(0) for the family's limit."""
    if not family.limit.has_nontrivial_holonomy:
        raise PreconditionError("family limit violates the nontrivial-holonomy hypothesis")
    c_d, _ = _cached_lattice_constant(family.d)
    deriv0 = epstein_hurwitz_deriv0(family.limit).value
    residuals = []
    for n in ns:
        spec = family.spec(n)
        residuals.append(log_det(spec) - spec.vertex_count * c_d + deriv0)
    return ResidualSeries.fit(ns, residuals)


def zeta_limit_residuals(family: TorusFamily, s: float, ns: Sequence[int]) -> ResidualSeries:
    """Normalized spectral-zeta residuals

        r(n) = (zeta_torus(s) - N(n) zeta_lattice(s) - zeta_EH(s) n^{2s}) / n^{2s}.
    """
    d = family.d
    if not (0.0 < s < 0.5 * d):
        raise PreconditionError(
            f"implemented residual window is 0 < s < d/2; got s = {s} for d = {d}"
        )
    lattice = lattice_zeta(s, d).value
    continuum = epstein_hurwitz_zeta(s, family.limit, method="integral_split").value
    residuals = []
    for n in ns:
        spec = family.spec(n)
        value = torus_zeta(s, spec).real
        scale = float(n) ** (2.0 * s)
        residuals.append((value - spec.vertex_count * lattice - continuum * scale) / scale)
    return ResidualSeries.fit(ns, residuals)


def rescaled_theta_gap(family: TorusFamily, n: int, t: float) -> float:
    """|theta_discrete(n^2 t) - theta_continuous(t)| along the family."""
    if not t > 0:
        raise PreconditionError("need t > 0")
    spec = family.spec(n)
    return abs(theta_discrete(spec, float(n) ** 2 * t) - theta_continuous(family.limit, t))


# ---------------------------------------------------------------------------
# product formula
# ---------------------------------------------------------------------------


def product_formula_check(
    m: Sequence[int],
    n: int,
    z: Sequence[complex],
    max_eigenvalues: int = 4_000_000,
) -> tuple[float, float]:
    """log of both sides of the root-splitting determinant identity

        F_{(m_1 n, ..., m_d n)}(z) = prod over all root tuples u_i^{m_i} = z_i
                                     of F_{(n, ..., n)}(u_1, ..., u_d).

    Returns (log lhs, log rhs); the identity is exact, so the two must
    agree to float accumulation error.
    """
    m = tuple(int(x) for x in m)
    if any(x < 1 for x in m) or n < 1:
        raise PreconditionError("m entries and n must be positive integers")
    z = tuple(complex(w) for w in z)
    if len(z) != len(m):
        raise PreconditionError("need one twist per direction")
    if math.prod(mi * n for mi in m) > max_eigenvalues:
        raise PreconditionError("product torus above the eigenvalue cap")

    lhs = log_f(tuple(mi * n for mi in m), z)

    lam = []
    for w in z:
        turns = cmath.phase(w) / (2.0 * math.pi)
        lam.append(turns - math.floor(turns))
    rhs = 0.0
    for ks in np.ndindex(*m):
        roots = [
            cmath.exp(2j * math.pi * (k + li) / mi) for k, li, mi in zip(ks, lam, m)
        ]
        rhs += log_f((n,) * len(m), roots)
    return lhs, rhs
