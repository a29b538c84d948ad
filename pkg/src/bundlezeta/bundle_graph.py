"""Line-bundle graphs, discrete tori, and the bundle Laplacian.

A line bundle assigns a unit-modulus complex weight to every oriented
edge, with the inverse weight on the reversed orientation; only one
orientation is ever stored.  The bundle Laplacian acts as

    (L f)(v) = sum over edge-ends at v of ( f(v) - w_{u -> v} f(u) ),

so a self-loop with weight w contributes 2 to the degree and subtracts
w + conj(w) on the diagonal.  That convention is exactly the one under
which the closed-form torus spectrum

    { sum_i 4 sin^2(pi (j_i + holonomy_i) / a_i) }

remains valid for side lengths 1 and 2 (self-loops / doubled edges of the
Cayley construction).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .special_functions import sin_pi

UNIT_MODULUS_TOL = 1e-12
MAX_DENSE_DIMENSION = 20000


def _coerce_unit(value) -> complex:
    w = value.value if isinstance(value, UnitWeight) else complex(value)
    if abs(abs(w) - 1.0) > UNIT_MODULUS_TOL:
        raise PreconditionError(
            f"edge weight {w!r} is not unit modulus (| |w|-1 | = {abs(abs(w)-1.0):.3g})"
        )
    return w


@dataclass(frozen=True)
class UnitWeight:
    """A complex number constrained to the unit circle (tolerance 1e-12)."""

    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", _coerce_unit(self.value))

    @staticmethod
    def from_turns(turns: float) -> "UnitWeight":
        return UnitWeight(cmath.exp(2j * math.pi * turns))


@dataclass(frozen=True)
class LineBundleGraph:
    """Connected multigraph with one stored orientation per unoriented edge."""

    vertex_count: int
    edges: tuple[tuple[int, int, complex], ...]

    def __init__(self, vertex_count: int, edges: Sequence[tuple[int, int, object]]):
        if vertex_count < 1:
            raise PreconditionError("graph needs at least one vertex")
        clean = []
        for tail, head, weight in edges:
            if not (0 <= tail < vertex_count and 0 <= head < vertex_count):
                raise PreconditionError(f"edge ({tail}, {head}) out of vertex range")
            clean.append((int(tail), int(head), _coerce_unit(weight)))
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "edges", tuple(clean))
        if not self._connected():
            raise PreconditionError("graph must be connected")

    def _connected(self) -> bool:
        adj = [[] for _ in range(self.vertex_count)]
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = [False] * self.vertex_count
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.vertex_count

    @property
    def edge_endpoints(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, b) for a, b, _ in self.edges)

    def reversed_orientations(self) -> "LineBundleGraph":
        """Same unoriented bundle with every stored orientation flipped."""
        return LineBundleGraph(
            self.vertex_count,
            [(b, a, 1.0 / w) for a, b, w in self.edges],
        )

    def gauge_transformed(self, phases: Sequence[complex]) -> "LineBundleGraph":
        """Conjugate the bundle by the unitary diagonal diag(phases)."""
        if len(phases) != self.vertex_count:
            raise PreconditionError("need one unit phase per vertex")
        u = [_coerce_unit(p) for p in phases]
        return LineBundleGraph(
            self.vertex_count,
            [(a, b, u[b] * w * u[a].conjugate()) for a, b, w in self.edges],
        )


@dataclass(frozen=True)
class TorusBundleSpec:
    """Discrete torus Cayley graph of prod Z/a_i Z with per-edge unit weights.

    ``weights[i][j]`` sits on the oriented edge j -> j+1 of the i-th cyclic
    factor; ``len(weights[i]) == a[i]``.
    """

    d: int
    a: tuple[int, ...]
    weights: tuple[tuple[complex, ...], ...]

    def __init__(self, d: int, a: Sequence[int], weights: Sequence[Sequence[object]]):
        if d < 1:
            raise PreconditionError("dimension must be >= 1")
        a = tuple(int(x) for x in a)
        if len(a) != d or any(x < 1 for x in a):
            raise PreconditionError("need d positive side lengths")
        if len(weights) != d:
            raise PreconditionError("need one weight list per direction")
        rows = []
        for i, row in enumerate(weights):
            if len(row) != a[i]:
                raise PreconditionError(
                    f"direction {i}: expected {a[i]} weights, got {len(row)}"
                )
            rows.append(tuple(_coerce_unit(w) for w in row))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "weights", tuple(rows))

    @staticmethod
    def single_twist(d: int, a: Sequence[int], lam: Sequence[float]) -> "TorusBundleSpec":
        """All edges trivial except one per direction carrying e^{2 pi i lam_i}."""
        if len(lam) != d:
            raise PreconditionError("need one holonomy per direction")
        weights = []
        for ai, li in zip(a, lam):
            row = [1.0 + 0.0j] * (ai - 1) + [cmath.exp(2j * math.pi * li)]
            weights.append(row)
        return TorusBundleSpec(d, a, weights)

    @cached_property
    def holonomies(self) -> tuple[float, ...]:
        return tuple(_holonomy_of_row(row) for row in self.weights)

    @property
    def vertex_count(self) -> int:
        return math.prod(self.a)


def _holonomy_of_row(row: Sequence[complex]) -> float:
    turns = sum(cmath.phase(w) for w in row) / (2.0 * math.pi)
    lam = turns - math.floor(turns)
    if lam >= 1.0:  # ties at a full turn map to 0
        lam = 0.0
    return lam


def holonomies(spec: TorusBundleSpec) -> tuple[float, ...]:
    """Per-direction holonomy in [0, 1): arg(prod of weights) / 2 pi."""
    return spec.holonomies


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense complex Hermitian matrix (validated on construction)."""

    entries: np.ndarray = field(repr=False)

    def __init__(self, entries: np.ndarray):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise PreconditionError("operator must be a square matrix")
        scale = 1.0 + (np.abs(m).max() if m.size else 0.0)
        if np.abs(m - m.conj().T).max() > 1e-12 * scale:
            raise PreconditionError("matrix is not Hermitian within tolerance")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Sorted real spectrum from the dense Hermitian eigensolver."""
        return np.linalg.eigvalsh(self.entries)

    def det(self) -> complex:
        """Determinant via LU with partial pivoting (LAPACK)."""
        return complex(np.linalg.det(self.entries))

    def slogdet(self) -> tuple[complex, float]:
        sign, logabs = np.linalg.slogdet(self.entries)
        return complex(sign), float(logabs)


def build_torus(spec: TorusBundleSpec, max_vertices: int = MAX_DENSE_DIMENSION) -> LineBundleGraph:
    """Cayley graph of prod Z/a_i Z with the bundle weights attached.

    Vertices are indexed row-major over (x_1, ..., x_d).  Every vertex has
    degree 2d counting multiplicity: side length 2 produces doubled edges,
    side length 1 a self-loop.
    """
    n = spec.vertex_count
    if n > max_vertices:
        raise PreconditionError(
            f"torus has {n} vertices, above the dense-graph cap {max_vertices}"
        )
    strides = [0] * spec.d
    acc = 1
    for i in reversed(range(spec.d)):
        strides[i] = acc
        acc *= spec.a[i]

    def vertex_index(coords):
        return sum(c * s for c, s in zip(coords, strides))

    edges = []
    coords = [0] * spec.d
    for v in range(n):
        # decode row-major index
        rem = v
        for i in range(spec.d):
            coords[i] = rem // strides[i]
            rem %= strides[i]
        for i in range(spec.d):
            ai = spec.a[i]
            xi = coords[i]
            step = coords.copy()
            step[i] = (xi + 1) % ai
            # every vertex emits its +e_i edge: a_i = 2 doubles the pair,
            # a_i = 1 degenerates to a self-loop, keeping degree 2d throughout
            edges.append((v, vertex_index(step), spec.weights[i][xi]))
    return LineBundleGraph(n, edges)


def laplacian(graph: LineBundleGraph, max_dimension: int = MAX_DENSE_DIMENSION) -> HermitianOperator:
    """Assemble the dense bundle Laplacian of a unit-weight graph."""
    n = graph.vertex_count
    if n > max_dimension:
        raise PreconditionError(
            f"matrix dimension {n} above the configured cap {max_dimension}"
        )
    m = np.zeros((n, n), dtype=complex)
    for tail, head, w in graph.edges:
        if tail == head:
            m[tail, tail] += 2.0 - (w + 1.0 / w)
            continue
        m[tail, tail] += 1.0
        m[head, head] += 1.0
        m[head, tail] -= w
        m[tail, head] -= 1.0 / w
    return HermitianOperator(m)


def torus_eigenvalues(spec: TorusBundleSpec) -> np.ndarray:
    """All prod(a_i) closed-form eigenvalues, sorted ascending."""
    lam = spec.holonomies
    total = np.zeros(1)
    for ai, li in zip(spec.a, lam):
        js = np.arange(ai, dtype=float)
        factor = np.array([4.0 * sin_pi((j + li) / ai) ** 2 for j in js])
        total = (total[:, None] + factor[None, :]).ravel()
    total.sort()
    return total


# ---------------------------------------------------------------------------
# Spec-file parsing (strict: unknown fields rejected)
# ---------------------------------------------------------------------------


def _parse_weight(obj) -> complex:
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return complex(float(obj["re"]), float(obj["im"]))
        if set(obj) == {"angle"}:
            return cmath.exp(2j * math.pi * float(obj["angle"]))
        raise PreconditionError(
            f"weight object must have fields {{re, im}} or {{angle}}, got {sorted(obj)}"
        )
    if isinstance(obj, (int, float)):
        return complex(obj)
    raise PreconditionError(f"cannot parse weight from {obj!r}")


def parse_torus_spec(data: dict) -> TorusBundleSpec:
    allowed = {"dimension", "sides", "weights"}
    unknown = set(data) - allowed
    if unknown:
        raise PreconditionError(f"unknown torus-spec fields: {sorted(unknown)}")
    for key in allowed:
        if key not in data:
            raise PreconditionError(f"torus spec missing field {key!r}")
    d = int(data["dimension"])
    sides = [int(x) for x in data["sides"]]
    weights = [[_parse_weight(w) for w in row] for row in data["weights"]]
    return TorusBundleSpec(d, sides, weights)


def parse_graph_spec(data: dict) -> LineBundleGraph:
    allowed = {"vertices", "edges"}
    unknown = set(data) - allowed
    if unknown:
        raise PreconditionError(f"unknown graph-spec fields: {sorted(unknown)}")
    for key in allowed:
        if key not in data:
            raise PreconditionError(f"graph spec missing field {key!r}")
    edges = []
    for e in data["edges"]:
        extra = set(e) - {"tail", "head", "weight"}
        if extra:
            raise PreconditionError(f"unknown edge fields: {sorted(extra)}")
        edges.append((int(e["tail"]), int(e["head"]), _parse_weight(e["weight"])))
    return LineBundleGraph(int(data["vertices"]), edges)


def load_spec_file(path) -> TorusBundleSpec | LineBundleGraph:
    """Load either spec flavor from a JSON document, keyed by its fields."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise PreconditionError("spec file must hold a JSON object")
    if "dimension" in data:
        return parse_torus_spec(data)
    if "vertices" in data:
        return parse_graph_spec(data)
    raise PreconditionError("spec file has neither 'dimension' nor 'vertices'")
