"""Cycle-rooted spanning forests and the determinant identity.

A CRSF is an edge subset spanning all vertices in which every connected
component carries exactly one cycle, so the subset has exactly as many
edges as the graph has vertices.  For a line bundle the weighted count

    sum over CRSFs of  prod over cycles of (2 - w - 1/w)

equals det of the bundle Laplacian (w the cycle monodromy; orientation
reversal swaps w and 1/w, leaving each factor unchanged).

Enumeration is deliberately brute force: all edge subsets of size
#vertices, filtered by a union-find that rejects a second cycle inside a
component.  The structural part (subsets plus oriented cycle walks) only
depends on the endpoints, so it is cached and reused across weight
assignments; the sum itself is then a vectorized pass over monodromy
phases.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .bundle_graph import LineBundleGraph
from .errors import PreconditionError

DEFAULT_EDGE_CAP = 24


@dataclass(frozen=True)
class Cycle:
    """Oriented cycle walk: (edge index, +1/-1) steps and its monodromy."""

    edge_steps: tuple[tuple[int, int], ...]
    vertices: tuple[int, ...]
    monodromy: complex


@dataclass(frozen=True)
class CRSF:
    edges: tuple[int, ...]
    cycles: tuple[Cycle, ...]


def _is_crsf_subset(n_vertices: int, endpoints, subset) -> bool:
    parent = list(range(n_vertices))
    has_cycle = [False] * n_vertices

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx in subset:
        a, b = endpoints[idx]
        ra, rb = find(a), find(b)
        if ra == rb:
            if has_cycle[ra]:
                return False
            has_cycle[ra] = True
        else:
            if has_cycle[ra] and has_cycle[rb]:
                return False
            parent[ra] = rb
            has_cycle[rb] = has_cycle[ra] or has_cycle[rb]
    # |subset| == n_vertices forces every component to own exactly one cycle
    return True


def _strip_to_cycle_edges(endpoints, subset):
    deg = defaultdict(int)
    incident = defaultdict(list)
    for idx in subset:
        a, b = endpoints[idx]
        incident[a].append(idx)
        deg[a] += 1
        if b == a:
            deg[a] += 1
        else:
            incident[b].append(idx)
            deg[b] += 1
    removed = set()
    leaves = [v for v, k in deg.items() if k == 1]
    while leaves:
        v = leaves.pop()
        if deg[v] != 1:
            continue
        edge = next(e for e in incident[v] if e not in removed)
        removed.add(edge)
        a, b = endpoints[edge]
        other = b if v == a else a
        deg[v] -= 1
        deg[other] -= 1
        if deg[other] == 1:
            leaves.append(other)
    return [idx for idx in subset if idx not in removed]


def _oriented_cycle_walks(endpoints, cycle_edges):
    incident = defaultdict(list)
    for idx in cycle_edges:
        a, b = endpoints[idx]
        incident[a].append(idx)
        if b != a:
            incident[b].append(idx)

    def across(edge, v):
        a, b = endpoints[edge]
        return b if v == a else a

    unused = set(cycle_edges)
    walks = []
    while unused:
        start = min(v for v, es in incident.items() if any(e in unused for e in es))
        # orientation: lowest vertex first, toward its lowest neighbor
        # (ties between parallel edges broken by edge index)
        first = min(
            (e for e in incident[start] if e in unused),
            key=lambda e: (across(e, start), e),
        )
        steps = []
        vertices = [start]
        v, edge = start, first
        while True:
            a, b = endpoints[edge]
            sign = 1 if v == a else -1
            steps.append((edge, sign))
            unused.discard(edge)
            v = b if v == a else a
            if v == start:
                break
            vertices.append(v)
            edge = next(e for e in incident[v] if e in unused)
        walks.append((tuple(steps), tuple(vertices)))
    walks.sort(key=lambda w: w[1][0])
    return walks


@lru_cache(maxsize=64)
def _crsf_structures(n_vertices: int, endpoints: tuple[tuple[int, int], ...]):
    """All CRSF edge subsets with their oriented cycle walks (weights unused)."""
    n_edges = len(endpoints)
    structures = []
    for subset in itertools.combinations(range(n_edges), n_vertices):
        if not _is_crsf_subset(n_vertices, endpoints, subset):
            continue
        cycle_edges = _strip_to_cycle_edges(endpoints, subset)
        walks = _oriented_cycle_walks(endpoints, cycle_edges)
        structures.append((subset, walks))
    return tuple(structures)


def _check_cap(graph: LineBundleGraph, edge_cap: int):
    if len(graph.edges) > edge_cap:
        raise PreconditionError(
            f"graph has {len(graph.edges)} edges, above the enumeration cap "
            f"{edge_cap}; refusing brute-force CRSF enumeration"
        )


def enumerate_crsfs(graph: LineBundleGraph, edge_cap: int = DEFAULT_EDGE_CAP) -> Iterator[CRSF]:
    """Yield every unoriented CRSF exactly once, in deterministic order."""
    _check_cap(graph, edge_cap)
    weights = [w for _, _, w in graph.edges]
    for subset, walks in _crsf_structures(graph.vertex_count, graph.edge_endpoints):
        cycles = []
        for steps, vertices in walks:
            mono = 1.0 + 0.0j
            for edge, sign in steps:
                mono = mono * weights[edge] if sign > 0 else mono / weights[edge]
            cycles.append(Cycle(steps, vertices, mono))
        yield CRSF(tuple(subset), tuple(cycles))


def crsf_weight(forest: CRSF) -> float:
    """prod over cycles of (2 - w - 1/w); nonnegative for unit monodromies."""
    acc = 1.0 + 0.0j
    for cyc in forest.cycles:
        w = cyc.monodromy
        acc *= 2.0 - w - 1.0 / w
    if abs(acc.imag) > 1e-10 * (1.0 + abs(acc.real)):
        raise PreconditionError(
            f"CRSF weight has residual imaginary part {acc.imag:g}; "
            "monodromies are not unit modulus"
        )
    return acc.real


def kenyon_sum(graph: LineBundleGraph, edge_cap: int = DEFAULT_EDGE_CAP) -> float:
    """Weighted CRSF count; equals det of the bundle Laplacian.

    Unit-modulus monodromies make every cycle factor 2 - 2 cos(phase), so
    the sum reduces to phase arithmetic over the cached cycle structures.
    """
    _check_cap(graph, edge_cap)
    structures = _crsf_structures(graph.vertex_count, graph.edge_endpoints)
    if not structures:
        return 0.0
    phases = np.array([math.atan2(w.imag, w.real) for _, _, w in graph.edges])

    step_edges = []
    step_signs = []
    cycle_starts = []
    crsf_starts = []
    n_cycles = 0
    for _, walks in structures:
        crsf_starts.append(n_cycles)
        for steps, _ in walks:
            cycle_starts.append(len(step_edges))
            for edge, sign in steps:
                step_edges.append(edge)
                step_signs.append(sign)
            n_cycles += 1
    step_edges = np.array(step_edges)
    step_signs = np.array(step_signs, dtype=float)

    cycle_phase = np.add.reduceat(step_signs * phases[step_edges], np.array(cycle_starts))
    cycle_factor = 2.0 - 2.0 * np.cos(cycle_phase)
    per_forest = np.multiply.reduceat(cycle_factor, np.array(crsf_starts))
    return float(per_forest.sum())
