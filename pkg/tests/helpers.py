"""Independent oracles used to freeze expected values.

Everything here is deliberately naive (series summed term by term, brute
force enumeration) so that it shares no code path with the library
implementations it checks.
"""

from __future__ import annotations

import itertools
import math


def catalan_constant() -> float:
    """Catalan's constant from a fast central-binomial series (1e-15)."""
    acc = 0.0
    for n in range(40):
        acc += math.factorial(n) ** 2 / (math.factorial(2 * n) * (2 * n + 1) ** 2)
    return 3.0 * acc / 8.0 + math.pi / 8.0 * math.log(2.0 + math.sqrt(3.0))


def bessel_i_series(order: int, x: float, terms: int = 120) -> float:
    """Plain power-series I_order(x) for small x; no scaling tricks."""
    n = abs(order)
    total = 0.0
    for j in range(terms):
        term = (x / 2.0) ** (2 * j + n) / float(math.factorial(j) * math.factorial(j + n))
        total += term
        if j > 3 and term < 1e-25 * total:
            break
    return total


def spanning_edge_subsets(n_vertices: int, endpoints: list[tuple[int, int]]):
    """All edge subsets of size n_vertices that are spanning with exactly
    one cycle per connected component (independent subset-filter oracle)."""
    n_edges = len(endpoints)
    for subset in itertools.combinations(range(n_edges), n_vertices):
        adj: dict[int, list[int]] = {v: [] for v in range(n_vertices)}
        for idx in subset:
            a, b = endpoints[idx]
            adj[a].append(idx)
            if a != b:
                adj[b].append(idx)
        seen = [False] * n_vertices
        ok = True
        for root in range(n_vertices):
            if seen[root]:
                continue
            comp_vertices = set()
            comp_edges = set()
            stack = [root]
            seen[root] = True
            while stack:
                v = stack.pop()
                comp_vertices.add(v)
                for idx in adj[v]:
                    comp_edges.add(idx)
                    a, b = endpoints[idx]
                    w = b if v == a else a
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            # unicyclic component: #edges == #vertices
            if len(comp_edges) != len(comp_vertices):
                ok = False
                break
        if ok:
            yield subset
