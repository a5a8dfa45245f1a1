"""Brute-force ground-truth oracles on tiny instances.

Everything here is written to be obviously correct rather than fast: counts
come from depth-first search over lexicographically increasing compatible
edges, probabilities are exact big-integer rationals, and uniform samples are
produced by plain rejection.  Explicit budgets make the oracles refuse rather
than silently degrade.

:class:`RSetUniverse` is the one performance-minded piece: it materializes
the N r-sets once and vectorizes uniform m-subset drawing plus the
ell-collision test, which is what the desk-scale Monte Carlo validations run
on.  It draws from the same distribution as the scalar sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .combinatorics import Params
from .formulas import count_exponent
from .hypergraph import Edge, PartialSystem, ell_subsets, is_partial_steiner

MAX_RSETS = 10_000
MAX_NODES = 1_000_000_000
MAX_UNIVERSE = 1_000_000


class InfeasibleError(Exception):
    """Raised when an instance exceeds an oracle's documented budget."""


def all_rsets(params: Params) -> list[Edge]:
    """The N r-subsets of [1..n] in lexicographic order."""
    return list(combinations(range(1, params.n + 1), params.r))


def _check_budget(params: Params, m: int) -> None:
    N = params.N
    if N > MAX_RSETS:
        raise InfeasibleError(f"C(n,r) = {N} exceeds the oracle cap {MAX_RSETS}")
    # sum of C(N, i) bounds the DFS node count from above
    nodes = sum(math.comb(N, i) for i in range(m + 1))
    if nodes > MAX_NODES:
        raise InfeasibleError(f"estimated {nodes} search nodes exceed {MAX_NODES}")


def count_systems(params: Params, m: int, edges: Sequence[Edge] | None = None) -> int:
    """Exact number of m-edge systems in which every ell-set is covered at most once.

    DFS over compatible edges in increasing position within ``edges`` (any
    fixed order counts each unordered system exactly once; the default is
    lexicographic).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    _check_budget(params, m)
    if edges is None:
        edges = all_rsets(params)
    subs = [ell_subsets(e, params.ell) for e in edges]
    N = len(edges)
    used: set[Edge] = set()

    def extend(start: int, left: int) -> int:
        if left == 0:
            return 1
        total = 0
        for idx in range(start, N - left + 1):
            ss = subs[idx]
            if any(s in used for s in ss):
                continue
            used.update(ss)
            total += extend(idx + 1, left - 1)
            used.difference_update(ss)
        return total

    return extend(0, m)


def list_systems(params: Params, m: int) -> list[tuple[Edge, ...]]:
    """All m-edge systems, each as a lexicographically sorted edge tuple."""
    _check_budget(params, m)
    edges = all_rsets(params)
    subs = [ell_subsets(e, params.ell) for e in edges]
    N = len(edges)
    used: set[Edge] = set()
    chosen: list[Edge] = []
    out: list[tuple[Edge, ...]] = []

    def extend(start: int, left: int) -> None:
        if left == 0:
            out.append(tuple(chosen))
            return
        for idx in range(start, N - left + 1):
            ss = subs[idx]
            if any(s in used for s in ss):
                continue
            used.update(ss)
            chosen.append(edges[idx])
            extend(idx + 1, left - 1)
            chosen.pop()
            used.difference_update(ss)

    extend(0, m)
    return out


def count_ordered_sequences(params: Params, m: int) -> int:
    """Number of ordered sequences of m distinct compatible edges.

    Independent route for the m! consistency check: no lexicographic
    restriction, every permutation of a valid system is counted.
    """
    _check_budget(params, m)
    edges = all_rsets(params)
    subs = [ell_subsets(e, params.ell) for e in edges]
    N = len(edges)
    used: set[Edge] = set()
    taken = [False] * N

    def extend(left: int) -> int:
        if left == 0:
            return 1
        total = 0
        for idx in range(N):
            if taken[idx]:
                continue
            ss = subs[idx]
            if any(s in used for s in ss):
                continue
            taken[idx] = True
            used.update(ss)
            total += extend(left - 1)
            used.difference_update(ss)
            taken[idx] = False
        return total

    return extend(m)


class RSetUniverse:
    """Materialized r-set ground space with vectorized m-subset machinery."""

    def __init__(self, params: Params):
        if params.N > MAX_UNIVERSE:
            raise InfeasibleError(
                f"C(n,r) = {params.N} r-sets exceed the universe cap {MAX_UNIVERSE}")
        self.params = params
        self.rsets = all_rsets(params)
        self.index = {e: i for i, e in enumerate(self.rsets)}
        key_of: dict[Edge, int] = {}
        rows = []
        for e in self.rsets:
            row = []
            for s in combinations(e, params.ell):
                if s not in key_of:
                    key_of[s] = len(key_of)
                row.append(key_of[s])
            rows.append(row)
        self.subkeys = np.asarray(rows, dtype=np.int64)

    @property
    def N(self) -> int:
        return len(self.rsets)

    def msubset_batch(self, rng: np.random.Generator, m: int, batch: int) -> np.ndarray:
        """Uniform m-subsets of r-set indices, one sorted row each.

        Rows are drawn i.i.d. and rows with a repeated index are discarded,
        so every returned row is uniform over the C(N, m) subsets; the batch
        may come back shorter than requested.
        """
        mat = rng.integers(0, self.N, size=(batch, m))
        mat.sort(axis=1)
        ok = (mat[:, 1:] != mat[:, :-1]).all(axis=1)
        return mat[ok]

    def steiner_mask(self, rows: np.ndarray) -> np.ndarray:
        """Per row: True iff the edge set has no repeated ell-subset."""
        if rows.size == 0:
            return np.zeros(0, dtype=bool)
        keys = self.subkeys[rows].reshape(rows.shape[0], -1)
        keys.sort(axis=1)
        return (keys[:, 1:] != keys[:, :-1]).all(axis=1)

    def edges_of(self, row: Iterable[int]) -> list[Edge]:
        return [self.rsets[i] for i in row]


def predicted_acceptance(params: Params, m: int) -> float:
    """Estimated probability that a uniform m-subset of r-sets is a valid system."""
    return math.exp(count_exponent(params, m))


def sample_uniform_system(params: Params, m: int, rng: np.random.Generator,
                          min_acceptance: float = 1e-6) -> tuple[PartialSystem, int]:
    """One uniform sample from the m-edge systems, by rejection.

    Draws a uniform m-subset of r-sets (sequential distinct draws, resampling
    on collision) and accepts iff it is a valid system.  Returns the system
    and the number of m-subsets tried.  Refuses when the predicted acceptance
    probability is below ``min_acceptance``.
    """
    acc = predicted_acceptance(params, m)
    if acc < min_acceptance:
        raise InfeasibleError(
            f"predicted acceptance {acc:.3g} below floor {min_acceptance:.3g}")
    universe = RSetUniverse(params)
    N = universe.N
    attempts = 0
    while True:
        attempts += 1
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(int(rng.integers(0, N)))
        edges = universe.edges_of(sorted(chosen))
        if is_partial_steiner_edges(edges, params.ell):
            return PartialSystem.from_edges(params, edges), attempts


def is_partial_steiner_edges(edges: Iterable[Edge], ell: int) -> bool:
    seen: set[Edge] = set()
    for e in edges:
        for s in combinations(e, ell):
            if s in seen:
                return False
            seen.add(s)
    return True


def exact_containment_prob(params: Params, m: int, K: Sequence[Edge]) -> Fraction:
    """P[K is contained in a uniform m-edge system], as an exact rational."""
    K = [tuple(e) for e in K]
    if len(set(K)) != len(K):
        raise ValueError("K has repeated edges")
    if not is_partial_steiner_edges(K, params.ell):
        raise ValueError("K is not itself a valid system")
    if len(K) > m:
        return Fraction(0)
    denom = count_systems(params, m)

    edges = [e for e in all_rsets(params) if e not in set(K)]
    subs = [ell_subsets(e, params.ell) for e in edges]
    N = len(edges)
    used: set[Edge] = set()
    for e in K:
        used.update(ell_subsets(e, params.ell))

    def extend(start: int, left: int) -> int:
        if left == 0:
            return 1
        total = 0
        for idx in range(start, N - left + 1):
            ss = subs[idx]
            if any(s in used for s in ss):
                continue
            used.update(ss)
            total += extend(idx + 1, left - 1)
            used.difference_update(ss)
        return total

    numer = extend(0, m - len(K))
    return Fraction(numer, denom)


def exact_deg_zero_prob(params: Params, m: int, h: int) -> Fraction:
    """P[h fixed vertices all have degree zero] in a uniform m-edge system."""
    if h < 0 or h > params.n:
        raise ValueError(f"need 0 <= h <= n, got h={h}")
    if h == 0 or m == 0:
        return Fraction(1)
    if params.n - h < params.r:
        return Fraction(0)
    sub = Params(params.n - h, params.r, params.ell)
    return Fraction(count_systems(sub, m), count_systems(params, m))


@dataclass(frozen=True)
class ComponentCensus:
    """Connected components as (vertex count, edge count, excess) triples."""

    components: tuple[tuple[int, int, int], ...]
    isolated: tuple[int, ...]


def component_census(sys) -> ComponentCensus:
    """Components of the vertex-edge incidence structure; isolated vertices apart."""
    params: Params = sys.params
    r = params.r
    vertex_edges: dict[int, list[int]] = {}
    for eid, e in enumerate(sys.edges):
        for v in e:
            vertex_edges.setdefault(v, []).append(eid)

    seen_v: set[int] = set()
    comps = []
    for start in sorted(vertex_edges):
        if start in seen_v:
            continue
        stack = [start]
        seen_v.add(start)
        verts, eids = [], set()
        while stack:
            v = stack.pop()
            verts.append(v)
            for eid in vertex_edges[v]:
                if eid in eids:
                    continue
                eids.add(eid)
                for u in sys.edges[eid]:
                    if u not in seen_v:
                        seen_v.add(u)
                        stack.append(u)
        k, h = len(verts), len(eids)
        comps.append((k, h, (r - 1) * h - k))

    isolated = tuple(v for v in range(1, params.n + 1) if v not in vertex_edges)
    return ComponentCensus(components=tuple(comps), isolated=isolated)
