"""The constrained edge-arrival process and its hitting times.

Edges arrive in uniform random order over all N = C(n, r) r-sets; an arrival
is accepted iff none of its ell-subsets is already covered.  Time is measured
in accepted edges: stage m is the system after the m-th acceptance.

The uniform permutation is realized lazily: the engine draws i.i.d. uniform
r-sets and skips any r-set it has already examined.  The subsequence of first
occurrences of distinct r-sets is distributed exactly as a uniform random
permutation prefix of the full ground set, so no permutation of the (possibly
astronomically many) r-sets is ever materialized.  Draws are batched through
numpy for speed: each batch row is r i.i.d. labels, rows with a repeated
label are discarded (their conditional law given distinctness is uniform over
r-sets), and surviving rows are sorted.  The trace therefore depends only on
(params, seed, trial), never on batch size.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import Params, trial_rng
from .hypergraph import Edge, PartialSystem


class UnionFind:
    """Disjoint sets over vertices 1..n with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.component_count = n

    def find(self, v: int) -> int:
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.component_count -= 1
        return True


def union_edge(uf: UnionFind, e: Edge) -> None:
    """Merge all vertices of an edge into one component."""
    first = e[0]
    for v in e[1:]:
        uf.union(first, v)


@dataclass(frozen=True)
class AtConnectivity:
    """Stop as soon as the system is connected (or the ground set saturates)."""


@dataclass(frozen=True)
class AtEdgeCount:
    """Stop once m edges have been accepted."""

    m: int


@dataclass(frozen=True)
class AtSaturation:
    """Run until every r-set has been examined (feasible only for tiny N)."""


StopRule = AtConnectivity | AtEdgeCount | AtSaturation


@dataclass
class ProcessTrace:
    params: Params
    seed: int
    trial: int
    accepted: list[Edge] = field(default_factory=list)
    tau_o: int | None = None
    tau_c: int | None = None
    draws_total: int = 0
    rejections: int = 0
    duplicates_skipped: int = 0
    saturated: bool = False


def run_process(params: Params, seed: int, stop: StopRule,
                trial: int = 0, batch: int = 4096) -> ProcessTrace:
    """Run one realization of the process; deterministic in (params, seed, trial)."""
    N = params.N
    if isinstance(stop, AtEdgeCount):
        if stop.m < 0:
            raise ValueError("edge-count stop must be nonnegative")
        if stop.m > N:
            raise ValueError(f"cannot request {stop.m} edges from {N} r-sets")
    rng = trial_rng(seed, trial)
    n, r = params.n, params.r

    sys = PartialSystem(params)
    uf = UnionFind(n)
    seen: set[Edge] = set()
    trace = ProcessTrace(params=params, seed=seed, trial=trial)
    accepted = trace.accepted
    try_add = sys.try_add
    want_edges = stop.m if isinstance(stop, AtEdgeCount) else None

    done = want_edges == 0
    while not done:
        mat = rng.integers(1, n + 1, size=(batch, r))
        mat.sort(axis=1)
        ok = (mat[:, 1:] != mat[:, :-1]).all(axis=1)
        for row in mat[ok].tolist():
            e = tuple(row)
            trace.draws_total += 1
            if e in seen:
                trace.duplicates_skipped += 1
            else:
                seen.add(e)
                conflict = try_add(e)
                if conflict is not None:
                    trace.rejections += 1
                else:
                    accepted.append(e)
                    m = len(accepted)
                    union_edge(uf, e)
                    if trace.tau_o is None and sys.zero_degree_count == 0:
                        trace.tau_o = m
                    if trace.tau_c is None and uf.component_count == 1:
                        trace.tau_c = m
                    if want_edges is not None and m >= want_edges:
                        done = True
                        break
                    if isinstance(stop, AtConnectivity) and trace.tau_c is not None:
                        done = True
                        break
            if len(seen) >= N:
                trace.saturated = True
                done = True
                break

    if trace.tau_o is not None and trace.tau_c is not None and n > r:
        assert trace.tau_o <= trace.tau_c
    return trace


def stage_snapshot(trace: ProcessTrace, m: int) -> PartialSystem:
    """The partial system after the first m accepted edges of the trace."""
    if m > len(trace.accepted):
        raise ValueError(f"trace has only {len(trace.accepted)} accepted edges")
    return PartialSystem.from_edges(trace.params, trace.accepted[:m])


def trace_record(trace: ProcessTrace, include_edges: bool = False) -> dict:
    """JSONL-ready record for one trial; key order is fixed."""
    rec = {
        "seed": trace.seed,
        "trial": trace.trial,
        "n": trace.params.n,
        "r": trace.params.r,
        "ell": trace.params.ell,
        "tau_o": trace.tau_o,
        "tau_c": trace.tau_c,
        "m_final": len(trace.accepted),
        "draws_total": trace.draws_total,
        "rejections": trace.rejections,
        "duplicates_skipped": trace.duplicates_skipped,
        "saturated": trace.saturated,
    }
    if include_edges:
        rec["edges"] = [list(e) for e in trace.accepted]
    return rec
