"""Cluster switchings and edge displacement/replacement, with exact counters.

A forward switching removes a two-edge cluster and sequentially inserts two
collision-free edges; a reverse switching deletes two link-free edges,
chooses a (2r-ell)-set T avoiding every remaining edge in fewer than ell
vertices, and plants a fresh cluster inside T.  Each counter returns the
exact count together with the predicted leading term it is expected to track.

Reinsertion of just-removed edges is permitted wherever the collision test
allows it; the counters count operations, not the classes of their results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .clusters import capacity_M, classify_splus, cluster_census
from .combinatorics import Params
from .exact import InfeasibleError, all_rsets
from .hypergraph import Edge, GeneralGraph

MAX_ENUM = 1_000_000      # direct enumeration over all N r-sets
MAX_CENSUS = 20_000_000   # candidate tuples in a union census


@dataclass(frozen=True)
class SwitchingMove:
    kind: str  # "forward" | "reverse" | "displacement" | "replacement"
    removed: tuple[Edge, ...]
    inserted: tuple[Edge, ...]


def _cover(edges, ell: int) -> set[Edge]:
    cov: set[Edge] = set()
    for e in edges:
        cov.update(combinations(e, ell))
    return cov


def _passes(e: Edge, cover: set[Edge], ell: int) -> bool:
    """True iff no ell vertices of e lie together inside a covered edge."""
    return not any(s in cover for s in combinations(e, ell))


def count_Pr(g: GeneralGraph, e_i: Edge) -> tuple[int, int]:
    """Exact and predicted number of r-sets distinct from e_i that avoid
    every edge of g in fewer than ell vertices.

    Predicted: N - C(r,ell) m C(n-ell, r-ell).  Exact mode enumerates all N
    r-sets when feasible, otherwise runs an exact union census over the
    forbidden r-sets near edges.
    """
    params = g.params
    n, r, ell = params.n, params.r, params.ell
    e_i = tuple(e_i)
    N = params.N
    m = len(g.edges)
    predicted = N - math.comb(r, ell) * m * math.comb(n - ell, r - ell)

    if N <= MAX_ENUM:
        cover = _cover(g.edges, ell)
        exact = sum(1 for f in combinations(range(1, n + 1), r)
                    if f != e_i and _passes(f, cover, ell))
        return exact, predicted

    candidates = m * math.comb(r, ell) * math.comb(n - ell, r - ell)
    if candidates > MAX_CENSUS:
        raise InfeasibleError(
            f"{N} r-sets and {candidates} census candidates both exceed budget")
    bad: set[Edge] = set()
    vertices = range(1, n + 1)
    for e in g.edges:
        for sigma in combinations(e, ell):
            sset = set(sigma)
            others = [v for v in vertices if v not in sset]
            for completion in combinations(others, r - ell):
                bad.add(tuple(sorted(sigma + completion)))
    exact = N - len(bad) - (0 if e_i in bad else 1)
    return exact, predicted


def count_forward_switchings(g: GeneralGraph, M: int | None = None) -> tuple[int, int]:
    """Exact and predicted (t N^2) number of forward switchings from g.

    g must classify into some cluster class; the count sums, over clusters,
    the ordered pairs of sequentially valid insertions.
    """
    params = g.params
    n, r, ell = params.n, params.r, params.ell
    if M is None:
        M = capacity_M(params, len(g.edges))
    label = classify_splus(g, M)
    if not label.in_class:
        raise ValueError(f"graph is not in any cluster class: {label.kind}")
    t = label.t
    N = params.N
    predicted = t * N * N
    if t == 0:
        return 0, 0
    if N > MAX_ENUM:
        raise InfeasibleError(f"{N} r-sets exceed the enumeration budget")

    census = cluster_census(g)
    universe = all_rsets(params)
    exact = 0
    for cluster in census.clusters:
        removed = set(cluster)
        rest = [e for i, e in enumerate(g.edges) if i not in removed]
        cover = _cover(rest, ell)
        valid = [f for f in universe if _passes(f, cover, ell)]
        by_sub: dict[Edge, list[int]] = {}
        for pos, f in enumerate(valid):
            for s in combinations(f, ell):
                by_sub.setdefault(s, []).append(pos)
        V = len(valid)
        for f1 in valid:
            sharing: set[int] = set()
            for s in combinations(f1, ell):
                sharing.update(by_sub.get(s, ()))
            exact += V - len(sharing)
    return exact, predicted


def count_reverse_switchings(g: GeneralGraph, M: int | None = None) -> tuple[int, int]:
    """Exact and predicted number of reverse switchings from g.

    Predicted: (2r-ell)!/(ell! (r-ell)!^2) C(m-2t, 2) C(n, 2r-ell) for g with
    t clusters.  The exact count enumerates ordered deletions of two link-free
    edges, valid (2r-ell)-sets T given the survivors, and the cluster
    placements inside each T.
    """
    params = g.params
    n, r, ell = params.n, params.r, params.ell
    m = len(g.edges)
    if M is None:
        M = capacity_M(params, m)
    label = classify_splus(g, M)
    if not label.in_class:
        raise ValueError(f"graph is not in any cluster class: {label.kind}")

    size_T = 2 * r - ell
    placements = math.comb(size_T, ell) * math.comb(2 * r - 2 * ell, r - ell) // 2
    predicted = (math.factorial(size_T)
                 // (math.factorial(ell) * math.factorial(r - ell) ** 2)) \
        * math.comb(max(m - 2 * label.t, 0), 2) * math.comb(n, size_T)

    clustered = {i for cluster in cluster_census(g).clusters for i in cluster}
    free_ids = [i for i in range(m) if i not in clustered]
    if len(free_ids) < 2:
        return 0, predicted

    candidates = m * math.comb(r, ell) * math.comb(n - ell, size_T - ell)
    if candidates > MAX_CENSUS:
        raise InfeasibleError(f"{candidates} census candidates exceed budget")

    # cov[T] = ids of edges meeting T in >= ell vertices; T absent means none
    cov: dict[Edge, set[int]] = {}
    vertices = range(1, n + 1)
    for eid, e in enumerate(g.edges):
        for sigma in combinations(e, ell):
            sset = set(sigma)
            others = [v for v in vertices if v not in sset]
            for completion in combinations(others, size_T - ell):
                cov.setdefault(tuple(sorted(sigma + completion)), set()).add(eid)

    only: dict[int, int] = {}
    pair_only: dict[frozenset, int] = {}
    for covering in cov.values():
        if len(covering) == 1:
            (eid,) = covering
            only[eid] = only.get(eid, 0) + 1
        elif len(covering) == 2:
            key = frozenset(covering)
            pair_only[key] = pair_only.get(key, 0) + 1

    total_T = math.comb(n, size_T)
    invalid_all = len(cov)
    exact = 0
    for a in range(len(free_ids)):
        for b in range(a + 1, len(free_ids)):
            d1, d2 = free_ids[a], free_ids[b]
            valid_T = total_T - invalid_all + only.get(d1, 0) + only.get(d2, 0) \
                + pair_only.get(frozenset((d1, d2)), 0)
            exact += 2 * valid_T * placements
    return exact, predicted


def _collides(e: Edge, edges, ell: int) -> Edge | None:
    """First edge sharing at least ell vertices with e, if any."""
    es = set(e)
    for other in edges:
        if len(es & set(other)) >= ell:
            return other
    return None


def apply_switching(g: GeneralGraph, move: SwitchingMove) -> GeneralGraph:
    """Apply a validated switching move; raises on any violated precondition."""
    params = g.params
    ell = params.ell
    edge_set = set(g.edges)
    removed = tuple(tuple(e) for e in move.removed)
    inserted = tuple(tuple(e) for e in move.inserted)
    for e in removed:
        if e not in edge_set:
            raise ValueError(f"removed edge {e} is not in the graph")
    if len(set(removed)) != len(removed):
        raise ValueError("removed edges must be distinct")
    rest = [e for e in g.edges if e not in set(removed)]

    if move.kind == "forward":
        e, f = _expect(move, removed=2, inserted=2)
        if len(set(e) & set(f)) != ell:
            raise ValueError("removed pair does not share exactly ell vertices")
        for other in rest:
            if len(set(other) & set(e)) == ell or len(set(other) & set(f)) == ell:
                raise ValueError("removed pair is not a whole cluster")
        f1, f2 = inserted
        hit = _collides(f1, rest, ell)
        if hit is not None:
            raise ValueError(f"first insertion {f1} collides with {hit}")
        hit = _collides(f2, rest + [f1], ell)
        if hit is not None:
            raise ValueError(f"second insertion {f2} collides with {hit}")
    elif move.kind == "reverse":
        d1, d2 = _expect(move, removed=2, inserted=2)
        for d in (d1, d2):
            hit = _collides(d, [e for e in g.edges if e != d], ell)
            if hit is not None:
                raise ValueError(f"deleted edge {d} contains a link with {hit}")
        g1, g2 = inserted
        if len(set(g1) & set(g2)) != ell:
            raise ValueError("inserted pair does not form a cluster")
        T = tuple(sorted(set(g1) | set(g2)))
        for other in rest:
            if len(set(T) & set(other)) >= ell:
                raise ValueError(f"target set {T} meets remaining edge {other}")
    elif move.kind == "displacement":
        (e_i,) = _expect(move, removed=1, inserted=1)
        (f,) = inserted
        if f == e_i:
            raise ValueError("displacement target equals the displaced edge")
        hit = _collides(f, rest, ell)
        if hit is not None:
            raise ValueError(f"displacement target {f} collides with {hit}")
    elif move.kind == "replacement":
        (d,) = _expect(move, removed=1, inserted=1)
        (e_i,) = inserted
        if e_i in edge_set:
            raise ValueError("replacement edge is already present")
        hit = _collides(e_i, rest, ell)
        if hit is not None:
            raise ValueError(f"replacement edge {e_i} collides with {hit}")
    else:
        raise ValueError(f"unknown switching kind {move.kind!r}")

    return GeneralGraph(params, rest + list(inserted))


def _expect(move: SwitchingMove, removed: int, inserted: int) -> tuple[Edge, ...]:
    if len(move.removed) != removed or len(move.inserted) != inserted:
        raise ValueError(
            f"{move.kind} move needs {removed} removals and {inserted} insertions")
    return tuple(tuple(e) for e in move.removed)


def count_ei_displacements(g: GeneralGraph, e_i: Edge) -> tuple[int, int]:
    """Exact and predicted displacement count for a designated edge of g."""
    params = g.params
    e_i = tuple(e_i)
    if e_i not in set(g.edges):
        raise ValueError(f"{e_i} is not an edge of the graph")
    reduced = GeneralGraph(params, [e for e in g.edges if e != e_i])
    exact, _ = count_Pr(reduced, e_i)
    predicted = params.N - math.comb(params.r, params.ell) * len(g.edges) \
        * math.comb(params.n - params.ell, params.r - params.ell)
    return exact, predicted


def count_legal_ei_replacements(g: GeneralGraph, e_i: Edge,
                                protected: list[Edge]) -> int:
    """Number of unprotected edges whose removal lets e_i enter collision-free."""
    params = g.params
    ell = params.ell
    e_i = tuple(e_i)
    edge_set = set(g.edges)
    if e_i in edge_set:
        raise ValueError("e_i is already an edge of the graph")
    protected_set = {tuple(e) for e in protected}
    if not protected_set <= edge_set:
        raise ValueError("protected edges must all be edges of the graph")

    es = set(e_i)
    colliding = [e for e in g.edges if len(es & set(e)) >= ell]
    if len(colliding) == 0:
        return len(g.edges) - len(protected_set)
    if len(colliding) == 1:
        return 0 if colliding[0] in protected_set else 1
    return 0
