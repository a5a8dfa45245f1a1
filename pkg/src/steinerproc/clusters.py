"""Link graph construction, cluster census and switching-class labels.

Two edges are linked when they intersect in exactly ell vertices.  The link
graph has the edges of the hypergraph as its vertices; a cluster is a
non-trivial connected component of it.  ``classify_splus`` sorts a general
graph into the class with exactly t clusters, or reports which of the three
defining properties fails first:

  (a) every pairwise edge intersection has at most ell vertices;
  (b) every cluster is exactly two edges sharing exactly ell vertices, every
      other edge meets a cluster's (2r-ell)-vertex span in at most ell-1
      vertices, and two cluster spans share at most one vertex;
  (c) there are at most M clusters.

The span condition in (b) is what makes forward and reverse switchings exact
inverses between adjacent classes at t = 1: it is precisely the condition a
reverse switching imposes on its target set.  Without it, three edges could
cram into 3(r-1) - ell + 2 vertices and the class sizes would not obey the
switching ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import Params
from .hypergraph import Edge, GeneralGraph

VIOLATES_A = "violates-a"
VIOLATES_B = "violates-b"
VIOLATES_C = "violates-c"
IN_CLASS = "in-class"


def linked(e: Edge, f: Edge, ell: int) -> bool:
    """True iff |e ∩ f| is exactly ell."""
    if e == f:
        raise ValueError("linked is defined for distinct edges")
    return len(set(e) & set(f)) == ell


def build_link_graph(g: GeneralGraph) -> list[set[int]]:
    """Adjacency sets over edge ids; ids i, j adjacent iff the edges are linked."""
    m = len(g.edges)
    adj: list[set[int]] = [set() for _ in range(m)]
    sets = [set(e) for e in g.edges]
    ell = g.params.ell
    for i in range(m):
        for j in range(i + 1, m):
            if len(sets[i] & sets[j]) == ell:
                adj[i].add(j)
                adj[j].add(i)
    return adj


@dataclass(frozen=True)
class ClusterCensus:
    t: int
    clusters: tuple[tuple[int, ...], ...]  # each sorted edge-id tuple
    link_pairs: tuple[tuple[int, int], ...]


def _components(m: int, adj: list[set[int]]) -> list[tuple[int, ...]]:
    seen = [False] * m
    comps = []
    for start in range(m):
        if seen[start] or not adj[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(tuple(sorted(comp)))
    comps.sort()
    return comps


def cluster_census(g: GeneralGraph) -> ClusterCensus:
    """Non-trivial link-graph components (size >= 2); singletons are not clusters."""
    adj = build_link_graph(g)
    pairs = tuple((i, j) for i in range(len(adj)) for j in adj[i] if i < j)
    comps = _components(len(g.edges), adj)
    return ClusterCensus(t=len(comps), clusters=tuple(comps), link_pairs=pairs)


def capacity_M(params: Params, m: int) -> int:
    """Cluster-count cap: ceil(log n + 3^(ell+2) r^(2 ell) m^2 / (ell! n^ell))."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    n, r, ell = params.n, params.r, params.ell
    term = Fraction(3 ** (ell + 2) * r ** (2 * ell) * m * m,
                    math.factorial(ell) * n ** ell)
    return math.ceil(math.log(n) + term)


@dataclass(frozen=True)
class ClassLabel:
    """Outcome of classify_splus: the class index t, or the first violation.

    ``witness`` carries up to four edge ids sufficient to re-verify any
    (a)/(b) breach by inspection; for (c) it is empty and ``t`` holds the
    offending cluster count.
    """

    kind: str
    t: int = 0
    witness: tuple[int, ...] = ()

    @property
    def in_class(self) -> bool:
        return self.kind == IN_CLASS


def classify_splus(g: GeneralGraph, M: int) -> ClassLabel:
    """Classify g against properties (a)-(c); first violated property wins."""
    masks = [_mask(e) for e in g.edges]
    m = len(masks)
    ell = g.params.ell

    link_adj: list[list[int]] = [[] for _ in range(m)]
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            inter = (mi & masks[j]).bit_count()
            if inter > ell:
                return ClassLabel(VIOLATES_A, witness=(i, j))
            if inter == ell:
                link_adj[i].append(j)
                link_adj[j].append(i)

    comps = _components(m, [set(a) for a in link_adj])
    for comp in comps:
        if len(comp) != 2:
            return ClassLabel(VIOLATES_B, witness=comp[:4])
    spans = [masks[c[0]] | masks[c[1]] for c in comps]
    for comp, span in zip(comps, spans):
        members = set(comp)
        for j in range(m):
            if j not in members and (span & masks[j]).bit_count() >= ell:
                return ClassLabel(VIOLATES_B, witness=comp + (j,))
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            if (spans[a] & spans[b]).bit_count() > 1:
                return ClassLabel(VIOLATES_B, witness=comps[a] + comps[b])

    t = len(comps)
    if t > M:
        return ClassLabel(VIOLATES_C, t=t)
    return ClassLabel(IN_CLASS, t=t)


def _mask(e: Edge) -> int:
    mask = 0
    for v in e:
        mask |= 1 << v
    return mask
