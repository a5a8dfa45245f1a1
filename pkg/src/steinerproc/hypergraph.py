"""r-uniform hypergraph state with ell-subset occupancy tracking.

Two graph types are kept deliberately distinct.  :class:`PartialSystem`
maintains the "every ell-set lies in at most one edge" invariant on every
mutation and is what the edge-arrival process evolves.  :class:`GeneralGraph`
allows ell-collisions (its edges only need to be pairwise distinct) and is
what the switching-class machinery operates on.

Edges are sorted tuples of 1-based vertex labels throughout.  The ell-index
key for an ell-subset is simply that sorted tuple, so tests can construct
keys directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, TextIO

from .combinatorics import Params

Edge = tuple[int, ...]


def ell_subsets(e: Edge, ell: int) -> list[Edge]:
    """All C(r, ell) ell-subsets of a sorted edge, in lexicographic order."""
    if ell > len(e):
        raise ValueError(f"ell={ell} exceeds edge size {len(e)}")
    return list(combinations(e, ell))


def check_edge(params: Params, e: Edge) -> Edge:
    """Validate that e is a strictly increasing r-tuple of labels in [1, n]."""
    e = tuple(e)
    if len(e) != params.r:
        raise ValueError(f"edge {e} does not have r={params.r} vertices")
    if any(b <= a for a, b in zip(e, e[1:])):
        raise ValueError(f"edge {e} is not strictly increasing")
    if e[0] < 1 or e[-1] > params.n:
        raise ValueError(f"edge {e} has labels outside [1, {params.n}]")
    return e


class PartialSystem:
    """Evolving edge set in which every ell-subset is covered at most once.

    Edge ids are positions in the ``edges`` list.  ``remove_edge`` swaps the
    last edge into the removed slot, so the surviving edges keep a compact id
    range; the displaced edge inherits the removed id.
    """

    def __init__(self, params: Params):
        self.params = params
        self.edges: list[Edge] = []
        self.ell_index: dict[Edge, int] = {}
        self.degree: list[int] = [0] * (params.n + 1)
        self.zero_degree_count: int = params.n
        self._edge_set: set[Edge] = set()

    @classmethod
    def from_edges(cls, params: Params, edges: Iterable[Edge]) -> "PartialSystem":
        sys = cls(params)
        for e in edges:
            conflict = sys.try_add(e)
            if conflict is not None:
                raise ValueError(f"edge {tuple(e)} collides on ell-set {conflict}")
        return sys

    @property
    def m(self) -> int:
        return len(self.edges)

    def __contains__(self, e: Edge) -> bool:
        return tuple(e) in self._edge_set

    def try_add(self, e: Edge) -> Edge | None:
        """Add e if no ell-subset of it is already covered.

        Returns None on success, else the lexicographically first conflicting
        ell-subset (state untouched).  Re-inserting a present edge is a usage
        error.
        """
        e = check_edge(self.params, e)
        if e in self._edge_set:
            raise ValueError(f"edge {e} is already present")
        subs = ell_subsets(e, self.params.ell)
        index = self.ell_index
        for s in subs:
            if s in index:
                return s
        edge_id = len(self.edges)
        for s in subs:
            index[s] = edge_id
        self.edges.append(e)
        self._edge_set.add(e)
        for v in e:
            if self.degree[v] == 0:
                self.zero_degree_count -= 1
            self.degree[v] += 1
        return None

    def remove_edge(self, edge_id: int) -> Edge:
        """Remove the edge with the given id; exact inverse of the insertion."""
        if not 0 <= edge_id < len(self.edges):
            raise KeyError(f"no edge with id {edge_id}")
        e = self.edges[edge_id]
        for s in ell_subsets(e, self.params.ell):
            del self.ell_index[s]
        self._edge_set.discard(e)
        last = self.edges.pop()
        if edge_id < len(self.edges):
            self.edges[edge_id] = last
            for s in ell_subsets(last, self.params.ell):
                self.ell_index[s] = edge_id
        for v in e:
            self.degree[v] -= 1
            if self.degree[v] == 0:
                self.zero_degree_count += 1
        return e

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(1, self.params.n + 1) if self.degree[v] == 0]

    def isolated_count(self) -> int:
        return self.zero_degree_count

    def as_general(self) -> "GeneralGraph":
        return GeneralGraph(self.params, list(self.edges))


@dataclass
class GeneralGraph:
    """r-graph whose edges are pairwise distinct; ell-collisions are allowed."""

    params: Params
    edges: list[Edge] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.edges = [check_edge(self.params, e) for e in self.edges]
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges are not allowed")

    @property
    def m(self) -> int:
        return len(self.edges)


def codegree(g, U: Iterable[int]) -> int:
    """Number of edges of g containing every vertex of U."""
    U = frozenset(U)
    if not U:
        raise ValueError("U must be nonempty")
    return sum(1 for e in g.edges if U.issubset(e))


def excess(g) -> int:
    """(r-1)m - n over the graph's full vertex universe."""
    return (g.params.r - 1) * len(g.edges) - g.params.n


def is_partial_steiner(g) -> bool:
    """True iff every ell-set lies in at most one edge of g."""
    seen: set[Edge] = set()
    ell = g.params.ell
    for e in g.edges:
        for s in combinations(e, ell):
            if s in seen:
                return False
            seen.add(s)
    return True


# --- edge-list text format (shared by all CLI subcommands) ---------------
#
#   header line: "n r ell m"
#   then one edge per line, space-separated ascending vertex labels


def write_edge_list(fh: TextIO, params: Params, edges: Iterable[Edge]) -> None:
    edges = list(edges)
    fh.write(f"{params.n} {params.r} {params.ell} {len(edges)}\n")
    for e in edges:
        fh.write(" ".join(str(v) for v in e) + "\n")


def read_edge_list(fh: TextIO) -> tuple[Params, list[Edge]]:
    header = fh.readline().split()
    if len(header) != 4:
        raise ValueError("edge-list header must be 'n r ell m'")
    n, r, ell, m = (int(x) for x in header)
    params = Params(n, r, ell)
    edges = []
    for _ in range(m):
        line = fh.readline().split()
        edges.append(check_edge(params, tuple(int(v) for v in line)))
    return params, edges


def load_partial_system(fh: TextIO) -> PartialSystem:
    params, edges = read_edge_list(fh)
    return PartialSystem.from_edges(params, edges)


def load_general_graph(fh: TextIO) -> GeneralGraph:
    params, edges = read_edge_list(fh)
    return GeneralGraph(params, edges)
