"""Disjoint disconnected pairs in graphs whose cliques are small.

A graph on 2k vertices with no complete subgraph on k + 1 vertices always has
``(k + 1) // 2`` vertex-disjoint pairs of non-adjacent vertices. They are
found by a sweep over a sliding working set of k + 1 vertices. In the
symplectic algorithm, vertices are basis vectors and adjacency means
F-orthogonality.

Vertices are 1-based in every public function and in the JSON format.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CliqueViolationError, DomainError, FormError, RankError, ScaleError
from .linalg import bilinear, from_columns, is_alternating, rank

ORACLE_MAX_VERTICES = 12


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph without loops; ``adj[i]`` is the neighbour bitmask of vertex i+1."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise DomainError("adjacency has the wrong length")
        for i, m in enumerate(self.adj):
            if (m >> i) & 1:
                raise DomainError("loops are not allowed")
            if m >> self.n:
                raise DomainError("neighbour outside the vertex set")
            for j in range(self.n):
                if ((m >> j) & 1) != ((self.adj[j] >> i) & 1):
                    raise DomainError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges) -> "SimpleGraph":
        adj = [0] * n
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise DomainError(f"bad edge ({i}, {j})")
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return cls(n, tuple(adj))

    def connected(self, i: int, j: int) -> bool:
        """Adjacency of the 1-based vertices i and j."""
        return bool((self.adj[i - 1] >> (j - 1)) & 1)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i in range(self.n) for j in range(i + 1, self.n) if (self.adj[i] >> j) & 1]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "SimpleGraph":
        return cls.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])


@dataclass(frozen=True)
class PairSet:
    pairs: tuple[tuple[int, int], ...]

    def is_valid_for(self, G: SimpleGraph) -> bool:
        used: set[int] = set()
        for i, j in self.pairs:
            if i == j or i in used or j in used or G.connected(i, j):
                return False
            used |= {i, j}
        return True

    def to_json(self) -> list:
        return [list(p) for p in self.pairs]


def orthogonality_graph(F, vectors) -> SimpleGraph:
    """Vertices are the vectors; i ~ j exactly when ``F(z_i, z_j) == 0``."""
    if not is_alternating(F):
        raise FormError("F is not alternating")
    vectors = [tuple(v) for v in vectors]
    if rank(from_columns(vectors)) != len(vectors):
        raise RankError("vectors are linearly dependent")
    n = len(vectors)
    edges = [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if not bilinear(F, vectors[i], vectors[j])]
    return SimpleGraph.from_edges(n, edges)


def disjoint_disconnected_pairs(G: SimpleGraph, k: int) -> PairSet:
    """``(k+1)//2`` disjoint non-adjacent pairs via the sliding working-set sweep.

    Working sets start at {1..k+1}; after each pick the chosen pair leaves and
    the next two unused vertices join. Inside a set the lexicographically
    least non-adjacent pair is taken.
    """
    if k < 1 or G.n != 2 * k:
        raise DomainError(f"graph must have 2k vertices with k >= 1 (n={G.n}, k={k})")
    M = (k + 1) // 2
    S = list(range(1, k + 2))
    pairs = []
    for n in range(1, M + 1):
        if n > 1:
            S = sorted(set(S) - set(pairs[-1]) | {k + 2 * n - 2, k + 2 * n - 1})
        pick = next(((i, j) for a, i in enumerate(S) for j in S[a + 1:] if not G.connected(i, j)), None)
        if pick is None:
            raise CliqueViolationError(f"working set {S} is a clique on {len(S)} vertices", clique=S)
        pairs.append(pick)
    return PairSet(tuple(pairs))


def sharpness_graph(k: int) -> SimpleGraph:
    """The first k-1 vertices see everyone; the last k+1 are independent."""
    if k < 1:
        raise DomainError("k must be positive")
    n = 2 * k
    edges = [(i, j) for i in range(1, k) for j in range(1, n + 1) if i < j]
    return SimpleGraph.from_edges(n, edges)


def _adj_array(G: SimpleGraph) -> np.ndarray:
    return np.array(G.adj, dtype=np.int64)


def oracle_max_disjoint_pairs(G: SimpleGraph) -> int:
    """Maximum matching of the complement graph, by exhaustive subset DP."""
    if G.n > ORACLE_MAX_VERTICES:
        raise ScaleError(f"oracle limited to {ORACLE_MAX_VERTICES} vertices")
    if G.n == 0:
        return 0
    return _kernels.max_nonedge_matching(_adj_array(G), G.n)


def clique_number(G: SimpleGraph) -> int:
    if G.n > 20:
        raise ScaleError("brute-force clique number limited to 20 vertices")
    if G.n == 0:
        return 0
    return _kernels.clique_number(_adj_array(G), G.n)


def random_graph(rng: np.random.Generator, n: int, density: float) -> SimpleGraph:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < density]
    return SimpleGraph.from_edges(n, edges)
