"""Generalized Johnson graphs J(n, k, i) and their integer spectra.

Vertices are the k-subsets of {1..n} in lexicographic order. A vertex is
referred to either by its sorted element tuple or by its 0-based rank in
that order. Two vertices are adjacent in J(n, k, i) when they share exactly
i elements.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .exactnum import binom

DEFAULT_VERTEX_BUDGET = 10_000


@dataclass(frozen=True)
class KSubset:
    elements: tuple[int, ...]
    n: int

    def __post_init__(self):
        els = self.elements
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError(f"elements must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise ValueError(f"elements must lie in [1, {self.n}]: {els}")

    @classmethod
    def of(cls, elements: Sequence[int], n: int) -> "KSubset":
        els = sorted(elements)
        if len(set(els)) != len(els):
            raise ValueError(f"repeated elements: {list(elements)}")
        return cls(tuple(els), n)

    @property
    def k(self) -> int:
        return len(self.elements)

    def complement(self) -> "KSubset":
        s = set(self.elements)
        return KSubset(tuple(x for x in range(1, self.n + 1) if x not in s), self.n)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class JohnsonParams:
    n: int
    k: int
    i: int

    def __post_init__(self):
        if not (self.k >= 1 and self.n >= 2 * self.k):
            raise ValueError(f"invalid parameters: need n >= 2k >= 2, got n={self.n}, k={self.k}")
        if not 0 <= self.i <= self.k:
            raise ValueError(f"invalid parameters: need 0 <= i <= k, got i={self.i}")


@dataclass(frozen=True)
class Graph:
    """Undirected graph on ranks 0..v-1 stored as sorted neighbour tuples."""

    v: int
    neighbors: tuple[tuple[int, ...], ...]

    def degree(self, u: int) -> int:
        return len(self.neighbors[u])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.neighbors):
            for w in nbrs:
                if u <= w:
                    yield u, w

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.v, self.v), dtype=dtype)
        for u, nbrs in enumerate(self.neighbors):
            a[u, list(nbrs)] = 1
        return a

    def to_edge_list(self) -> str:
        """One "u v" line per edge, 1-based ranks."""
        return "".join(f"{u + 1} {w + 1}\n" for u, w in self.edges())

    @classmethod
    def from_edge_list(cls, text: str, v: int) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(v)]
        for line in text.splitlines():
            if not line.strip():
                continue
            a, b = (int(x) - 1 for x in line.split())
            nbrs[a].add(b)
            nbrs[b].add(a)
        return cls(v, tuple(tuple(sorted(s)) for s in nbrs))


# ---------------------------------------------------------------------------
# Vertices


def enumerate_vertices(n: int, k: int) -> list[KSubset]:
    if not 1 <= k <= n:
        raise ValueError(f"invalid parameters: n={n}, k={k}")
    return [KSubset(c, n) for c in combinations(range(1, n + 1), k)]


def rank(s: KSubset) -> int:
    """Lexicographic rank of a k-subset.

    rank = C(n,k) - 1 - sum_t C(n - a_t, k - t + 1), which is the
    combinatorial number system applied to the reflected set.
    """
    n, k = s.n, s.k
    return binom(n, k) - 1 - sum(binom(n - a, k - t) for t, a in enumerate(s.elements))


def unrank(r: int, n: int, k: int) -> KSubset:
    total = binom(n, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range for C({n},{k})={total}")
    m = total - 1 - r
    els = []
    top = n
    for t in range(k, 0, -1):
        # largest c < top with C(c, t) <= m
        c = top - 1
        while binom(c, t) > m:
            c -= 1
        els.append(n - c)
        m -= binom(c, t)
        top = c
    return KSubset(tuple(els), n)


def antipode(r: int, n: int, k: int) -> int:
    """Rank of the complement of vertex r; needs n = 2k."""
    if n != 2 * k:
        raise ValueError("no antipodal pairing unless n = 2k")
    return binom(n, k) - 1 - r


def intersection_class(a: KSubset, b: KSubset) -> int:
    if a.n != b.n or a.k != b.k:
        raise ValueError(f"mismatched parameters: {a} in [{a.n}] vs {b} in [{b.n}]")
    return len(set(a.elements) & set(b.elements))


# ---------------------------------------------------------------------------
# Graphs


def build_graph(p: JohnsonParams, budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    n, k, i = p.n, p.k, p.i
    v = binom(n, k)
    if v > budget:
        raise ValueError("instance too large; use spectral path")
    if i == k:
        # |A & B| = k means A = B; without loops this is the empty graph
        return Graph(v, tuple(() for _ in range(v)))
    nbrs = []
    for s in enumerate_vertices(n, k):
        inside = s.elements
        outside = s.complement().elements
        row = []
        for keep in combinations(inside, i):
            for add in combinations(outside, k - i):
                row.append(rank(KSubset(tuple(sorted(keep + add)), n)))
        nbrs.append(tuple(sorted(row)))
    return Graph(v, tuple(nbrs))


def union_graph(n: int, k: int, classes: Sequence[int], budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    """Edge union of J(n, k, i) over i in `classes`."""
    parts = [build_graph(JohnsonParams(n, k, i), budget) for i in sorted(set(classes))]
    v = parts[0].v
    return Graph(v, tuple(tuple(sorted(set().union(*(g.neighbors[u] for g in parts)))) for u in range(v)))


def bfs_connected(g: Graph) -> bool:
    if g.v == 0:
        raise ValueError("empty graph")
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.v


def predicted_connected(p: JohnsonParams) -> bool:
    """Sufficient condition for J(n,k,i) to be connected: 2k - n < i < k."""
    return 2 * p.k - p.n < p.i < p.k


# ---------------------------------------------------------------------------
# Spectra


def valency(p: JohnsonParams) -> int:
    return binom(p.k, p.i) * binom(p.n - p.k, p.k - p.i)


def eigenvalue(p: JohnsonParams, j: int) -> int:
    """Eigenvalue of J(n,k,i) on the j-th eigenspace of the scheme."""
    n, k, i = p.n, p.k, p.i
    if not 0 <= j <= k:
        raise ValueError(f"eigenspace index j={j} out of range 0..{k}")
    return sum(
        (-1) ** l * binom(j, l) * binom(k - j, k - i - l) * binom(n - k - j, k - i - l)
        for l in range(k - i + 1)
    )


def eigenvalues(p: JohnsonParams) -> list[int]:
    return [eigenvalue(p, j) for j in range(p.k + 1)]


def eigenvalue_2k(k: int, i: int, j: int) -> int:
    """Same as ``eigenvalue(JohnsonParams(2k, k, i), j)``, via the n = 2k form."""
    return sum((-1) ** l * binom(j, l) * binom(k - j, i - j + l) ** 2 for l in range(k - i + 1))


def multiplicity(n: int, j: int) -> int:
    """Dimension of the j-th eigenspace: C(n, j) - C(n, j - 1)."""
    if not 0 <= 2 * j <= n:
        raise ValueError(f"need 0 <= j <= n/2, got n={n}, j={j}")
    return binom(n, j) - binom(n, j - 1)


def multiplicities(n: int, k: int) -> list[int]:
    return [multiplicity(n, j) for j in range(k + 1)]


class ClosedForms(NamedTuple):
    lambda_0: int
    lambda_1: int
    lambda_k_minus_1: int
    lambda_k: int
    lambda_i: int
    lambda_i_plus_1: int


def closed_form_eigenvalues(k: int, i: int) -> ClosedForms:
    """Shortcut formulas for selected eigenvalues of J(2k, k, i)."""
    if not (k >= 1 and 0 <= i <= k - 1):
        raise ValueError(f"need 0 <= i <= k-1, got k={k}, i={i}")
    c, c1 = binom(k, i), binom(k - 1, i)
    sign = (-1) ** (k - i)
    return ClosedForms(
        lambda_0=c * c,
        lambda_1=c * c - 2 * c * c1,
        lambda_k_minus_1=sign * (c - 2 * c1),
        lambda_k=sign * c,
        lambda_i=sum((-1) ** l * binom(i, l) * binom(k - i, l) ** 2 for l in range(k - i + 1)),
        lambda_i_plus_1=sum(
            (-1) ** l * binom(i + 1, l) * binom(k - i - 1, l - 1) ** 2 for l in range(k - i + 1)
        ),
    )


def closed_form_indices(k: int, i: int) -> ClosedForms:
    """Eigenspace index each closed form belongs to."""
    return ClosedForms(0, 1, k - 1, k, i, i + 1)
