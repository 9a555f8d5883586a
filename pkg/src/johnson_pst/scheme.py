"""Symmetric association schemes, specialised to the Johnson scheme J(n, k).

Class index ``l`` of J(n, k) is the relation "the two k-subsets meet in
exactly k - l points", so class 0 is the identity and class k (when n = 2k)
is the Kneser perfect matching. ``P[l][j]`` is the eigenvalue of class l on
eigenspace j.

All idempotent arithmetic is exact. The matrix-level checks scale every
idempotent by the common denominator ``v * lcm(valencies)`` and work with
Python-int object arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import johnson
from .johnson import DEFAULT_VERTEX_BUDGET, Graph, JohnsonParams


@dataclass(frozen=True)
class AssociationScheme:
    n: int
    k: int
    v: int
    P: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]
    valencies: tuple[int, ...]
    relations: tuple[Graph, ...] | None = field(default=None, repr=False)

    @property
    def d(self) -> int:
        return len(self.P) - 1

    def intersection_size(self, cls: int) -> int:
        return self.k - cls

    def class_of(self, u: int, w: int) -> int:
        a = johnson.unrank(u, self.n, self.k)
        b = johnson.unrank(w, self.n, self.k)
        return self.k - johnson.intersection_class(a, b)

    def relation_matrix(self, cls: int) -> np.ndarray:
        if self.relations is None:
            raise ValueError("relations not materialized")
        return self.relations[cls].adjacency_matrix()

    def summary(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "v": self.v,
            "valencies": list(self.valencies),
            "multiplicities": list(self.multiplicities),
            "P": [list(row) for row in self.P],
        }


def _identity_graph(v: int) -> Graph:
    return Graph(v, tuple((u,) for u in range(v)))


def build_johnson_scheme(n: int, k: int, materialize: bool | None = None,
                         budget: int = DEFAULT_VERTEX_BUDGET) -> AssociationScheme:
    """Johnson scheme J(n, k).

    With ``materialize=None`` the relation graphs are built only when the
    vertex count fits the budget; the spectral data is always present.
    """
    if not (k >= 1 and n >= 2 * k):
        raise ValueError(f"invalid parameters: need n >= 2k >= 2, got n={n}, k={k}")
    v = johnson.binom(n, k)
    if materialize is None:
        materialize = v <= budget
    P = tuple(tuple(johnson.eigenvalues(JohnsonParams(n, k, k - cls))) for cls in range(k + 1))
    valencies = tuple(johnson.valency(JohnsonParams(n, k, k - cls)) for cls in range(k + 1))
    relations = None
    if materialize:
        relations = (_identity_graph(v),) + tuple(
            johnson.build_graph(JohnsonParams(n, k, k - cls), budget) for cls in range(1, k + 1)
        )
    return AssociationScheme(n, k, v, P, tuple(johnson.multiplicities(n, k)), valencies, relations)


def dual_eigenvalue(s: AssociationScheme, j: int, i: int) -> Fraction:
    """q_j(i) = m_j p_i(j) / v_i."""
    return Fraction(s.multiplicities[j] * s.P[i][j], s.valencies[i])


def idempotent_coefficient(s: AssociationScheme, j: int, cls: int) -> Fraction:
    """Entry of E_j on any pair in relation `cls`."""
    return Fraction(s.multiplicities[j], s.v) * Fraction(s.P[cls][j], s.valencies[cls])


def idempotent_entry(s: AssociationScheme, j: int, u: int, w: int) -> Fraction:
    return idempotent_coefficient(s, j, s.class_of(u, w))


def involution_classes(s: AssociationScheme) -> list[int]:
    """Non-identity classes that are fixed-point-free perfect matchings."""
    out = []
    for cls in range(1, s.d + 1):
        if s.valencies[cls] != 1:
            continue
        if s.relations is not None:
            g = s.relations[cls]
            if any(g.neighbors[u] == (u,) for u in range(g.v)):
                continue
            if any(g.neighbors[g.neighbors[u][0]] != (u,) for u in range(g.v)):
                continue
        out.append(cls)
    return out


# ---------------------------------------------------------------------------
# Exact matrix checks


def common_denominator(s: AssociationScheme) -> int:
    return s.v * math.lcm(*s.valencies)


def class_matrix(s: AssociationScheme) -> np.ndarray:
    """v x v matrix whose (u, w) entry is the relation class of (u, w)."""
    if s.relations is not None:
        out = np.full((s.v, s.v), -1, dtype=np.int64)
        for cls, g in enumerate(s.relations):
            for u, nbrs in enumerate(g.neighbors):
                out[u, list(nbrs)] = cls
        return out
    subsets = [set(x.elements) for x in johnson.enumerate_vertices(s.n, s.k)]
    return np.array([[s.k - len(a & b) for b in subsets] for a in subsets], dtype=np.int64)


def scaled_idempotent(s: AssociationScheme, j: int, classes: np.ndarray | None = None) -> np.ndarray:
    """Integer object array D * E_j with D = ``common_denominator(s)``."""
    if classes is None:
        classes = class_matrix(s)
    D = common_denominator(s)
    table = []
    for cls in range(s.d + 1):
        x = idempotent_coefficient(s, j, cls) * D
        assert x.denominator == 1
        table.append(int(x))
    table = np.array(table, dtype=object)
    return table[classes]


def idempotent_matrix(s: AssociationScheme, j: int) -> np.ndarray:
    """E_j as an object array of Fractions."""
    D = common_denominator(s)
    return np.vectorize(lambda x: Fraction(x, D), otypes=[object])(scaled_idempotent(s, j))


def _as_object(a: np.ndarray) -> np.ndarray:
    return np.vectorize(int, otypes=[object])(a)


def verify_axioms(s: AssociationScheme) -> dict[str, bool]:
    """Pass/fail per scheme axiom; needs materialized relations."""
    if s.relations is None:
        raise ValueError("relations not materialized")
    mats = [g.adjacency_matrix() for g in s.relations]
    report = {}
    total = sum(mats)
    report["identity"] = bool(np.array_equal(mats[0], np.eye(s.v, dtype=np.int64)))
    report["partition"] = bool(np.all(total == 1))
    report["symmetric"] = all(bool(np.array_equal(a, a.T)) for a in mats)
    report["valencies"] = all(
        bool(np.all(a.sum(axis=1) == s.valencies[c])) for c, a in enumerate(mats)
    )

    closed = report["partition"]
    if closed:
        classes = class_matrix(s)
        for a in range(s.d + 1):
            for b in range(a, s.d + 1):
                prod = mats[a] @ mats[b]
                # the product lies in the span iff it is constant on each class
                for c in range(s.d + 1):
                    vals = prod[classes == c]
                    if vals.size and not np.all(vals == vals[0]):
                        closed = False
    report["closed_under_product"] = closed

    # P diag(m) P^T = v diag(valencies)
    P = np.array(s.P, dtype=object)
    lhs = P @ np.diag(np.array(s.multiplicities, dtype=object)) @ P.T
    rhs = s.v * np.diag(np.array(s.valencies, dtype=object))
    report["orthogonality"] = bool(np.all(lhs == rhs))
    report["multiplicity_sum"] = sum(s.multiplicities) == s.v and s.multiplicities[0] == 1
    return report


def verify_idempotents(s: AssociationScheme) -> dict[str, bool]:
    """Exact checks of the spectral decomposition of the Bose-Mesner algebra.

    Covers E_j^2 = E_j, E_j E_l = 0, sum E_j = I, A_i E_j = p_i(j) E_j,
    tr E_j = m_j and q_j(i) v_i = m_j p_i(j).
    """
    D = common_denominator(s)
    classes = class_matrix(s)
    E = [scaled_idempotent(s, j, classes) for j in range(s.d + 1)]
    A = [_as_object((classes == c).astype(np.int64)) for c in range(s.d + 1)]
    report = {}
    report["idempotent"] = all(np.all(e @ e == D * e) for e in E)
    report["orthogonal"] = all(
        np.all(E[j] @ E[l] == 0) for j in range(len(E)) for l in range(len(E)) if j != l
    )
    report["resolution_of_identity"] = bool(np.all(sum(E) == D * _as_object(np.eye(s.v, dtype=np.int64))))
    report["eigen_relation"] = all(
        np.all(A[i] @ E[j] == s.P[i][j] * E[j]) for i in range(len(A)) for j in range(len(E))
    )
    report["trace"] = all(np.trace(E[j]) == D * s.multiplicities[j] for j in range(len(E)))
    report["dual_eigenvalues"] = all(
        dual_eigenvalue(s, j, i) * s.valencies[i] == s.multiplicities[j] * s.P[i][j]
        for i in range(s.d + 1) for j in range(s.d + 1)
    )
    # E_j = (1/v) sum_l q_j(l) A_l, rebuilt independently of the coefficient table
    report["dual_reconstruction"] = all(
        np.all(sum((D * dual_eigenvalue(s, j, l) / s.v) * A[l] for l in range(len(A))) == E[j])
        for j in range(len(E))
    )
    return {name: bool(ok) for name, ok in report.items()}
