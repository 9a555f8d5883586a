"""Perfect state transfer decisions for classes of J(n, k) and their unions.

Eigenvalues are always indexed by eigenspace (index 0 is the all-ones
eigenspace, whose eigenvalue is the valency and therefore the largest).
They are never re-sorted, since the +/- partition lives on eigenspace
indices.

The 2-adic criterion is only a necessary condition. A union that passes it
and is not covered by a closed-form result is reported as
``INCONCLUSIVE_PASS`` and left for the walk oracle to settle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from . import johnson
from .exactnum import INFINITY, binom, gcd_all, ord2
from .johnson import JohnsonParams, KSubset
from .scheme import AssociationScheme, build_johnson_scheme, involution_classes

HALF_PI = math.pi / 2


class Obstruction(str, Enum):
    NOT_2K = "NOT_2K"
    NO_INVOLUTION_CLASS = "NO_INVOLUTION_CLASS"
    DEGREE_EVEN = "DEGREE_EVEN"
    ODD_EVEN = "ODD_EVEN"
    ODD_ODD = "ODD_ODD"
    ORD2_FAIL = "ORD2_FAIL"
    COMPLETE_GRAPH = "COMPLETE_GRAPH"
    INCONCLUSIVE_PASS = "INCONCLUSIVE_PASS"


@dataclass(frozen=True)
class SpectrumPartition:
    signs: tuple[int, ...]
    t_class: int

    def __post_init__(self):
        if not self.signs or self.signs[0] != 1:
            raise ValueError("eigenspace 0 must lie in I+")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def plus(self) -> list[int]:
        return [j for j, s in enumerate(self.signs) if s == 1]

    @property
    def minus(self) -> list[int]:
        return [j for j, s in enumerate(self.signs) if s == -1]


@dataclass(frozen=True)
class CriterionResult:
    passed: bool
    alpha: int
    ord2_alpha: int
    gaps: tuple[dict, ...]
    violations: tuple[int, ...]

    def evidence(self) -> dict:
        return {
            "alpha": self.alpha,
            "ord2_alpha": self.ord2_alpha,
            "gaps": [dict(g, ord2=_json_ord2(g["ord2"])) for g in self.gaps],
        }


@dataclass
class PstVerdict:
    n: int
    k: int
    classes: tuple[int, ...]
    has_pst: bool
    time: float | None = None
    time_label: str | None = None
    partner_rule: str | None = None
    obstruction: Obstruction | None = None
    detail: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.has_pst == (self.obstruction is not None):
            raise ValueError("a verdict carries either a PST time or an obstruction")
        if self.has_pst and self.time is None:
            raise ValueError("positive verdict without a time")

    @property
    def decided(self) -> bool:
        return self.obstruction is not Obstruction.INCONCLUSIVE_PASS

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "classes": list(self.classes),
            "has_pst": self.has_pst,
            "time": self.time,
            "time_label": self.time_label,
            "partner_rule": self.partner_rule,
            "obstruction": None if self.obstruction is None
            else {"tag": self.obstruction.value, "detail": self.detail},
            "evidence": self.evidence,
        }


def _json_ord2(x):
    return "inf" if x == INFINITY else x


# ---------------------------------------------------------------------------
# Criterion


def alpha(eigenvalues: Sequence[int]) -> int:
    """gcd of the gaps eigenvalues[0] - eigenvalues[j]; zero gaps are skipped."""
    gaps = [eigenvalues[0] - x for x in eigenvalues[1:] if x != eigenvalues[0]]
    if not gaps:
        raise ValueError("trivial spectrum")
    return gcd_all(gaps)


def partition_from_involution(s: AssociationScheme, t: int) -> SpectrumPartition:
    if t not in involution_classes(s):
        raise ValueError(f"class {t} is not an involution class")
    # v_t = 1, so T E_j = p_t(j) E_j with p_t(j) = +-1
    return SpectrumPartition(tuple(s.P[t]), t)


def ord2_criterion(eigenvalues: Sequence[int], part: SpectrumPartition) -> CriterionResult:
    if len(eigenvalues) != len(part.signs):
        raise ValueError("partition and eigenvalues have different lengths")
    a = alpha(eigenvalues)
    oa = ord2(a)
    gaps, bad = [], []
    for j in range(1, len(eigenvalues)):
        gap = eigenvalues[0] - eigenvalues[j]
        o = ord2(gap)
        sign = part.signs[j]
        ok = o > oa if sign == 1 else o == oa
        gaps.append({"j": j, "sign": sign, "gap": gap, "ord2": o, "ok": ok})
        if not ok:
            bad.append(j)
    return CriterionResult(not bad, a, oa, tuple(gaps), tuple(bad))


def johnson_partition(k: int) -> SpectrumPartition:
    """The +/- partition of J(2k, k) relative to the Kneser class: (-1)**j."""
    return SpectrumPartition(tuple((-1) ** j for j in range(k + 1)), k)


def union_eigenvalues(n: int, k: int, classes: Iterable[int]) -> list[int]:
    """Eigenvalues of the union of J(n,k,i), i in classes, per eigenspace."""
    classes = sorted(set(classes))
    return [sum(johnson.eigenvalue(JohnsonParams(n, k, i), j) for i in classes) for j in range(k + 1)]


# ---------------------------------------------------------------------------
# Verdicts


def _kneser_verdict(n, k, classes, evidence) -> PstVerdict:
    return PstVerdict(n, k, classes, True, HALF_PI, "pi/2",
                      partner_rule="antipodal: A -> complement of A", evidence=evidence)


def _check_params(n: int, k: int):
    if not (k >= 1 and n >= 2 * k):
        raise ValueError(f"invalid parameters: need n >= 2k >= 2, got n={n}, k={k}")


def verdict_single_class(n: int, k: int, i: int) -> PstVerdict:
    _check_params(n, k)
    if i == k:
        raise ValueError("identity class")
    if not 0 <= i < k:
        raise ValueError(f"class i={i} out of range 0..{k - 1}")
    classes = (i,)
    if n != 2 * k:
        return PstVerdict(n, k, classes, False, obstruction=Obstruction.NOT_2K,
                          detail={"reason": "no valency-1 class unless n = 2k", "n": n, "k": k})

    lam = johnson.eigenvalues(JohnsonParams(n, k, i))
    crit = ord2_criterion(lam, johnson_partition(k))
    evidence = crit.evidence()
    if i == 0:
        return _kneser_verdict(n, k, classes, evidence)

    c, c1 = binom(k, i), binom(k - 1, i)
    parity = {"binom_k_i": c, "binom_k1_i": c1}
    if c % 2 == 0:
        tag = Obstruction.DEGREE_EVEN
        detail = dict(parity,
                      ord2_gap_0_1=ord2(lam[0] - lam[1]),
                      ord2_gap_k_km1=ord2(lam[k] - lam[k - 1]))
        assert detail["ord2_gap_k_km1"] < detail["ord2_gap_0_1"]
    elif c1 % 2 == 0:
        tag = Obstruction.ODD_EVEN
        detail = dict(parity, ord2_alpha=crit.ord2_alpha, ord2_gap_0_1=ord2(lam[0] - lam[1]))
        assert crit.ord2_alpha <= 1 and detail["ord2_gap_0_1"] >= 2
    else:
        tag = Obstruction.ODD_ODD
        hi, lo = (k - i + 2, k - i) if k % 2 == 0 else (k - i + 1, k - i - 1)
        diff = lam[hi] - lam[lo]
        detail = dict(parity, pair=[hi, lo], difference=diff, difference_mod_4=diff % 4)
        assert diff % 4 == 2
    assert not crit.passed, (n, k, i)
    detail["ord2_violations"] = list(crit.violations)
    return PstVerdict(n, k, classes, False, obstruction=tag, detail=detail, evidence=evidence)


def verdict_from_spectrum(s: AssociationScheme, eigenvalues: Sequence[int],
                          classes: tuple[int, ...] = ()) -> PstVerdict:
    """Run the 2-adic criterion against every involution class of `s`."""
    invol = involution_classes(s)
    if not invol:
        return PstVerdict(s.n, s.k, classes, False, obstruction=Obstruction.NO_INVOLUTION_CLASS,
                          detail={"valencies": list(s.valencies)})
    results = []
    for t in invol:
        crit = ord2_criterion(eigenvalues, partition_from_involution(s, t))
        if crit.passed:
            return PstVerdict(s.n, s.k, classes, False, obstruction=Obstruction.INCONCLUSIVE_PASS,
                              detail={"t_class": t}, evidence=crit.evidence())
        results.append((t, crit))
    t, crit = results[0]
    return PstVerdict(s.n, s.k, classes, False, obstruction=Obstruction.ORD2_FAIL,
                      detail={"t_class": t, "violations": list(crit.violations)},
                      evidence=crit.evidence())


def verdict_union(n: int, k: int, classes: Iterable[int]) -> PstVerdict:
    _check_params(n, k)
    classes = tuple(sorted(set(classes)))
    if not classes:
        raise ValueError("empty class set")
    if any(not 0 <= i < k for i in classes):
        raise ValueError(f"classes must lie in 0..{k - 1}: {list(classes)}")
    if len(classes) == 1:
        return verdict_single_class(n, k, classes[0])
    if n != 2 * k:
        return PstVerdict(n, k, classes, False, obstruction=Obstruction.NOT_2K,
                          detail={"reason": "unions only transfer between complementary sets",
                                  "n": n, "k": k})
    v = binom(n, k)
    theta = union_eigenvalues(n, k, classes)
    crit = ord2_criterion(theta, johnson_partition(k))
    evidence = dict(crit.evidence(), eigenvalues=theta)
    if classes == tuple(range(1, k)) and v % 4 == 0:
        # complement of the Kneser matching, pi/2 a multiple of 2pi/v
        return _kneser_verdict(n, k, classes, evidence)
    if classes == tuple(range(k)) and v > 2:
        return PstVerdict(n, k, classes, False, obstruction=Obstruction.COMPLETE_GRAPH,
                          detail={"v": v, "ord2_violations": list(crit.violations)},
                          evidence=evidence)
    s = build_johnson_scheme(n, k, materialize=False)
    out = verdict_from_spectrum(s, theta, classes)
    out.evidence = evidence
    return out


# ---------------------------------------------------------------------------
# Automorphisms


def automorphism_obstruction(n: int, k: int, a: KSubset, b: KSubset) -> tuple[int, int] | None:
    """A transposition of {1..n} fixing `a` setwise and moving `b`.

    Returns None exactly when b is the complement of a (which forces n = 2k).
    """
    if a == b:
        raise ValueError("vertices must differ")
    if a.n != n or b.n != n or a.k != k or b.k != k:
        raise ValueError("vertices do not belong to J(n, k)")
    A, B = set(a.elements), set(b.elements)
    common = A & B
    if common:
        x = min(common)
        x2 = min(A - B)
        return (x, x2)
    outside = set(range(1, n + 1)) - A
    if B == outside:
        return None
    y = min(B)
    y2 = min(outside - B)
    return (min(y, y2), max(y, y2))


def apply_transposition(s: KSubset, swap: tuple[int, int]) -> KSubset:
    x, y = swap
    m = {x: y, y: x}
    return KSubset.of([m.get(e, e) for e in s.elements], s.n)


# ---------------------------------------------------------------------------
# Lemma validators


SKIPPED = "SKIPPED"


def validate_congruence_lemmas(k: int, i: int, eigenvalues: Sequence[int] | None = None) -> dict:
    """Check the mod-4 eigenvalue-gap facts behind the odd cases of J(2k, k, i).

    Each check is True/False, or ``SKIPPED`` when its hypothesis fails.
    `eigenvalues` overrides the computed spectrum (used for negative controls).
    """
    if not 1 <= i <= k - 1:
        raise ValueError(f"need 1 <= i <= k-1, got k={k}, i={i}")
    lam = list(eigenvalues) if eigenvalues is not None else johnson.eigenvalues(JohnsonParams(2 * k, k, i))
    c_odd = binom(k, i) % 2 == 1
    both_odd = c_odd and binom(k - 1, i) % 2 == 1
    out = {}
    out["a"] = (lam[i] - lam[i + 1]) % 4 == 2 if c_odd else SKIPPED
    out["b"] = (lam[k - i + 2] - lam[k - i]) % 4 == 2 if both_odd and k % 2 == 0 else SKIPPED
    out["c"] = (lam[k - i + 1] - lam[k - i - 1]) % 4 == 2 if both_odd and k % 2 == 1 else SKIPPED
    out["d"] = ord2(alpha(lam)) <= 1 if c_odd else SKIPPED
    return out
