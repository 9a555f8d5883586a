"""Continuous-time quantum walks H(t) = exp(itA) on unions of Johnson classes.

Two independent routes:

* the spectral path, H(t)[u, w] = sum_j exp(i t theta_j) E_j[u, w], with the
  idempotent entries taken exactly from the scheme (O(k) per entry, any v);
* the dense oracle, which diagonalises the explicit adjacency matrix.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import johnson
from .johnson import Graph
from .scheme import AssociationScheme, build_johnson_scheme, idempotent_coefficient

PST_TOL = 1e-9
DENSE_LIMIT = 2000


@dataclass(frozen=True)
class Amplitude:
    re: float
    im: float

    @property
    def modulus(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, z: complex) -> "Amplitude":
        return cls(float(z.real), float(z.imag))

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "modulus": self.modulus}


@dataclass(frozen=True)
class SpectralWalkData:
    """Spectral data of a union of classes of J(n, k).

    ``entries[c][j]`` is the exact value of E_j on a pair in relation class c.
    """

    n: int
    k: int
    v: int
    classes: tuple[int, ...]
    eigenvalues: tuple[int, ...]
    multiplicities: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_scheme(cls, s: AssociationScheme, classes: Iterable[int]) -> "SpectralWalkData":
        classes = tuple(sorted(set(classes)))
        # intersection size i is scheme class k - i
        theta = tuple(sum(s.P[s.k - i][j] for i in classes) for j in range(s.d + 1))
        entries = tuple(
            tuple(idempotent_coefficient(s, j, c) for j in range(s.d + 1)) for c in range(s.d + 1)
        )
        return cls(s.n, s.k, s.v, classes, theta, s.multiplicities, entries)

    @classmethod
    def johnson(cls, n: int, k: int, classes: Iterable[int]) -> "SpectralWalkData":
        return cls.from_scheme(build_johnson_scheme(n, k, materialize=False), classes)

    def class_of(self, u: int, w: int) -> int:
        a = johnson.unrank(u, self.n, self.k)
        b = johnson.unrank(w, self.n, self.k)
        return self.k - johnson.intersection_class(a, b)

    def coefficients(self, cls: int) -> np.ndarray:
        return np.array([float(x) for x in self.entries[cls]])

    def amplitudes(self, cls: int, times) -> np.ndarray:
        """H(t) on a pair of relation class `cls`, vectorised over `times`."""
        t = np.atleast_1d(np.asarray(times, dtype=float))
        theta = np.array(self.eigenvalues, dtype=float)
        return np.exp(1j * np.outer(t, theta)) @ self.coefficients(cls)


def transition_entry(w: SpectralWalkData, u: int, v: int, t: float) -> Amplitude:
    for r in (u, v):
        if not 0 <= r < w.v:
            raise ValueError(f"vertex rank {r} out of range 0..{w.v - 1}")
    return Amplitude.of(complex(w.amplitudes(w.class_of(u, v), t)[0]))


def antipodal_amplitude(n: int, k: int, classes: Iterable[int], t: float) -> Amplitude:
    """H(t) between any k-subset and its complement in J(2k, k)."""
    if n != 2 * k:
        raise ValueError("no antipodal pairing")
    w = SpectralWalkData.johnson(n, k, classes)
    return Amplitude.of(complex(w.amplitudes(k, t)[0]))


def dense_walk_oracle(g: Graph | np.ndarray, t: float) -> np.ndarray:
    """exp(itA) via a symmetric eigendecomposition of the adjacency matrix."""
    a = g.adjacency_matrix(dtype=float) if isinstance(g, Graph) else np.asarray(g, dtype=float)
    if a.shape[0] > DENSE_LIMIT:
        raise ValueError(f"graph too large for the dense oracle ({a.shape[0]} > {DENSE_LIMIT})")
    lam, q = np.linalg.eigh(a)
    return (q * np.exp(1j * t * lam)) @ q.T


def _refine(w: SpectralWalkData, cls: int, t0: float, step: float, iters: int = 3) -> float:
    """Newton iterations on |H(t)|^2, kept inside one grid step of t0."""
    theta = np.array(w.eigenvalues, dtype=float)
    c = w.coefficients(cls)
    t = t0
    for _ in range(iters):
        ph = np.exp(1j * t * theta) * c
        h, h1, h2 = ph.sum(), (1j * theta * ph).sum(), (-(theta ** 2) * ph).sum()
        f1 = 2 * (np.conj(h) * h1).real
        f2 = 2 * (np.conj(h1) * h1 + np.conj(h) * h2).real
        if f2 >= 0:
            break
        t_new = t - f1 / f2
        if abs(t_new - t0) > step:
            break
        t = t_new
    return t


def scan_max_amplitude(w: SpectralWalkData, u: int, v: int, t_max: float = 2 * math.pi,
                       step: float = 1e-4) -> tuple[float, float]:
    """Grid maximum of |H(t)[u, v]| over (0, t_max], then a Newton polish."""
    if step <= 0:
        raise ValueError("step must be positive")
    return scan_class(w, w.class_of(u, v), t_max, step)


def scan_class(w: SpectralWalkData, cls: int, t_max: float = 2 * math.pi,
               step: float = 1e-4) -> tuple[float, float]:
    num = max(1, int(math.floor(t_max / step + 1e-9)))
    times = step * np.arange(1, num + 1)
    mods = np.abs(w.amplitudes(cls, times))
    idx = int(np.argmax(mods))
    t0 = float(times[idx])
    t1 = float(min(max(_refine(w, cls, t0, step), step), t_max))
    m1 = float(abs(w.amplitudes(cls, t1)[0]))
    if m1 >= mods[idx]:
        return t1, m1
    return t0, float(mods[idx])


def periodicity_check(w: SpectralWalkData, tol: float = 1e-12) -> bool:
    """Check H(2 pi) = I entry rule by entry rule."""
    if any(int(x) != x for x in w.eigenvalues):
        raise ValueError("non-integer spectrum")
    # t = 2 pi: reduce each phase mod 2 pi before exponentiating
    theta = np.array(w.eigenvalues, dtype=float)
    phases = np.exp(2j * np.pi * np.mod(theta, 1.0))
    for cls in range(len(w.entries)):
        z = complex(phases @ w.coefficients(cls))
        target = 1.0 if cls == 0 else 0.0
        if abs(z - target) > tol:
            return False
    return True


def amplitude_trace(w: SpectralWalkData, u: int, v: int, times: Sequence[float]) -> list[tuple]:
    z = w.amplitudes(w.class_of(u, v), times)
    return [(float(t), float(x.real), float(x.imag), float(abs(x))) for t, x in zip(times, z)]


def trace_to_csv(rows: Iterable[tuple]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["t", "re", "im", "modulus"])
    for t, re, im, mod in rows:
        out.writerow([repr(t), repr(re), repr(im), repr(mod)])
    return buf.getvalue()
