"""Fuzzy-number primitives: trapezoidal numbers, the five-level linguistic
scale, arithmetic, Mamdani inference and Chen's ranking index.

All values are immutable; every function here is pure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence, Union

import numpy as np

DEFAULT_UNIVERSE_HI = 6.0
DEFAULT_SAMPLE_STEP = 1e-3
ORACLE_STEP = 1e-4


class InvalidUniverseError(ValueError):
    """Universe upper bound too small to host the linguistic scale."""


class NegativeWeightError(ValueError):
    """Scaling factor / goal weight must be nonnegative."""


class InvalidExponentError(ValueError):
    """Chen's exponent k must be strictly positive."""


class UniverseMismatchError(ValueError):
    """Two sampled sets live on different universes."""


@dataclass(frozen=True)
class FuzzyNumber:
    """Trapezoidal fuzzy number (a, b, c, d); triangular when b == c.

    Membership rises linearly on [a, b], is 1 on [b, c] and falls linearly
    on [c, d]. Shoulders are encoded by a == b (left) or c == d (right).
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        vals = (self.a, self.b, self.c, self.d)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError(f"non-finite fuzzy number {vals}")
        if not (self.a <= self.b <= self.c <= self.d):
            raise ValueError(f"fuzzy number bounds not ordered: {vals}")

    @classmethod
    def triangular(cls, w: float, y: float, z: float) -> "FuzzyNumber":
        return cls(w, y, y, z)

    @classmethod
    def point(cls, v: float) -> "FuzzyNumber":
        return cls(v, v, v, v)

    @classmethod
    def zero(cls) -> "FuzzyNumber":
        return cls(0.0, 0.0, 0.0, 0.0)

    @property
    def is_triangular(self) -> bool:
        return self.b == self.c

    def __add__(self, other: "FuzzyNumber") -> "FuzzyNumber":
        return fuzzy_add(self, other)

    def scaled(self, factor: float) -> "FuzzyNumber":
        return fuzzy_scale(self, factor)

    def quadruple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


class LinguisticLevel(IntEnum):
    """Five-level impact scale; the integer value is the level's peak."""

    VL = 0
    L = 1
    M = 2
    H = 3
    VH = 4

    @classmethod
    def parse(cls, text: str) -> "LinguisticLevel":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown linguistic label {text!r}") from None


def level_to_fuzzy(level: LinguisticLevel,
                   universe_hi: float = DEFAULT_UNIVERSE_HI) -> FuzzyNumber:
    """Fuzzy shape of a linguistic level on the universe [0, universe_hi].

    VL is a left shoulder, VH a right shoulder extending to the universe
    edge; L, M, H are unit-wide triangles peaking at 1, 2, 3.
    """
    if universe_hi < 4:
        raise InvalidUniverseError(
            f"universe upper bound {universe_hi} < 4 cannot host the scale")
    hi = float(universe_hi)
    shapes = {
        LinguisticLevel.VL: FuzzyNumber(0.0, 0.0, 0.0, 1.0),
        LinguisticLevel.L: FuzzyNumber(0.0, 1.0, 1.0, 2.0),
        LinguisticLevel.M: FuzzyNumber(1.0, 2.0, 2.0, 3.0),
        LinguisticLevel.H: FuzzyNumber(2.0, 3.0, 3.0, 4.0),
        LinguisticLevel.VH: FuzzyNumber(3.0, 4.0, hi, hi),
    }
    return shapes[level]


def membership(f: FuzzyNumber, x: float) -> float:
    """Piecewise-linear membership of x in f; total on the reals."""
    if x < f.a or x > f.d:
        return 0.0
    if f.b <= x <= f.c:
        return 1.0
    if x < f.b:  # rising edge, b > a here
        return (x - f.a) / (f.b - f.a)
    return (f.d - x) / (f.d - f.c)  # falling edge, d > c here


def membership_array(f: FuzzyNumber, xs: np.ndarray) -> np.ndarray:
    """Vectorized membership evaluation."""
    out = np.zeros_like(xs, dtype=float)
    plateau = (xs >= f.b) & (xs <= f.c)
    out[plateau] = 1.0
    if f.b > f.a:
        rising = (xs >= f.a) & (xs < f.b)
        out[rising] = (xs[rising] - f.a) / (f.b - f.a)
    if f.d > f.c:
        falling = (xs > f.c) & (xs <= f.d)
        out[falling] = (f.d - xs[falling]) / (f.d - f.c)
    return out


def fuzzy_add(f1: FuzzyNumber, f2: FuzzyNumber) -> FuzzyNumber:
    return FuzzyNumber(f1.a + f2.a, f1.b + f2.b, f1.c + f2.c, f1.d + f2.d)


def fuzzy_sum(fs: Iterable[FuzzyNumber]) -> FuzzyNumber:
    total = FuzzyNumber.zero()
    for f in fs:
        total = fuzzy_add(total, f)
    return total


def fuzzy_scale(f: FuzzyNumber, factor: float) -> FuzzyNumber:
    if factor < 0:
        raise NegativeWeightError(f"negative scale factor {factor}")
    return FuzzyNumber(f.a * factor, f.b * factor, f.c * factor, f.d * factor)


def centroid(f: FuzzyNumber) -> float:
    """Area centroid of the trapezoidal membership graph.

    Reduces to (w + y + z) / 3 for a triangular (w, y, z) and to the point
    itself when the support is degenerate.
    """
    if f.a == f.d:
        return f.a
    num = (f.c * f.c + f.d * f.d + f.c * f.d) - (f.a * f.a + f.b * f.b + f.a * f.b)
    den = 3.0 * ((f.c + f.d) - (f.a + f.b))
    return num / den


@dataclass(frozen=True)
class SampledFuzzySet:
    """Membership values on a uniform grid over [universe_lo, universe_hi].

    Carries Mamdani aggregates and feeds the grid ranking oracle.
    """

    universe_lo: float
    universe_hi: float
    values: np.ndarray

    def __post_init__(self):
        if not self.universe_lo < self.universe_hi:
            raise ValueError("universe_lo must be < universe_hi")
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or len(vals) < 2:
            raise ValueError("need a 1-D grid of at least two samples")
        if vals.min() < -1e-12 or vals.max() > 1 + 1e-12:
            raise ValueError("sampled memberships must lie in [0, 1]")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, fn, lo: float, hi: float,
                      step: float = DEFAULT_SAMPLE_STEP) -> "SampledFuzzySet":
        xs = np.linspace(lo, hi, int(round((hi - lo) / step)) + 1)
        return cls(lo, hi, fn(xs))

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.universe_lo, self.universe_hi, len(self.values))

    def membership(self, x: float) -> float:
        return float(np.interp(x, self.grid, self.values, left=0.0, right=0.0))

    def membership_on(self, xs: np.ndarray) -> np.ndarray:
        return np.interp(xs, self.grid, self.values, left=0.0, right=0.0)

    def support(self) -> tuple[float, float]:
        """Smallest interval outside which membership is zero."""
        nz = np.nonzero(self.values > 0.0)[0]
        if len(nz) == 0:
            return (self.universe_lo, self.universe_lo)
        g = self.grid
        return (float(g[nz[0]]), float(g[nz[-1]]))

    def centroid(self) -> float:
        mass = self.values.sum()
        if mass <= 0.0:
            return self.universe_lo
        return float((self.grid * self.values).sum() / mass)


FuzzyLike = Union[FuzzyNumber, SampledFuzzySet]


def _memberships_on(f: FuzzyLike, xs: np.ndarray) -> np.ndarray:
    if isinstance(f, FuzzyNumber):
        return membership_array(f, xs)
    return f.membership_on(xs)


def _support(f: FuzzyLike) -> tuple[float, float]:
    if isinstance(f, FuzzyNumber):
        return (f.a, f.d)
    return f.support()


def value_centroid(f: FuzzyLike) -> float:
    if isinstance(f, FuzzyNumber):
        return centroid(f)
    return f.centroid()


def sup_min_utility(f: FuzzyLike, reference: SampledFuzzySet) -> float:
    """Largest pointwise min between f and the reference set on its grid."""
    if isinstance(f, SampledFuzzySet):
        if (f.universe_lo, f.universe_hi) != (reference.universe_lo,
                                              reference.universe_hi):
            raise UniverseMismatchError(
                f"universes differ: [{f.universe_lo}, {f.universe_hi}] vs "
                f"[{reference.universe_lo}, {reference.universe_hi}]")
    xs = reference.grid
    return float(np.minimum(_memberships_on(f, xs), reference.values).max())


def _chen_closed_form(candidates: Sequence[FuzzyNumber],
                      x_min: float, x_max: float) -> list[float]:
    # Intersection of the linear maximizing (minimizing) set with each
    # candidate's falling (rising) edge; exact for k = 1 and any trapezoid.
    width = x_max - x_min
    out = []
    for f in candidates:
        r = (f.d - x_min) / (width + (f.d - f.c))
        l = (x_max - f.a) / (width + (f.b - f.a))
        out.append(0.5 * (min(max(r, 0.0), 1.0) + 1.0 - min(max(l, 0.0), 1.0)))
    return out


def chen_indices_grid(candidates: Sequence[FuzzyLike], k: float = 1.0,
                      step: float = ORACLE_STEP) -> list[float]:
    """Grid sup-min realization of the ranking index CH^k.

    Independent of the closed form: samples the maximizing and minimizing
    sets and every candidate's membership over the candidate's support.
    """
    if k <= 0:
        raise InvalidExponentError(f"exponent k must be > 0, got {k}")
    if not candidates:
        raise ValueError("need at least one candidate")
    supports = [_support(f) for f in candidates]
    x_min = min(s[0] for s in supports)
    x_max = max(s[1] for s in supports)
    if x_max == x_min:
        return [0.5] * len(candidates)
    width = x_max - x_min
    out = []
    for f, (lo, hi) in zip(candidates, supports):
        # At least 2000 intervals so narrow supports stay well resolved.
        n = max(int(round((hi - lo) / step)), 2000) + 1
        xs = np.linspace(lo, hi, n)
        mu = _memberships_on(f, xs)
        s_max = ((xs - x_min) / width) ** k
        s_min = ((x_max - xs) / width) ** k
        r = float(np.minimum(s_max, mu).max())
        l = float(np.minimum(s_min, mu).max())
        out.append(0.5 * (r + 1.0 - l))
    return out


def chen_indices(candidates: Sequence[FuzzyLike], k: float = 1.0) -> list[float]:
    """Ranking index CH^k for each candidate, jointly over the set.

    Uses the exact edge/line intersection for k = 1 with triangular
    candidates; otherwise falls back to the grid oracle.
    """
    if k <= 0:
        raise InvalidExponentError(f"exponent k must be > 0, got {k}")
    if not candidates:
        raise ValueError("need at least one candidate")
    supports = [_support(f) for f in candidates]
    x_min = min(s[0] for s in supports)
    x_max = max(s[1] for s in supports)
    if x_max == x_min:
        return [0.5] * len(candidates)
    if k == 1.0 and all(isinstance(f, FuzzyNumber) for f in candidates):
        return _chen_closed_form(candidates, x_min, x_max)
    return chen_indices_grid(candidates, k)


def _level_peak(level: LinguisticLevel) -> float:
    return float(int(level))


def mamdani_aggregate(antecedents: Sequence[tuple[LinguisticLevel, float | None]],
                      universe_hi: float = DEFAULT_UNIVERSE_HI,
                      step: float = DEFAULT_SAMPLE_STEP) -> SampledFuzzySet:
    """Aggregate antecedent readings through the implicit min-label rule base.

    For every joint assignment of labels to antecedents the consequent is
    the minimum assigned label and the firing strength is the min of the
    label memberships at the antecedent inputs. Fired consequents are
    clipped at their strength and combined pointwise by max. An input of
    None stands for the given label's peak.
    """
    if not antecedents:
        raise ValueError("need at least one antecedent")
    shapes = {lvl: level_to_fuzzy(lvl, universe_hi) for lvl in LinguisticLevel}
    # Per antecedent, only labels with nonzero membership at its input can
    # participate in a fired rule.
    per_antecedent: list[list[tuple[LinguisticLevel, float]]] = []
    for level, x in antecedents:
        xin = _level_peak(level) if x is None else float(x)
        active = [(lvl, membership(shapes[lvl], xin))
                  for lvl in LinguisticLevel
                  if membership(shapes[lvl], xin) > 0.0]
        if not active:
            active = [(level, 0.0)]
        per_antecedent.append(active)
    strengths: dict[LinguisticLevel, float] = {}
    for assignment in itertools.product(*per_antecedent):
        strength = min(mu for _, mu in assignment)
        if strength <= 0.0:
            continue
        consequent = min(lvl for lvl, _ in assignment)
        if strength > strengths.get(consequent, 0.0):
            strengths[consequent] = strength
    xs = np.linspace(0.0, universe_hi,
                     int(round(universe_hi / step)) + 1)
    out = np.zeros_like(xs)
    for consequent, strength in strengths.items():
        clipped = np.minimum(membership_array(shapes[consequent], xs), strength)
        np.maximum(out, clipped, out=out)
    return SampledFuzzySet(0.0, universe_hi, out)
