"""The two-bias classifier over a fixed kernel, and its exact structure.

For a kernel K, a function f and a measure mu the classifier is

    H_{c1,c2}(K)(f) = sign( sum_g ReLU((f*K)(g) + c1) * mu(g) + c2 )

with sign(0) = -1.  The inner sum, as a function of c1, is written ``nu``
here; it is continuous, convex, non-decreasing and piecewise affine with
rational breakpoints, which is what makes exact enumeration of all
realizable label patterns possible downstream.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .gfunc import GroupFunction, Measure, convolve, _same_group


def nu(
    kernel: GroupFunction, f: GroupFunction, mu: Measure, c: Fraction
) -> Fraction:
    """sum_g max(0, (f*K)(g) + c) * mu(g), exactly."""
    conv = convolve(f, kernel, mu)
    total = Fraction(0)
    for g in range(f.group.order):
        v = conv.values[g] + c
        if v > 0 and mu.weights[g] != 0:
            total += v * mu.weights[g]
    return total


def classify(
    kernel: GroupFunction,
    f: GroupFunction,
    mu: Measure,
    c1: Fraction,
    c2: Fraction,
) -> int:
    """+1 if nu(K, f, mu, c1) + c2 > 0, else -1 (zero counts as -1)."""
    return 1 if nu(kernel, f, mu, c1) + c2 > 0 else -1


@dataclass(frozen=True)
class NuProfile:
    """Exact piecewise-affine representation of c -> nu(K, f, mu, c).

    Piece i covers c in (breakpoints[i-1], breakpoints[i]] going left to
    right; slopes[i] and offsets[i] give the affine map on that piece.
    The function is continuous, so either convention at the breakpoints
    evaluates identically.
    """

    breakpoints: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]
    offsets: tuple[Fraction, ...]
    k: Optional[int] = None

    def __post_init__(self):
        if len(self.slopes) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more slope than breakpoints")
        if len(self.offsets) != len(self.slopes):
            raise ValueError("need one offset per slope")

    def piece_at(self, c: Fraction) -> int:
        return bisect_left(self.breakpoints, c)

    def evaluate(self, c: Fraction) -> Fraction:
        i = self.piece_at(c)
        return self.slopes[i] * c + self.offsets[i]


def build_nu_profile(
    kernel: GroupFunction,
    f: GroupFunction,
    mu: Measure,
    k: Optional[int] = None,
) -> NuProfile:
    """Breakpoints sit at c = -(f*K)(g) for elements with positive weight.

    Crossing a breakpoint from the left activates every ReLU term whose
    convolution value is that breakpoint's negative, so the slope gains
    the total measure weight of those elements and the offset gains their
    weighted convolution mass.
    """
    _same_group(kernel.group, f.group, "build_nu_profile")
    conv = convolve(f, kernel, mu)
    by_breakpoint: dict[Fraction, tuple[Fraction, Fraction]] = {}
    for g in range(f.group.order):
        w = mu.weights[g]
        if w == 0:
            continue
        v = conv.values[g]
        bp = -v
        weight, mass = by_breakpoint.get(bp, (Fraction(0), Fraction(0)))
        by_breakpoint[bp] = (weight + w, mass + w * v)
    breakpoints = sorted(by_breakpoint)
    slopes = [Fraction(0)]
    offsets = [Fraction(0)]
    for bp in breakpoints:
        weight, mass = by_breakpoint[bp]
        slopes.append(slopes[-1] + weight)
        offsets.append(offsets[-1] + mass)
    return NuProfile(tuple(breakpoints), tuple(slopes), tuple(offsets), k=k)


@dataclass(frozen=True)
class StepFn:
    """A left-continuous step function given by breakpoints and values.

    values[i] is the value on (breakpoints[i-1], breakpoints[i]]; at a
    breakpoint the term with that exact threshold is still excluded,
    matching the strict inequality in the defining indicator.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more value than breakpoints")

    def evaluate(self, c: Fraction) -> Fraction:
        # Number of breakpoints strictly below c picks the piece.
        return self.values[bisect_left(self.breakpoints, c)]


def step_function(
    kernel: GroupFunction, f: GroupFunction, mu: Measure
) -> StepFn:
    """c -> sum_g (f*K)(g) * mu(g) over elements with (f*K)(g) > -c.

    Values are the partial sums of the weighted convolution values taken
    in activation order (largest convolution value activates first).
    """
    _same_group(kernel.group, f.group, "step_function")
    conv = convolve(f, kernel, mu)
    by_breakpoint: dict[Fraction, Fraction] = {}
    for g in range(f.group.order):
        w = mu.weights[g]
        if w == 0:
            continue
        v = conv.values[g]
        by_breakpoint[-v] = by_breakpoint.get(-v, Fraction(0)) + w * v
    breakpoints = sorted(by_breakpoint)
    values = [Fraction(0)]
    for bp in breakpoints:
        values.append(values[-1] + by_breakpoint[bp])
    n = f.group.order
    assert len(set(values)) <= n + 1
    return StepFn(tuple(breakpoints), tuple(values))


@dataclass(frozen=True)
class Ranking:
    """Ranks of m values: rank(k) = 1 + #{l : value_l < value_k}.

    Ties produce equal ranks; when all values are distinct the ranks form
    a permutation of 1..m.
    """

    ranks: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.ranks)

    def is_strict(self) -> bool:
        return sorted(self.ranks) == list(range(1, len(self.ranks) + 1))


def ranking_of_values(values: Sequence[Fraction]) -> Ranking:
    ranks = tuple(
        1 + sum(1 for other in values if other < v) for v in values
    )
    return Ranking(ranks)


def order_at(
    kernel: GroupFunction,
    fs: Sequence[GroupFunction],
    mu: Measure,
    c: Fraction,
) -> Ranking:
    """Ranking of the nu values of the given functions at bias c."""
    if not fs:
        raise ValueError("order_at needs at least one function")
    values = [nu(kernel, f, mu, c) for f in fs]
    return ranking_of_values(values)
