"""Rational-valued functions on a finite group, measures, and convolution.

Everything here is exact: values are `fractions.Fraction` and floats are
rejected outright, because downstream constructions compare quantities
whose gaps shrink super-exponentially and a single rounding step could
flip an order comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .groups import FiniteGroup


def _as_fraction(x: object, what: str) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"{what} must be exact rationals, got float {x!r}")
    if isinstance(x, _RationalABC):
        return Fraction(x)
    raise TypeError(f"{what} must be int or Fraction, got {type(x).__name__}")


def _same_group(a: FiniteGroup, b: FiniteGroup, what: str) -> None:
    if a is b:
        return
    if a.label == b.label and a.order == b.order:
        return
    raise ValueError(
        f"{what}: group mismatch ({a.label!r} vs {b.label!r})"
    )


@dataclass(frozen=True)
class GroupFunction:
    """An exact function G -> Q, stored as one value per element index."""

    group: FiniteGroup
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.group.order:
            raise ValueError(
                f"function has {len(self.values)} values for a group of "
                f"order {self.group.order}"
            )

    @classmethod
    def from_values(
        cls, group: FiniteGroup, values: Iterable[object]
    ) -> "GroupFunction":
        vals = tuple(_as_fraction(v, "function values") for v in values)
        return cls(group, vals)

    def __call__(self, g: int) -> Fraction:
        return self.values[g]

    def support(self) -> list[int]:
        return [g for g in range(self.group.order) if self.values[g] != 0]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


@dataclass(frozen=True)
class Measure:
    """A finite measure on the group: non-negative weight per element."""

    group: FiniteGroup
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != self.group.order:
            raise ValueError("measure needs one weight per group element")
        if any(w < 0 for w in self.weights):
            raise ValueError("measure weights must be non-negative")
        if sum(self.weights) <= 0:
            raise ValueError("measure must have positive total mass")

    @classmethod
    def from_weights(
        cls, group: FiniteGroup, weights: Iterable[object]
    ) -> "Measure":
        ws = tuple(_as_fraction(w, "measure weights") for w in weights)
        return cls(group, ws)

    def __call__(self, g: int) -> Fraction:
        return self.weights[g]


def counting_measure(group: FiniteGroup) -> Measure:
    """Weight 1 on every element -- the default measure everywhere."""
    return Measure(group, tuple(Fraction(1) for _ in range(group.order)))


def indicator(group: FiniteGroup, g: int) -> GroupFunction:
    """The function that is 1 at g and 0 elsewhere."""
    if not 0 <= g < group.order:
        raise ValueError(f"element index {g} out of range for {group.label}")
    values = tuple(
        Fraction(1) if h == g else Fraction(0) for h in range(group.order)
    )
    return GroupFunction(group, values)


def constant(group: FiniteGroup, value: object) -> GroupFunction:
    v = _as_fraction(value, "constant value")
    return GroupFunction(group, tuple(v for _ in range(group.order)))


def translate(f: GroupFunction, a: int) -> GroupFunction:
    """The function g -> f(a*g)."""
    group = f.group
    if not 0 <= a < group.order:
        raise ValueError(f"element index {a} out of range for {group.label}")
    values = tuple(f.values[group.mul(a, g)] for g in range(group.order))
    return GroupFunction(group, values)


def convolve(f: GroupFunction, kernel: GroupFunction, mu: Measure) -> GroupFunction:
    """Generalized group convolution (f * K)(g) = sum_h f(g h^-1) K(h) mu(h).

    Only elements where both the kernel and the measure are nonzero
    contribute, so sparse kernels convolve in time O(n * |support|).
    """
    _same_group(f.group, kernel.group, "convolve")
    _same_group(f.group, mu.group, "convolve")
    group = f.group
    terms = [
        (h, kernel.values[h] * mu.weights[h])
        for h in range(group.order)
        if kernel.values[h] != 0 and mu.weights[h] != 0
    ]
    values = []
    for g in range(group.order):
        acc = Fraction(0)
        for h, kw in terms:
            acc += f.values[group.mul(g, group.inv(h))] * kw
        values.append(acc)
    return GroupFunction(group, tuple(values))


def linear_combination(
    group: FiniteGroup,
    coefficients: Sequence[Fraction],
    functions: Sequence[GroupFunction],
) -> GroupFunction:
    """Pointwise sum of coefficient * function pairs."""
    if len(coefficients) != len(functions):
        raise ValueError("need one coefficient per function")
    values = [Fraction(0)] * group.order
    for c, f in zip(coefficients, functions):
        _same_group(group, f.group, "linear_combination")
        for g in range(group.order):
            values[g] += c * f.values[g]
    return GroupFunction(group, tuple(values))
