"""Exact enumeration of realizable label patterns and shattering proofs.

For a fixed kernel K and functions f_1..f_m, the classifier's label
vector depends on (c1, c2) only through the ranking and values of the
nu functions at c1.  Those are piecewise affine in c1, so probing one
rational point inside every maximal piece — plus every breakpoint and
crossing — visits every realizable label pattern.  Each witnessed
pattern is re-verified through the classifier itself before it enters a
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional, Sequence

from .classifier import (
    NuProfile,
    Ranking,
    build_nu_profile,
    classify,
    ranking_of_values,
)
from .gfunc import GroupFunction, Measure
from .orders import OrderSet, is_complete


@dataclass(frozen=True)
class Dichotomy:
    """One +-1 label per function."""

    labels: tuple[int, ...]

    def __post_init__(self):
        if any(v not in (-1, 1) for v in self.labels):
            raise ValueError(f"labels must be -1 or +1, got {self.labels}")


@dataclass(frozen=True)
class DichotomyEntry:
    labels: tuple[int, ...]
    status: str  # "witnessed" | "unreachable"
    c1: Optional[Fraction] = None
    c2: Optional[Fraction] = None


@dataclass(frozen=True)
class ShatterCertificate:
    """Witness or absence marker for each of the 2^m label patterns."""

    m: int
    entries: tuple[DichotomyEntry, ...]
    shattered: bool

    def witnessed_count(self) -> int:
        return sum(1 for e in self.entries if e.status == "witnessed")


@dataclass(frozen=True)
class CriticalSet:
    """All bias values where a ranking can change, plus probe points.

    `points` holds every nu breakpoint and every crossing of two nu
    functions inside a shared affine piece; `probes` additionally covers
    the open intervals between them (midpoints) and both unbounded ends.
    Between consecutive points every nu is affine, so the ranking is
    constant there and the probes reach every ranking attained on the
    whole real line.
    """

    points: tuple[Fraction, ...]
    probes: tuple[Fraction, ...]


def _profiles(
    kernel: GroupFunction, fs: Sequence[GroupFunction], mu: Measure
) -> list[NuProfile]:
    if not fs:
        raise ValueError("need at least one function")
    return [build_nu_profile(kernel, f, mu, k=i) for i, f in enumerate(fs)]


def _critical_from_profiles(profiles: Sequence[NuProfile]) -> CriticalSet:
    criticals: set[Fraction] = set()
    for p in profiles:
        criticals.update(p.breakpoints)
    grid = sorted(criticals)
    # Representative point inside each maximal piece of the common grid.
    reps: list[Fraction] = []
    if grid:
        reps.append(grid[0] - 1)
        for lo, hi in zip(grid, grid[1:]):
            reps.append((lo + hi) / 2)
        reps.append(grid[-1] + 1)
    for rep_index, rep in enumerate(reps):
        lo = grid[rep_index - 1] if rep_index > 0 else None
        hi = grid[rep_index] if rep_index < len(grid) else None
        for i, j in combinations(range(len(profiles)), 2):
            pi, pj = profiles[i], profiles[j]
            si = pi.slopes[pi.piece_at(rep)]
            oi = pi.offsets[pi.piece_at(rep)]
            sj = pj.slopes[pj.piece_at(rep)]
            oj = pj.offsets[pj.piece_at(rep)]
            if si == sj:
                continue  # parallel or identical on this piece: no crossing
            c = (oj - oi) / (si - sj)
            if (lo is None or lo < c) and (hi is None or c < hi):
                criticals.add(c)
    points = tuple(sorted(criticals))
    if not points:
        return CriticalSet(points=(), probes=(Fraction(0),))
    probes: list[Fraction] = [points[0] - 1]
    for idx, p in enumerate(points):
        probes.append(p)
        if idx + 1 < len(points):
            probes.append((p + points[idx + 1]) / 2)
    probes.append(points[-1] + 1)
    return CriticalSet(points=points, probes=tuple(probes))


def critical_points(
    kernel: GroupFunction, fs: Sequence[GroupFunction], mu: Measure
) -> CriticalSet:
    """Bias values at which the ranking of the nu functions can change."""
    return _critical_from_profiles(_profiles(kernel, fs, mu))


def _witnesses(
    kernel: GroupFunction, fs: Sequence[GroupFunction], mu: Measure
) -> dict[tuple[int, ...], tuple[Fraction, Fraction]]:
    """First witness (c1, c2) for every realizable label pattern.

    At a fixed c1, sweeping c2 across the distinct nu values produces
    every realizable cut: the pattern labels +1 exactly the functions
    with nu strictly above the cut, so tied values always share a label.
    """
    profiles = _profiles(kernel, fs, mu)
    critical = _critical_from_profiles(profiles)
    found: dict[tuple[int, ...], tuple[Fraction, Fraction]] = {}
    for c1 in critical.probes:
        values = [p.evaluate(c1) for p in profiles]
        cuts = sorted(set(values), reverse=True)
        # One threshold per distinct value (that value lands on -1), plus
        # a cut below the minimum that labels everything +1.
        cuts.append(cuts[-1] - 1)
        for threshold in cuts:
            labels = tuple(1 if v > threshold else -1 for v in values)
            found.setdefault(labels, (c1, -threshold))
    return found


def enumerate_dichotomies(
    kernel: GroupFunction, fs: Sequence[GroupFunction], mu: Measure
) -> set[Dichotomy]:
    """The exact set of label patterns realizable by any rational (c1, c2)."""
    found = _witnesses(kernel, fs, mu)
    m = len(fs)
    n = fs[0].group.order
    assert len(found) <= (m + m * (m - 1) // 2) * (m * n + 1)
    return {Dichotomy(labels) for labels in found}


def is_shattered(
    kernel: GroupFunction, fs: Sequence[GroupFunction], mu: Measure
) -> ShatterCertificate:
    """Certificate covering all 2^m label patterns.

    Every witness is re-verified through classify(); a witness that
    failed re-verification would mean an internal inconsistency, so it
    raises instead of being silently dropped.
    """
    m = len(fs)
    found = _witnesses(kernel, fs, mu)
    entries: list[DichotomyEntry] = []
    for labels in product((-1, 1), repeat=m):
        if labels in found:
            c1, c2 = found[labels]
            for k, f in enumerate(fs):
                got = classify(kernel, f, mu, c1, c2)
                if got != labels[k]:
                    raise AssertionError(
                        f"witness ({c1}, {c2}) for {labels} fails on "
                        f"function {k}: classify returned {got}"
                    )
            entries.append(DichotomyEntry(labels, "witnessed", c1, c2))
        else:
            entries.append(DichotomyEntry(labels, "unreachable"))
    shattered = all(e.status == "witnessed" for e in entries)
    return ShatterCertificate(m=m, entries=tuple(entries), shattered=shattered)


def order_set(
    kernel: GroupFunction, fs: Sequence[GroupFunction], mu: Measure
) -> OrderSet:
    """Every ranking the nu values attain over all bias values."""
    profiles = _profiles(kernel, fs, mu)
    critical = _critical_from_profiles(profiles)
    seen: dict[Ranking, None] = {}
    for c1 in critical.probes:
        values = [p.evaluate(c1) for p in profiles]
        seen.setdefault(ranking_of_values(values))
    return OrderSet(len(profiles), tuple(seen))


def check_order_criterion(
    kernel: GroupFunction, fs: Sequence[GroupFunction], mu: Measure
) -> bool:
    """Whether the attained rankings contain a complete set of orders.

    Equivalent to is_shattered(...).shattered.
    """
    return is_complete(order_set(kernel, fs, mu))


@dataclass(frozen=True)
class VCSearchResult:
    max_size: int
    subset: tuple[int, ...]
    certificate: Optional[ShatterCertificate]
    exhausted: bool  # False when the budget cut the search short
    tested: int


def vc_search(
    kernel: GroupFunction,
    candidates: Sequence[GroupFunction],
    mu: Measure,
    m_cap: int,
    budget: int = 100_000,
) -> VCSearchResult:
    """Largest shattered subset of the candidates, sizes ascending.

    Subsets of each size are tried in lexicographic index order; if no
    subset of some size shatters, no larger one can (shattering passes
    to subsets), so the search stops early.
    """
    if m_cap > len(candidates):
        raise ValueError(
            f"m_cap {m_cap} exceeds the {len(candidates)} candidates"
        )
    best_size = 0
    best_subset: tuple[int, ...] = ()
    best_cert: Optional[ShatterCertificate] = None
    tested = 0
    for size in range(1, m_cap + 1):
        found_at_size = False
        for combo in combinations(range(len(candidates)), size):
            if tested >= budget:
                return VCSearchResult(
                    best_size, best_subset, best_cert, False, tested
                )
            tested += 1
            cert = is_shattered(kernel, [candidates[i] for i in combo], mu)
            if cert.shattered:
                best_size, best_subset, best_cert = size, combo, cert
                found_at_size = True
                break
        if not found_at_size:
            break
    return VCSearchResult(best_size, best_subset, best_cert, True, tested)
