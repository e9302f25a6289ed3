"""Complete sets of orders and the subset maps that build them.

A ranking "separates" a subset A of [m] when every element of A is ranked
strictly below every element of the complement.  A set of rankings is
complete when every one of the 2^m subsets is separated by some strict
ranking in the set.  This module constructs a complete set of exactly
C(m, floor(m/2)) rankings — the smallest possible — by peeling subsets
one element at a time with a family of maps F: S(q, m) -> S(q-1, m).

Subsets of [m] = {1, ..., m} are bitmasks: bit i-1 stands for element i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .classifier import Ranking


def mask_from_elements(elements) -> int:
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def mask_elements(mask: int) -> list[int]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def _check_subset(mask: int, q: int, m: int, where: str) -> None:
    if m < 1 or not 0 <= q <= m:
        raise ValueError(f"{where}: need 0 <= q <= m with m >= 1, got q={q}, m={m}")
    if mask >> m:
        raise ValueError(f"{where}: mask {mask:#x} has elements above {m}")
    if mask.bit_count() != q:
        raise ValueError(
            f"{where}: mask has {mask.bit_count()} elements, expected {q}"
        )


def f_map_base(q: int, mask: int) -> int:
    """The peeling map S(q, 2q-1) -> S(q-1, 2q-1); a bijection.

    Removes j, the largest element of A whose successor (within the
    universe) is missing from A, then recurses on the gap-closed copy of
    the remainder.  The one set with no such j is the suffix interval
    {q, ..., 2q-1}, which loses its minimum.
    """
    m = 2 * q - 1
    _check_subset(mask, q, m, "f_map_base")
    if q == 1:
        return 0
    j = None
    for a in range(m - 1, 0, -1):  # a+1 must stay inside the universe
        if mask & (1 << (a - 1)) and not mask & (1 << a):
            j = a
            break
    if j is None:
        # mask is {q, ..., 2q-1}: drop its minimum.
        return mask & ~(1 << (q - 1))
    # Close the two-slot gap {j, j+1} and recurse one size down.
    inner = 0
    rest = mask & ~(1 << (j - 1))
    for a in mask_elements(rest):
        inner |= 1 << ((a - 1) if a < j else (a - 3))
    image = f_map_base(q - 1, inner)
    lifted = 0
    for b in mask_elements(image):
        lifted |= 1 << ((b - 1) if b < j else (b + 1))
    return lifted | (1 << (j - 1))


def f_map(q: int, m: int, mask: int) -> int:
    """The general peeling map S(q, m) -> S(q-1, m) with F(A) a subset of A.

    Injective when C(m, q) <= C(m, q-1), surjective when C(m, q) >=
    C(m, q-1), bijective at m = 2q-1.
    """
    _check_subset(mask, q, m, "f_map")
    if q < 1:
        raise ValueError("f_map needs a nonempty subset")
    if q == 1:
        return 0
    if m == 2 * q - 1:
        return f_map_base(q, mask)
    top = 1 << (m - 1)
    if mask & top:
        return f_map(q - 1, m - 1, mask & ~top) | top
    return f_map(q, m - 1, mask)


def peel_chain(mask: int, m: int) -> list[int]:
    """The descending chain A, F(A), F(F(A)), ..., empty set."""
    chain = [mask]
    q = mask.bit_count()
    while q > 0:
        mask = f_map(q, m, mask)
        q -= 1
        chain.append(mask)
    return chain


def sigma_tilde(mask: int, m: int) -> dict[int, int]:
    """Rank each element of A by the peel step that removes it.

    The element dropped first gets rank 1; survivors of k peels always
    rank above everything already dropped.
    """
    q = mask.bit_count()
    _check_subset(mask, q, m, "sigma_tilde")
    if q == 0:
        raise ValueError("sigma_tilde needs a nonempty subset")
    ranks: dict[int, int] = {}
    cur = mask
    for k in range(1, q + 1):
        nxt = f_map(cur.bit_count(), m, cur)
        dropped = cur & ~nxt
        if dropped.bit_count() != 1 or nxt & ~cur:
            raise AssertionError(
                f"peeling map broke the chain at step {k} for mask {mask:#x}"
            )
        ranks[mask_elements(dropped)[0]] = k
        cur = nxt
    return ranks


@dataclass(frozen=True)
class OrderSet:
    """A collection of rankings of [m]."""

    m: int
    rankings: tuple[Ranking, ...]

    def __post_init__(self):
        for r in self.rankings:
            if len(r.ranks) != self.m:
                raise ValueError(
                    f"ranking {r.ranks} does not have length m={self.m}"
                )

    def strict_rankings(self) -> list[Ranking]:
        return [r for r in self.rankings if r.is_strict()]


def separated_masks(ranking: Ranking) -> set[int]:
    """All subsets this ranking places strictly below their complement.

    For a strict ranking these are exactly its m+1 rank prefixes; tied
    rankings never separate anything beyond the trivial subsets.
    """
    m = len(ranking.ranks)
    out = {0, (1 << m) - 1}
    if not ranking.is_strict():
        return out
    by_rank = sorted(range(m), key=lambda i: ranking.ranks[i])
    acc = 0
    for i in by_rank:
        acc |= 1 << i
        out.add(acc)
    return out


def is_complete(order_set: OrderSet) -> bool:
    """Whether every subset of [m] is separated by some strict ranking.

    The empty set and [m] count as separated by any ranking at all.
    """
    if not order_set.rankings:
        return False
    m = order_set.m
    covered: set[int] = {0, (1 << m) - 1}
    for r in order_set.rankings:
        covered |= separated_masks(r)
    return all(mask in covered for mask in range(1 << m))


def completeness_lower_bound(m: int) -> int:
    """No complete set has fewer than C(m, floor(m/2)) rankings.

    A strict ranking separates exactly one subset of size floor(m/2)
    (its bottom prefix), so the middle layer alone forces this many.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    return comb(m, m // 2)


def _ranking_for(mask: int, m: int) -> Ranking:
    """Strict ranking that separates `mask` and its whole peel chain.

    Elements of A occupy ranks 1..|A| in reverse peel order (the longest
    survivor ranks lowest), so every bottom prefix of the ranking is a
    chain set.  The complement occupies the top ranks, mirrored the same
    way.
    """
    s = mask.bit_count()
    ranks = [0] * m
    if s:
        st = sigma_tilde(mask, m)
        for a, k in st.items():
            ranks[a - 1] = s + 1 - k
    comp = ((1 << m) - 1) & ~mask
    csize = comp.bit_count()
    if csize:
        stc = sigma_tilde(comp, m)
        for b, k in stc.items():
            ranks[b - 1] = s + (csize + 1 - k)
    return Ranking(tuple(ranks))


def build_complete_orders(m: int) -> OrderSet:
    """A complete set of orders of the minimum size C(m, floor(m/2)).

    Walk the subset layers from size m down to the middle; any subset not
    separated yet gets its own ranking, which also separates the entire
    peel chain hanging below it.  Below the middle layer the chains cover
    everything, because the peeling maps are surjective there.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    rankings: list[Ranking] = []
    separated: set[int] = set()
    for size in range(m, (m + 1) // 2 - 1, -1):
        layer = sorted(
            sum(1 << (e - 1) for e in combo)
            for combo in combinations(range(1, m + 1), size)
        )
        for mask in layer:
            if mask in separated:
                continue
            ranking = _ranking_for(mask, m)
            assert ranking.is_strict()
            rankings.append(ranking)
            separated.update(peel_chain(mask, m))
    assert len(rankings) == comb(m, m // 2)
    return OrderSet(m, tuple(rankings))
