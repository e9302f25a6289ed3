"""Peeling maps and minimal complete sets of orders."""

from __future__ import annotations

from itertools import combinations
from math import comb

import pytest

from gshatter.classifier import Ranking
from gshatter.orders import (
    OrderSet,
    build_complete_orders,
    completeness_lower_bound,
    f_map,
    f_map_base,
    is_complete,
    mask_elements,
    mask_from_elements,
    peel_chain,
    separated_masks,
    sigma_tilde,
)


def subsets_of_size(q: int, m: int) -> list[int]:
    return [mask_from_elements(c) for c in combinations(range(1, m + 1), q)]


class TestMasks:
    def test_round_trip(self):
        for elems in ([1], [2, 5], [1, 2, 3], [7]):
            assert mask_elements(mask_from_elements(elems)) == elems

    def test_zero_based_rejected(self):
        with pytest.raises(ValueError):
            mask_from_elements([0, 1])


class TestBaseMap:
    def test_q2_table(self):
        # On the universe {1,2,3}: {1,2} -> {2}, {1,3} -> {1}, {2,3} -> {3}.
        assert f_map_base(2, mask_from_elements([1, 2])) == mask_from_elements([2])
        assert f_map_base(2, mask_from_elements([1, 3])) == mask_from_elements([1])
        assert f_map_base(2, mask_from_elements([2, 3])) == mask_from_elements([3])

    def test_q1_singleton_to_empty(self):
        assert f_map_base(1, mask_from_elements([1])) == 0

    def test_suffix_interval_loses_minimum(self):
        # {3,4,5} in the universe {1,...,5} has no removable pair.
        assert f_map_base(3, mask_from_elements([3, 4, 5])) == mask_from_elements(
            [4, 5]
        )

    @pytest.mark.parametrize("q", range(1, 7))
    def test_bijective(self, q):
        m = 2 * q - 1
        images = [f_map_base(q, a) for a in subsets_of_size(q, m)]
        assert sorted(images) == sorted(subsets_of_size(q - 1, m))

    def test_wrong_cardinality_rejected(self):
        with pytest.raises(ValueError):
            f_map_base(2, mask_from_elements([1]))


class TestGeneralMap:
    def test_reduces_to_base(self):
        assert f_map(2, 3, mask_from_elements([1, 3])) == mask_from_elements([1])

    def test_containment_exhaustive(self):
        for m in range(1, 11):
            for q in range(1, m + 1):
                for a in subsets_of_size(q, m):
                    image = f_map(q, m, a)
                    assert image & ~a == 0
                    assert image.bit_count() == q - 1

    def test_injective_and_surjective_regimes(self):
        for m in range(1, 9):
            for q in range(1, m + 1):
                images = [f_map(q, m, a) for a in subsets_of_size(q, m)]
                if comb(m, q) <= comb(m, q - 1):
                    assert len(set(images)) == len(images)
                if comb(m, q) >= comb(m, q - 1):
                    assert set(images) == set(subsets_of_size(q - 1, m))

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            f_map(0, 3, 0)


class TestPeeling:
    def test_chain_shape(self):
        m, a = 6, mask_from_elements([2, 3, 6])
        chain = peel_chain(a, m)
        assert len(chain) == 4
        assert chain[0] == a and chain[-1] == 0
        for big, small in zip(chain, chain[1:]):
            assert small & ~big == 0
            assert big.bit_count() - small.bit_count() == 1

    def test_sigma_tilde_tracks_survivors(self):
        for m in range(1, 11):
            for q in range(1, m + 1):
                for a in subsets_of_size(q, m):
                    st = sigma_tilde(a, m)
                    assert sorted(st.values()) == list(range(1, q + 1))
                    chain = peel_chain(a, m)
                    for k in range(q + 1):
                        survivors = mask_from_elements(
                            [e for e, rank in st.items() if rank > k]
                        )
                        assert survivors == chain[k]

    def test_sigma_tilde_rejects_empty(self):
        with pytest.raises(ValueError):
            sigma_tilde(0, 3)


class TestSeparation:
    def test_prefixes_of_strict_ranking(self):
        r = Ranking((2, 3, 1))  # element 3 lowest, then 1, then 2
        assert separated_masks(r) == {
            0,
            mask_from_elements([3]),
            mask_from_elements([1, 3]),
            mask_from_elements([1, 2, 3]),
        }

    def test_tied_ranking_separates_only_trivial(self):
        assert separated_masks(Ranking((1, 1))) == {0, 3}

    def test_single_ranking_incomplete_at_m2(self):
        assert not is_complete(OrderSet(2, (Ranking((1, 2)),)))
        assert is_complete(OrderSet(2, (Ranking((1, 2)), Ranking((2, 1)))))

    def test_empty_set_incomplete(self):
        assert not is_complete(OrderSet(2, ()))


class TestCompleteOrders:
    def test_lower_bound_values(self):
        assert completeness_lower_bound(1) == 1
        assert completeness_lower_bound(4) == 6
        assert completeness_lower_bound(6) == 20

    def test_m1_and_m2(self):
        assert build_complete_orders(1).rankings == (Ranking((1,)),)
        assert {r.ranks for r in build_complete_orders(2).rankings} == {
            (1, 2),
            (2, 1),
        }

    @pytest.mark.parametrize("m", range(1, 9))
    def test_minimal_and_complete(self, m):
        orders = build_complete_orders(m)
        assert len(orders.rankings) == completeness_lower_bound(m)
        assert is_complete(orders)

    @pytest.mark.parametrize("m", range(2, 9))
    def test_middle_prefixes_all_distinct(self, m):
        # Minimality is tight: each ranking is the unique separator of its
        # bottom floor(m/2)-prefix, so those prefixes must enumerate the
        # whole middle layer.
        orders = build_complete_orders(m)
        prefixes = set()
        for r in orders.rankings:
            by_rank = sorted(range(m), key=lambda i: r.ranks[i])
            prefixes.add(sum(1 << i for i in by_rank[: m // 2]))
        assert len(prefixes) == comb(m, m // 2)

    def test_m0_rejected(self):
        with pytest.raises(ValueError):
            build_complete_orders(0)
