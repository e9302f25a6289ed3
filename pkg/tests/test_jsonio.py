"""Serialization round trips and atomic writes."""

from __future__ import annotations

from fractions import Fraction

import pytest

from gshatter.gfunc import GroupFunction
from gshatter.groups import build_group, find_order_two_element
from gshatter.jsonio import (
    certificate_from_json,
    certificate_to_json,
    fraction_from_str,
    fraction_to_str,
    function_family_from_json,
    function_family_to_json,
    group_function_from_json,
    group_function_to_json,
    order_set_from_json,
    order_set_to_json,
    read_json,
    sha256_of_file,
    synth_result_from_json,
    synth_result_to_json,
    write_json_atomic,
)
from gshatter.orders import build_complete_orders
from gshatter.shatter import is_shattered
from gshatter.synth import SynthConfig, synth_kernel


class TestFractions:
    @pytest.mark.parametrize(
        "value,text",
        [
            (Fraction(1, 2), "1/2"),
            (Fraction(-7, 3), "-7/3"),
            (Fraction(5), "5"),
            (Fraction(0), "0"),
            (Fraction(-4), "-4"),
        ],
    )
    def test_round_trip(self, value, text):
        assert fraction_to_str(value) == text
        assert fraction_from_str(text) == value

    @pytest.mark.parametrize("bad", ["", "a/b", "1/0", "1.5", "3/", None, 7])
    def test_malformed_rejected(self, bad):
        with pytest.raises(ValueError):
            fraction_from_str(bad)


class TestStructures:
    def test_group_function_round_trip(self):
        g = build_group("dihedral:3")
        f = GroupFunction.from_values(g, [Fraction(i - 2, 3) for i in range(6)])
        data = group_function_to_json(f)
        assert data["group"] == "dihedral:3"
        back = group_function_from_json(data)
        assert back.values == f.values
        assert back.group.label == g.label
        # reuse of a prebuilt group skips reconstruction
        assert group_function_from_json(data, g).group is g

    def test_family_round_trip(self):
        g = build_group("cyclic:4")
        fs = [
            GroupFunction.from_values(g, [i, 0, -i, Fraction(1, 2)])
            for i in range(3)
        ]
        back = function_family_from_json(function_family_to_json(fs))
        assert [f.values for f in back] == [f.values for f in fs]

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            function_family_to_json([])

    def test_order_set_round_trip(self):
        orders = build_complete_orders(4)
        back = order_set_from_json(order_set_to_json(orders))
        assert back == orders

    def test_certificate_round_trip(self):
        g = build_group("cyclic:2")
        k = GroupFunction.from_values(g, [1, 0])
        fs = [
            GroupFunction.from_values(g, [4, 0]),
            GroupFunction.from_values(g, [4, 0]),
        ]
        from gshatter.gfunc import counting_measure

        cert = is_shattered(k, fs, counting_measure(g))
        data = certificate_to_json(cert, group_label="cyclic:2")
        assert data["group"] == "cyclic:2"
        back = certificate_from_json(data)
        assert back == cert
        witnessed = [d for d in data["dichotomies"] if d["status"] == "witnessed"]
        unreachable = [d for d in data["dichotomies"] if d["status"] == "unreachable"]
        assert all("c1" in d and "c2" in d for d in witnessed)
        assert all("c1" not in d for d in unreachable)

    def test_synth_result_round_trip(self):
        group = build_group("cyclic:8")
        orders = build_complete_orders(2)
        g = find_order_two_element(group)
        result = synth_kernel(group, SynthConfig(m=2, g=g, orders=orders))
        data = synth_result_to_json(result)
        back = synth_result_from_json(data)
        # Groups are rebuilt, so compare via a second serialization pass.
        assert synth_result_to_json(back) == data


class TestFiles:
    def test_atomic_write_and_hash(self, tmp_path):
        target = tmp_path / "deep" / "nested" / "out.json"
        payload = {"b": [1, 2], "a": "1/2"}
        write_json_atomic(target, payload)
        assert read_json(target) == payload
        first = sha256_of_file(target)
        write_json_atomic(target, payload)
        assert sha256_of_file(target) == first  # byte-for-byte deterministic
        assert len(first) == 64

    def test_sorted_keys_and_trailing_newline(self, tmp_path):
        target = tmp_path / "out.json"
        write_json_atomic(target, {"z": 1, "a": 2})
        text = target.read_text()
        assert text.index('"a"') < text.index('"z"')
        assert text.endswith("\n")

    def test_no_temp_litter(self, tmp_path):
        write_json_atomic(tmp_path / "x.json", {"k": 1})
        assert [p.name for p in tmp_path.iterdir()] == ["x.json"]
