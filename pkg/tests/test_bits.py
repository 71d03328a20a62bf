from hypothesis import given
from hypothesis import strategies as st

from nervecheck.bits import (bit_list, digits, from_digits, interval_mask,
                             mask_of, max_bit, min_bit, subsets_of,
                             subsets_with_min_max)


def test_roundtrip():
    assert mask_of([0, 1, 3]) == 0b1011
    assert bit_list(0b1011) == [0, 1, 3]
    assert digits(0b1011) == "013"
    assert from_digits("013") == 0b1011


def test_min_max():
    assert min_bit(0b1000) == 3
    assert max_bit(0b1011) == 3


def test_interval_mask():
    assert interval_mask(1, 3) == 0b1110
    assert interval_mask(2, 2) == 0b100
    assert interval_mask(3, 1) == 0


def test_subsets_with_min_max():
    got = list(subsets_with_min_max(0b11111, 0, 3))
    assert got == sorted(got)
    assert set(got) == {0b1001, 0b1011, 0b1101, 0b1111}
    assert list(subsets_with_min_max(0b11111, 2, 2)) == [0b100]
    assert list(subsets_with_min_max(0b10001, 0, 3)) == []


@given(st.integers(min_value=0, max_value=2**10 - 1))
def test_subsets_count(mask):
    subs = list(subsets_of(mask))
    assert len(subs) == 2 ** mask.bit_count()
    assert len(set(subs)) == len(subs)
