from itertools import product

import pytest
from hypothesis import given, strategies as st

from lefschetz.sequences import (
    IntSequence,
    closed_form_hs,
    convolve,
    is_class_H,
    is_log_concave,
    is_mid_heavy,
    is_symmetric,
    is_unimodal,
    quadratic_discriminant,
    shape_report,
    shift_and_add,
)


def mid_heavy_oracle(s, pad=4):
    """Definition read literally over a generous zero-padded window."""
    L = len(s)
    idx = range(-pad, L + pad)
    for p in idx:
        for q in idx:
            if p >= q or not (0 <= p < L or 0 <= q < L):
                continue
            if s[p] <= s[q] and not s[p - 1] <= s[q + 1]:
                return False
            if s[p] >= s[q] and not s[p - 1] >= s[q + 1]:
                return False
    return True


def S(*xs):
    return IntSequence(xs)


def test_padding_and_trailing_zeros():
    s = S(1, 2, 0, 0)
    assert len(s) == 2 and s[-1] == 0 and s[5] == 0 and s == S(1, 2)


def test_closed_form_examples():
    assert closed_form_hs(5, 1, 3) == S(1, 5, 8, 5, 1)
    assert closed_form_hs(3, 1, 2) == S(1, 3, 2)
    assert closed_form_hs(5, 1, 4) == S(1, 5, 6, 2)
    with pytest.raises(ValueError):
        closed_form_hs(3, 3, 3)


def test_shift_and_add_examples():
    assert shift_and_add(S(1, 3, 1)) == S(1, 4, 4, 1)
    assert shift_and_add(S(1)) == S(1, 1)


def test_iterated_shift_reproduces_closed_form():
    for n in range(2, 9):
        for j in range(2, n + 1):
            for i in range(1, j):
                s = S(1, j, j - i - 1)
                for _ in range(n - j):
                    s = shift_and_add(s)
                assert s == closed_form_hs(n, i, j)


def test_mid_heavy_examples():
    assert is_mid_heavy(S(1, 3, 1))
    assert not is_mid_heavy(S(1, 1, 1))
    assert is_mid_heavy(S(1, 5, 8, 5, 1))


def test_class_H_examples():
    assert is_class_H(S(1, 1, 1))
    assert is_class_H(S(1, 4, 1))
    assert not is_class_H(S(1, 3, 1, 3, 1))
    with pytest.raises(ValueError):
        is_class_H(S(1, 0, 1))
    with pytest.raises(ValueError):
        is_class_H(S(0, 1))


def test_shape_report_examples():
    r = shape_report(closed_form_hs(5, 1, 4))
    assert (r.symmetric, r.unimodal, r.log_concave) == (False, True, True)
    r = shape_report(closed_form_hs(5, 1, 3))
    assert all(r.to_json().values())
    assert shape_report(S(1, 0, 1)).class_H is None
    with pytest.raises(ValueError):
        shape_report(S(1, -1))


def test_unimodal_and_log_concave_basics():
    assert not is_unimodal(S(1, 3, 1, 3))
    assert is_unimodal(S(2, 2, 2))
    assert not is_log_concave(S(1, 1, 3))
    assert is_symmetric(S(1, 2, 1)) and not is_symmetric(S(1, 2))


def test_discriminant():
    for j in range(2, 10):
        for i in range(1, j):
            assert quadratic_discriminant(i, j) == (j - 2) ** 2 + 4 * i > 0


def test_window_agrees_with_literal_definition():
    for L in range(1, 5):
        for t in product(range(4), repeat=L):
            s = IntSequence(t)
            assert is_mid_heavy(s) == mid_heavy_oracle(s), t


seqs = st.lists(st.integers(0, 9), min_size=1, max_size=8)


@given(seqs, seqs)
def test_convolution_commutes(a, b):
    assert convolve(IntSequence(a), IntSequence(b)) == convolve(IntSequence(b), IntSequence(a))


@given(seqs)
def test_shift_and_add_is_convolution_by_one_plus_t(a):
    assert shift_and_add(IntSequence(a)) == convolve(IntSequence(a), S(1, 1))


@given(seqs)
def test_mid_heavy_matches_oracle(a):
    s = IntSequence(a)
    assert is_mid_heavy(s) == mid_heavy_oracle(s)


@given(seqs)
def test_mid_heavy_preserved_and_implies_class_H(a):
    s = IntSequence(a)
    if len(s) == 0 or not is_mid_heavy(s):
        return
    assert is_mid_heavy(shift_and_add(s))
    assert is_class_H(s)
