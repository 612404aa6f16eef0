import pytest

from lefschetz.ideals import MonomialIdeal, family_ideal, power_family
from lefschetz.monomial import Monomial, monomials_of_degree, parse_monomial
from lefschetz.quotient import basis_split, build_quotient, reduced_quotient
from lefschetz.sequences import IntSequence


def brute_hilbert(ideal):
    out, d = [], 0
    while True:
        count = sum(1 for m in monomials_of_degree(ideal.n, d) if not ideal.contains(m))
        if count == 0:
            return IntSequence(out)
        out.append(count)
        d += 1


@pytest.mark.parametrize("ideal", [family_ideal(4, 2, 4), power_family(3, 4), family_ideal(6, 1, 5)])
def test_hilbert_matches_brute_force(ideal):
    assert build_quotient(ideal).hilbert == brute_hilbert(ideal)


def test_example_values():
    q = build_quotient(family_ideal(5, 1, 3))
    assert q.hilbert.to_list() == [1, 5, 8, 5, 1]
    assert q.socle_degree == 4 and q.total_dimension == 20


def test_basis_is_revlex_descending_and_indexed():
    q = build_quotient(family_ideal(4, 2, 4))
    for k in range(q.socle_degree + 1):
        b = q.basis(k)
        assert list(b) == sorted(b, reverse=True)
        for pos, m in enumerate(b):
            assert q.position(k, m) == pos
    assert q.position(1, parse_monomial("x1^2", 4)) is None
    assert q.basis(99) == ()


def test_non_artinian_rejected():
    with pytest.raises(ValueError):
        build_quotient(MonomialIdeal(2, [parse_monomial("x1^2", 2)]))


def test_split_basis_and_reduced_quotient():
    q = build_quotient(family_ideal(5, 2, 4))
    qbar = reduced_quotient(q)
    assert qbar.n == 4
    for k in range(q.socle_degree + 1):
        free, with_last = basis_split(q, k)
        assert len(free) == qbar.dim(k)
        assert len(with_last) == qbar.dim(k - 1)
        assert all(m.exponents[-1] == 1 for m in with_last)


def test_split_requires_isolated_square():
    q = build_quotient(family_ideal(4, 2, 4))  # x4 appears in x1x4, x2x4
    with pytest.raises(ValueError):
        basis_split(q, 1)
