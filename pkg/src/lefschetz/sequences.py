"""Finitely supported integer sequences and shape predicates on Hilbert functions."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb
from typing import Iterable, Iterator


class IntSequence:
    """Integer sequence indexed from 0, read as zero outside its stored range.

    Indexing never raises: ``s[-1]`` and ``s[len(s)]`` are both 0. Trailing
    zeros are dropped on construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntSequence):
            return self.coeffs == other.coeffs
        if isinstance(other, (tuple, list)):
            return self.coeffs == IntSequence(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntSequence({list(self.coeffs)})"

    @property
    def degree(self) -> int:
        """Index of the last non-zero entry (the socle degree for Hilbert functions)."""
        return len(self.coeffs) - 1

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def convolve(a: IntSequence, b: IntSequence) -> IntSequence:
    out = [0] * max(len(a) + len(b) - 1, 0)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return IntSequence(out)


def shift_and_add(s: IntSequence) -> IntSequence:
    """Coefficients of (1 + t) * s(t)."""
    return IntSequence(s[k - 1] + s[k] for k in range(len(s) + 1))


def _check_ij(n: int, i: int, j: int) -> None:
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got n={n}, i={i}, j={j}")


def closed_form_hs(n: int, i: int, j: int) -> IntSequence:
    """Expanded (1+t)^(n-j) * (1 + j t + (j-i-1) t^2)."""
    _check_ij(n, i, j)
    binom = IntSequence(comb(n - j, k) for k in range(n - j + 1))
    return convolve(binom, IntSequence([1, j, j - i - 1]))


def is_mid_heavy(s: IntSequence) -> bool:
    """Zero-padded comparison propagation: s[p] <= s[q] forces s[p-1] <= s[q+1]
    and s[p] >= s[q] forces s[p-1] >= s[q+1] for every p < q.

    Pairs with p <= -1 behave like p = -1 and pairs with q >= len like
    q = len, so the finite window below is exhaustive.
    """
    L = len(s)
    for p in range(-1, L):
        for q in range(p + 1, L + 1):
            a, b = s[p], s[q]
            if a <= b and not s[p - 1] <= s[q + 1]:
                return False
            if a >= b and not s[p - 1] >= s[q + 1]:
                return False
    return True


def _check_hilbert_shape(s: IntSequence) -> None:
    if s[0] < 1:
        raise ValueError(f"Hilbert-type sequence must start with a positive entry: {s}")
    if any(x <= 0 for x in s):
        raise ValueError(f"Hilbert-type sequence must have gapless positive support: {s}")


def is_class_H(s: IntSequence) -> bool:
    """Lindsey's class: one of two interleaving chains about the socle degree D."""
    _check_hilbert_shape(s)
    D = s.degree
    half = range(1, D // 2 + 1)
    first = all(s[i - 1] <= s[D - i] <= s[i] for i in half)
    second = all(s[D - i + 1] <= s[i] <= s[D - i] for i in half)
    return first or second


def is_unimodal(s: IntSequence) -> bool:
    c = s.coeffs
    k = 0
    while k + 1 < len(c) and c[k] <= c[k + 1]:
        k += 1
    while k + 1 < len(c) and c[k] >= c[k + 1]:
        k += 1
    return k >= len(c) - 1


def is_log_concave(s: IntSequence) -> bool:
    return all(s[k] * s[k] >= s[k - 1] * s[k + 1] for k in range(1, len(s) - 1))


def is_symmetric(s: IntSequence) -> bool:
    return s.coeffs == s.coeffs[::-1]


@dataclass(frozen=True)
class ShapeReport:
    unimodal: bool
    log_concave: bool
    symmetric: bool
    mid_heavy: bool
    class_H: bool | None

    def to_json(self) -> dict:
        return asdict(self)


def shape_report(s: IntSequence) -> ShapeReport:
    """All shape predicates at once; ``class_H`` is None off Hilbert-type input."""
    if any(x < 0 for x in s):
        raise ValueError("shape predicates need non-negative entries")
    try:
        class_h = is_class_H(s)
    except ValueError:
        class_h = None
    return ShapeReport(
        unimodal=is_unimodal(s),
        log_concave=is_log_concave(s),
        symmetric=is_symmetric(s),
        mid_heavy=is_mid_heavy(s),
        class_H=class_h,
    )


def quadratic_discriminant(i: int, j: int) -> int:
    """Discriminant of 1 + j t + (j-i-1) t^2, equal to (j-2)^2 + 4i."""
    if not 1 <= i < j:
        raise ValueError("need 1 <= i < j")
    disc = j * j - 4 * (j - i - 1)
    assert disc == (j - 2) ** 2 + 4 * i
    return disc
