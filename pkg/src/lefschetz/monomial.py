"""Exponent-vector monomials and the reverse lexicographic order.

Variables are 0-based internally and printed 1-based (``x1`` ... ``xn``).
"""

from __future__ import annotations

import re
from functools import total_ordering
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

LESS, EQUAL, GREATER = -1, 0, 1


@total_ordering
class Monomial:
    """An immutable monomial x^a in ``n`` variables.

    Ordering (``<``, ``>``) is degree first, then revlex within a degree.
    """

    __slots__ = ("exponents", "_hash")

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if not exps:
            raise ValueError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "_hash", hash(exps))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def var(cls, n: int, k: int, power: int = 1) -> "Monomial":
        """The monomial x_k^power, with ``k`` 0-based."""
        exps = [0] * n
        exps[k] = power
        return cls(exps)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def is_pure_power(self) -> bool:
        return sum(1 for e in self.exponents if e) == 1

    def support(self) -> tuple[int, ...]:
        return tuple(k for k, e in enumerate(self.exponents) if e)

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_same_n(self, other)
        return Monomial(a + b for a, b in zip(self.exponents, other.exponents))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; ``other`` must divide ``self``."""
        if not divides(other, self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(a - b for a, b in zip(self.exponents, other.exponents))

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return compare(self, other) == LESS

    def __repr__(self):
        return f"Monomial({format_monomial(self)!r})"

    def __str__(self):
        return format_monomial(self)


def _check_same_n(m1: Monomial, m2: Monomial) -> None:
    if m1.n != m2.n:
        raise ValueError(f"ambient size mismatch: {m1.n} vs {m2.n}")


def revlex_compare(m1: Monomial, m2: Monomial) -> int:
    """Compare two monomials of equal degree in revlex (x1 > x2 > ... > xn).

    m1 > m2 iff the last non-zero entry of exponents(m1) - exponents(m2) is
    negative. Returns ``LESS``, ``EQUAL`` or ``GREATER``.
    """
    _check_same_n(m1, m2)
    for a, b in zip(reversed(m1.exponents), reversed(m2.exponents)):
        if a != b:
            return GREATER if a < b else LESS
    return EQUAL


def compare(m1: Monomial, m2: Monomial) -> int:
    """Total order: degree first, then revlex."""
    _check_same_n(m1, m2)
    d1, d2 = m1.degree, m2.degree
    if d1 != d2:
        return GREATER if d1 > d2 else LESS
    return revlex_compare(m1, m2)


def divides(m1: Monomial, m2: Monomial) -> bool:
    _check_same_n(m1, m2)
    return all(a <= b for a, b in zip(m1.exponents, m2.exponents))


def revlex_key(m: Monomial) -> tuple:
    """Sort key that is ascending in the degree-then-revlex order."""
    # larger last exponent => smaller in revlex, so negate the reversed vector
    return (m.degree, tuple(-e for e in reversed(m.exponents)))


def sort_desc(monomials: Iterable[Monomial]) -> list[Monomial]:
    return sorted(monomials, key=revlex_key, reverse=True)


def monomials_of_degree(n: int, d: int, squarefree_only: bool = False) -> list[Monomial]:
    """All degree-``d`` monomials in ``n`` variables, descending in revlex."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if squarefree_only:
        pools = combinations(range(n), d)
    else:
        pools = combinations_with_replacement(range(n), d)
    out = []
    for combo in pools:
        exps = [0] * n
        for k in combo:
            exps[k] += 1
        out.append(Monomial(exps))
    return sort_desc(out)


_TERM = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, n: int | None = None) -> Monomial:
    """Parse ``x1^2*x3`` (or ``1``). Without ``n`` the largest index is used."""
    text = text.strip()
    powers: dict[int, int] = {}
    if text != "1":
        if not text:
            raise ValueError("empty monomial")
        for factor in text.split("*"):
            m = _TERM.match(factor.strip())
            if m is None:
                raise ValueError(f"cannot parse monomial factor {factor!r}")
            k = int(m.group(1))
            if k < 1:
                raise ValueError("variables are numbered from x1")
            powers[k] = powers.get(k, 0) + int(m.group(2) or 1)
    top = max(powers, default=1)
    if n is None:
        n = top
    elif top > n:
        raise ValueError(f"variable x{top} outside ambient n={n}")
    exps = [0] * n
    for k, e in powers.items():
        exps[k - 1] = e
    return Monomial(exps)


def format_monomial(m: Monomial, var: str = "x") -> str:
    parts = []
    for k, e in enumerate(m.exponents):
        if e == 1:
            parts.append(f"{var}{k + 1}")
        elif e > 1:
            parts.append(f"{var}{k + 1}^{e}")
    return "*".join(parts) if parts else "1"


def as_monomials(vectors: Iterable[Sequence[int]]) -> list[Monomial]:
    return [Monomial(v) for v in vectors]
