"""Sparse exact polynomials, the differentiation action and inverse systems.

``R = k[x_1..x_n]`` acts on ``S = k[X_1..X_n]`` by x_k o F = dF/dX_k (plain
partial derivatives, not contraction). All coefficients are rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .ideals import MonomialIdeal, power_family
from .linalg import QQ, ExactMatrix, rank
from .monomial import Monomial, format_monomial, revlex_key
from .quotient import build_quotient


class Poly:
    """Polynomial as a map exponent-tuple -> non-zero Fraction."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, object] | None = None):
        self.n = n
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent {exps} not in {n} variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, n: int, c) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, k: int) -> "Poly":
        """x_(k+1) (``k`` is 0-based)."""
        e = [0] * n
        e[k] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Poly":
        return cls(m.n, {m.exponents: c})

    @classmethod
    def linear(cls, n: int, coeffs: Iterable) -> "Poly":
        return sum((cls.var(n, k) * c for k, c in enumerate(coeffs)), cls(n))

    def _check(self, other: "Poly") -> None:
        if self.n != other.n:
            raise ValueError(f"ambient size mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.n, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = Poly.constant(self.n, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.n, other)
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def leading(self) -> tuple[tuple, Fraction]:
        """Leading term under degree-then-revlex."""
        e = max(self.terms, key=lambda x: revlex_key(Monomial(x)))
        return e, self.terms[e]

    def substitute(self, images: list["Poly"]) -> "Poly":
        """Replace variable k by ``images[k]`` (all images share one ambient n)."""
        if len(images) != self.n:
            raise ValueError("need one image per variable")
        m = images[0].n
        out = Poly(m)
        for e, c in self.terms.items():
            term = Poly.constant(m, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            out = out + term
        return out

    def partial(self, k: int, times: int = 1) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[k] >= times:
                ne = e[:k] + (e[k] - times,) + e[k + 1:]
                out[ne] = c * (factorial(e[k]) // factorial(e[k] - times))
        return Poly(self.n, out)

    def reduce_mod(self, ideal: MonomialIdeal) -> "Poly":
        """Drop every term whose monomial lies in the monomial ideal."""
        if ideal.n != self.n:
            raise ValueError("ambient size mismatch")
        return Poly(self.n, {e: c for e, c in self.terms.items() if not ideal.contains(Monomial(e))})

    def to_text(self, var: str = "x") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda x: revlex_key(Monomial(x)), reverse=True):
            c = self.terms[e]
            mono = format_monomial(Monomial(e), var)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"Poly({self.to_text()!r})"


def divide_exact(f: Poly, g: Poly) -> Poly:
    """f / g by multivariate division on leading terms; raise unless exact."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(g)
    ge, gc = g.leading()
    rem = f
    quot = Poly(f.n)
    while not rem.is_zero():
        re_, rc = rem.leading()
        if any(a < b for a, b in zip(re_, ge)):
            raise ValueError("inexact division: leading term not divisible")
        term = Poly(f.n, {tuple(a - b for a, b in zip(re_, ge)): rc / gc})
        quot = quot + term
        rem = rem - term * g
    return quot


def apply_derivation(g: Poly, F: Poly) -> Poly:
    """g o F: each monomial x^b acts as the iterated partial d^b / dX^b."""
    g._check(F)
    out = Poly(F.n)
    for b, c in g.terms.items():
        term = F
        for k, times in enumerate(b):
            if times:
                term = term.partial(k, times)
            if term.is_zero():
                break
        out = out + term * c
    return out


def in_inverse_system(ideal: MonomialIdeal, F: Poly) -> bool:
    """True iff every minimal generator of ``ideal`` kills F."""
    if not F.is_homogeneous():
        raise ValueError("inverse-system membership expects a homogeneous form")
    return all(apply_derivation(Poly.monomial(g), F).is_zero() for g in ideal.generators)


def ell(n: int) -> Poly:
    return Poly.linear(n, [1] * n)


@dataclass(frozen=True)
class DualityRanks:
    primal_rank: int
    dual_rank: int

    @property
    def equal(self) -> bool:
        return self.primal_rank == self.dual_rank


def duality_rank(ideal: MonomialIdeal, i: int) -> DualityRanks:
    """Rank of l : A_i -> A_(i+1) against l o - : (I^-1)_(i+1) -> (I^-1)_i.

    The dual side is assembled by differentiating the dual basis monomials
    X^a (x^a standard) and reading off coordinates; the primal side by
    multiplying and discarding terms in the ideal.
    """
    ideal.require_artinian()
    q = build_quotient(ideal)
    n = ideal.n
    lin = ell(n)

    src, dst = q.basis(i), q.basis(i + 1)
    primal = ExactMatrix.zeros(len(dst), len(src))
    for col, a in enumerate(src):
        image = (lin * Poly.monomial(a)).reduce_mod(ideal)
        for e, c in image.terms.items():
            primal.data[q.position(i + 1, Monomial(e)), col] = c

    dual = ExactMatrix.zeros(len(src), len(dst))
    for col, b in enumerate(dst):
        F = Poly.monomial(b)
        image = apply_derivation(lin, F)
        for e, c in image.terms.items():
            row = q.position(i, Monomial(e))
            if row is None:
                raise AssertionError("dual basis is not closed under differentiation")
            dual.data[row, col] = c
    return DualityRanks(rank(primal), rank(dual))


# ---------------------------------------------------------------- witnesses


def _fd_bivariate(d: int) -> Poly:
    y1, y2 = Poly.var(2, 0), Poly.var(2, 1)
    num = y1 ** (d + 1) - (-y2) ** (d + 1)
    return divide_exact(num, y1 + y2).partial(0).partial(1)


def witness_fd(d: int) -> Poly:
    """f_d in k[x1, x2, x3], a kernel element of l^3 : A_(d-2) -> A_(d+1)."""
    if d < 3:
        raise ValueError("d must be at least 3")
    x = [Poly.var(3, k) for k in range(3)]
    return _fd_bivariate(d).substitute([x[0] + x[1], x[2]])


def witness_fd_verifies(d: int) -> bool:
    f = witness_fd(d)
    return (ell(3) ** 3 * f).reduce_mod(power_family(3, d)).is_zero()


def identity_check(d: int) -> bool:
    """-(y1+y2)^3 f_d == (d-1)(y1^(d+1) - (-y2)^(d+1)) + (d+1)(y1^d y2 + y1 (-y2)^d)."""
    if d < 3:
        raise ValueError("d must be at least 3")
    y1, y2 = Poly.var(2, 0), Poly.var(2, 1)
    lhs = -((y1 + y2) ** 3) * _fd_bivariate(d)
    rhs = (y1 ** (d + 1) - (-y2) ** (d + 1)) * (d - 1) + (
        y1**d * y2 + y1 * (-y2) ** d
    ) * (d + 1)
    return lhs == rhs


def witness_n4(d: int) -> Poly:
    """(X1 - X2)^(d-1) (X3 - X4)^(d-1), a form of degree 2d-2 in S."""
    if d < 3:
        raise ValueError("d must be at least 3")
    X = [Poly.var(4, k) for k in range(4)]
    return (X[0] - X[1]) ** (d - 1) * (X[2] - X[3]) ** (d - 1)


@dataclass(frozen=True)
class N5Witness:
    d: int
    kernel_f: Poly
    perp_F: Poly

    def checks(self) -> dict[str, bool]:
        d = self.d
        ideal = power_family(5, d)
        lin = ell(5)
        return {
            "kernel_degree": self.kernel_f.is_homogeneous() and self.kernel_f.degree == 2 * d - 2,
            "kernel_nonzero_in_A": not self.kernel_f.reduce_mod(ideal).is_zero(),
            "l_times_f_in_I": (lin * self.kernel_f).reduce_mod(ideal).is_zero(),
            "perp_degree": self.perp_F.is_homogeneous() and self.perp_F.degree == 2 * d - 1,
            "perp_in_inverse_system": in_inverse_system(ideal, self.perp_F),
            "l_kills_perp": apply_derivation(lin, self.perp_F).is_zero(),
        }

    def verifies(self) -> bool:
        return all(self.checks().values())


def witness_n5(d: int) -> N5Witness:
    """Kernel element and inverse-system form showing l : A_(2d-2) -> A_(2d-1)
    is neither injective nor surjective for (x1,x2)^d + (x3^d, x4^d, x5^d)."""
    if d < 3:
        raise ValueError("d must be at least 3")
    x = [Poly.var(5, k) for k in range(5)]
    first = divide_exact((x[0] + x[1]) ** d - (-x[2]) ** d, x[0] + x[1] + x[2])
    second = divide_exact(x[3] ** d - (-x[4]) ** d, x[3] + x[4])
    q, r = divmod(d, 3)
    F = (x[0] - x[1]) ** (d - 1) * (x[2] - x[3]) ** q * (x[3] - x[4]) ** q * (x[4] - x[2]) ** (q + r)
    return N5Witness(d, first * second, F)
