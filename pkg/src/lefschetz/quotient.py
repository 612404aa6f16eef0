"""Standard monomial bases and Hilbert functions of A = R/I for monomial I."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ideals import MonomialIdeal, drop_last_variable
from .monomial import Monomial, sort_desc
from .sequences import IntSequence


@dataclass(frozen=True)
class GradedQuotient:
    ideal: MonomialIdeal
    bases: tuple[tuple[Monomial, ...], ...]
    index: tuple[dict, ...] = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.ideal.n

    @property
    def socle_degree(self) -> int:
        return len(self.bases) - 1

    @property
    def hilbert(self) -> IntSequence:
        return IntSequence(len(b) for b in self.bases)

    def basis(self, k: int) -> tuple[Monomial, ...]:
        if 0 <= k < len(self.bases):
            return self.bases[k]
        return ()

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def position(self, k: int, m: Monomial) -> int | None:
        """Index of ``m`` inside B_k, or None if m is zero in A."""
        if 0 <= k < len(self.index):
            return self.index[k].get(m.exponents)
        return None

    @property
    def total_dimension(self) -> int:
        return sum(len(b) for b in self.bases)


def build_quotient(ideal: MonomialIdeal) -> GradedQuotient:
    """Enumerate every B_k up to the socle degree, each descending in revlex.

    B_{k+1} is generated from B_k by multiplying by each variable, which is
    enough because standard monomials are closed under division.
    """
    ideal.require_artinian()
    n = ideal.n
    bases: list[tuple[Monomial, ...]] = [(Monomial.one(n),)]
    while True:
        seen = set()
        nxt = []
        for m in bases[-1]:
            exps = m.exponents
            for k in range(n):
                e = exps[:k] + (exps[k] + 1,) + exps[k + 1:]
                if e in seen:
                    continue
                seen.add(e)
                cand = Monomial(e)
                if not ideal.contains(cand):
                    nxt.append(cand)
        if not nxt:
            break
        bases.append(tuple(sort_desc(nxt)))
    index = tuple({m.exponents: pos for pos, m in enumerate(b)} for b in bases)
    return GradedQuotient(ideal, tuple(bases), index)


def _require_split(ideal: MonomialIdeal) -> None:
    last = ideal.n - 1
    for g in ideal.generators:
        if g.exponents[last] and not (g.is_pure_power() and g.exponents[last] == 2):
            raise ValueError(
                f"basis split needs x{ideal.n}^2 as the only generator involving x{ideal.n}; found {g}"
            )
    if ideal.pure_powers().get(last) != 2:
        raise ValueError(f"basis split needs x{ideal.n}^2 in the ideal")


def basis_split(quotient: GradedQuotient, k: int) -> tuple[list[Monomial], list[Monomial]]:
    """Split B_k into monomials free of x_n and those equal to x_n * (free of x_n).

    Both parts keep the revlex order of B_k.
    """
    _require_split(quotient.ideal)
    last = quotient.n - 1
    free, with_last = [], []
    for m in quotient.basis(k):
        (with_last if m.exponents[last] else free).append(m)
    return free, with_last


def reduced_quotient(quotient: GradedQuotient) -> GradedQuotient:
    """The quotient in the first n-1 variables used by the basis split."""
    _require_split(quotient.ideal)
    return build_quotient(drop_last_variable(quotient.ideal))
