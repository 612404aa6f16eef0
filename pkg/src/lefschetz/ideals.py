"""Monomial ideals: the RLex quadratic families, higher-degree examples, graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .monomial import (
    GREATER,
    EQUAL,
    Monomial,
    divides,
    format_monomial,
    monomials_of_degree,
    parse_monomial,
    revlex_compare,
    sort_desc,
)


def minimalize(generators: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Unique minimal generating set, sorted descending (degree, then revlex)."""
    gens = sorted(set(generators), key=lambda m: m.degree)
    kept: list[Monomial] = []
    for g in gens:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sort_desc(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: tuple[Monomial, ...]

    def __init__(self, n: int, generators: Iterable[Monomial]):
        gens = list(generators)
        if n < 1:
            raise ValueError("ambient n must be positive")
        for g in gens:
            if g.n != n:
                raise ValueError(f"generator {g} does not live in {n} variables")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", minimalize(gens))

    def __len__(self) -> int:
        return len(self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    __contains__ = contains

    def pure_powers(self) -> dict[int, int]:
        """Variable index -> smallest e with x_k^e in the ideal."""
        out: dict[int, int] = {}
        for g in self.generators:
            if g.is_pure_power():
                (k,) = g.support()
                e = g.exponents[k]
                out[k] = min(e, out.get(k, e))
        return out

    def is_artinian(self) -> bool:
        return len(self.pure_powers()) == self.n

    def require_artinian(self) -> None:
        if not self.is_artinian():
            raise ValueError(f"ideal is not artinian: {self}")

    def add(self, *monomials: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.n, self.generators + tuple(monomials))

    def remove(self, m: Monomial) -> "MonomialIdeal":
        if m not in self.generators:
            raise ValueError(f"{m} is not a minimal generator")
        return MonomialIdeal(self.n, [g for g in self.generators if g != m])

    def to_text(self) -> str:
        return f"n={self.n}; " + ", ".join(format_monomial(g) for g in self.generators)

    def to_json(self) -> dict:
        return {"n": self.n, "gens": [list(g.exponents) for g in self.generators]}

    def __str__(self):
        return self.to_text()


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse ``n=4; x1^2, x2^2, x1*x2`` or the JSON form ``{"n":..,"gens":..}``."""
    text = text.strip()
    if text.startswith("{"):
        return ideal_from_json(json.loads(text))
    head, sep, body = text.partition(";")
    if not sep or not head.strip().startswith("n="):
        raise ValueError("ideal text must look like 'n=<int>; gen, gen, ...'")
    n = int(head.strip()[2:])
    gens = [parse_monomial(tok, n) for tok in body.split(",") if tok.strip()]
    return MonomialIdeal(n, gens)


def ideal_from_json(obj: dict) -> MonomialIdeal:
    n = int(obj["n"])
    return MonomialIdeal(n, [Monomial(v) for v in obj["gens"]])


def _check_ij(n: int, i: int, j: int) -> None:
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got n={n}, i={i}, j={j}")


def squares(n: int, e: int = 2) -> list[Monomial]:
    return [Monomial.var(n, k, e) for k in range(n)]


def rlex_generators(n: int, i: int, j: int) -> list[Monomial]:
    """Squarefree quadrics m >= x_i x_j in revlex, descending."""
    _check_ij(n, i, j)
    pivot = Monomial.var(n, i - 1) * Monomial.var(n, j - 1)
    return [
        m
        for m in monomials_of_degree(n, 2, squarefree_only=True)
        if revlex_compare(m, pivot) in (GREATER, EQUAL)
    ]


def family_ideal(n: int, i: int, j: int) -> MonomialIdeal:
    """(x_1^2, ..., x_n^2) + RLex(x_i x_j)."""
    return MonomialIdeal(n, squares(n) + rlex_generators(n, i, j))


def family_size(n: int, i: int, j: int) -> int:
    _check_ij(n, i, j)
    return n + comb(j - 1, 2) + i


def complete_intersection(n: int, e: int = 2) -> MonomialIdeal:
    return MonomialIdeal(n, squares(n, e))


def mu_to_family(n: int, mu: int) -> MonomialIdeal:
    """Quadratic monomial ideal with exactly ``mu`` generators and the SLP in char 0."""
    if not (n <= mu <= comb(n + 1, 2)):
        raise ValueError(f"mu={mu} outside [{n}, {comb(n + 1, 2)}]")
    if mu == n:
        return complete_intersection(n)
    i, j = mu_to_indices(n, mu)
    return family_ideal(n, i, j)


def mu_to_indices(n: int, mu: int) -> tuple[int, int]:
    extra = mu - n
    for j in range(2, n + 1):
        i = extra - comb(j - 1, 2)
        if 1 <= i < j:
            return i, j
    raise ValueError(f"no family member in {n} variables has {mu} generators")


@dataclass(frozen=True)
class SimpleGraph:
    vertices: int
    edges: frozenset[frozenset[int]]

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"loop or malformed edge {set(e)}")
            if not all(1 <= v <= self.vertices for v in e):
                raise ValueError(f"edge {set(e)} outside vertex range")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def neighbours(self, v: int) -> set[int]:
        return {w for e in self.edges if v in e for w in e if w != v}

    def isolated(self) -> list[int]:
        touched = set().union(*self.edges) if self.edges else set()
        return [v for v in range(1, self.vertices + 1) if v not in touched]

    def edge_ideal_generators(self) -> list[Monomial]:
        out = []
        for a, b in self.sorted_edges():
            out.append(Monomial.var(self.vertices, a - 1) * Monomial.var(self.vertices, b - 1))
        return sort_desc(out)


def graph_of_rlex(n: int, i: int, j: int) -> SimpleGraph:
    edges = frozenset(frozenset(k + 1 for k in m.support()) for m in rlex_generators(n, i, j))
    return SimpleGraph(n, edges)


def power_family(n: int, d: int) -> MonomialIdeal:
    """(x1, x2)^d + (x3^d, ..., xn^d) = (x1^d, ..., xn^d) + RLex(x1 x2^(d-1))."""
    if n < 3 or d < 3:
        raise ValueError("power_family needs n >= 3 and d >= 3")
    gens = []
    for a in range(d + 1):
        exps = [0] * n
        exps[0], exps[1] = a, d - a
        gens.append(Monomial(exps))
    gens += [Monomial.var(n, k, d) for k in range(2, n)]
    return MonomialIdeal(n, gens)


def sec5_cubic8() -> MonomialIdeal:
    n = 8
    extra = ["x1^2*x2", "x1*x2^2", "x1^2*x3", "x1*x2*x3", "x2^2*x3", "x1*x3^2"]
    return MonomialIdeal(n, squares(n, 3) + [parse_monomial(t, n) for t in extra])


SEC5_J_SPECIAL = ("x1^4*x2^2*x3^2", "x1^3*x2^3*x3^2")


def sec5_J() -> MonomialIdeal:
    n = 3
    return MonomialIdeal(n, squares(n, 8) + [parse_monomial(t, n) for t in SEC5_J_SPECIAL])


SPECIAL_KINDS = ("power_family", "sec5_cubic8", "sec5_J")


def special_ideal(kind: str, **params) -> MonomialIdeal:
    if kind == "power_family":
        return power_family(int(params["n"]), int(params["d"]))
    if params:
        raise ValueError(f"{kind} takes no parameters")
    if kind == "sec5_cubic8":
        return sec5_cubic8()
    if kind == "sec5_J":
        return sec5_J()
    raise ValueError(f"unknown special ideal kind {kind!r}")


def adjoin_power_variable(ideal: MonomialIdeal, e: int) -> MonomialIdeal:
    """Ideal of A tensor k[y]/(y^e): a new last variable with y^e adjoined."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    ideal.require_artinian()
    n = ideal.n + 1
    gens = [Monomial(g.exponents + (0,)) for g in ideal.generators]
    gens.append(Monomial.var(n, n - 1, e))
    return MonomialIdeal(n, gens)


def drop_last_variable(ideal: MonomialIdeal) -> MonomialIdeal:
    """Restrict to k[x_1..x_{n-1}]: keep generators free of x_n."""
    if ideal.n < 2:
        raise ValueError("need at least two variables")
    gens = [Monomial(g.exponents[:-1]) for g in ideal.generators if g.exponents[-1] == 0]
    return MonomialIdeal(ideal.n - 1, gens)


def named_fixture(spec: str) -> MonomialIdeal:
    """Resolve ``sec5_J``, ``sec5_cubic8``, ``family:n,i,j``, ``power:n,d``, ``ci:n[,e]``."""
    name, _, args = spec.partition(":")
    nums = [int(a) for a in args.split(",")] if args else []
    if name in ("sec5_J", "sec5_cubic8") and not nums:
        return special_ideal(name)
    if name == "family" and len(nums) == 3:
        return family_ideal(*nums)
    if name == "power" and len(nums) == 2:
        return power_family(*nums)
    if name == "ci" and len(nums) in (1, 2):
        return complete_intersection(*nums)
    raise ValueError(f"unknown fixture {spec!r}")
