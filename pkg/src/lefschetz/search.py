"""Search for equigenerated monomial ideals with the SLP, and fixture checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .engine import LefschetzReport, check_slp, check_wlp
from .ideals import (
    SEC5_J_SPECIAL,
    MonomialIdeal,
    ideal_from_json,
    sec5_J,
    sec5_cubic8,
)
from .linalg import QQ, FieldSpec
from .monomial import Monomial, monomials_of_degree, parse_monomial

DEFAULT_PRIME = 32003
STRATEGIES = ("exhaustive", "random", "greedy")


@dataclass(frozen=True)
class SearchSpec:
    n: int
    d: int
    mu: int
    strategy: str = "exhaustive"
    seed: int | None = None
    max_trials: int = 1000
    field: FieldSpec = field(default_factory=lambda: FieldSpec(DEFAULT_PRIME))
    recertify: bool = False

    def __post_init__(self):
        if self.n < 3 or self.d < 3:
            raise ValueError("search needs n, d >= 3")
        top = comb(self.n + self.d - 1, self.d)
        if not self.n <= self.mu <= top:
            raise ValueError(f"mu={self.mu} outside [{self.n}, {top}]")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "random" and self.seed is None:
            raise ValueError("random strategy needs an explicit seed")


@dataclass(frozen=True)
class SearchCertificate:
    spec: SearchSpec
    ideal: MonomialIdeal | None
    rank_table: tuple[tuple[int, int, int], ...]
    trials: int
    recertified: bool | None = None

    @property
    def found(self) -> bool:
        return self.ideal is not None

    def to_json(self) -> dict:
        s = self.spec
        return {
            "n": s.n,
            "d": s.d,
            "mu": s.mu,
            "strategy": s.strategy,
            "seed": s.seed,
            "field": str(s.field),
            "found": self.found,
            "ideal": None if self.ideal is None else self.ideal.to_json(),
            "rank_table": [list(r) for r in self.rank_table],
            "trials": self.trials,
            "recertified_over_q": self.recertified,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchCertificate":
        spec = SearchSpec(
            n=obj["n"],
            d=obj["d"],
            mu=obj["mu"],
            strategy=obj["strategy"],
            seed=obj["seed"],
            field=FieldSpec.parse(obj["field"]),
        )
        ideal = None if obj["ideal"] is None else ideal_from_json(obj["ideal"])
        table = tuple(tuple(r) for r in obj["rank_table"])
        return cls(spec, ideal, table, obj["trials"], obj.get("recertified_over_q"))

    def reverify(self) -> bool:
        """Re-run the SLP check on the stored ideal alone and compare the rank table."""
        if self.ideal is None:
            return False
        rep = check_slp(self.ideal, self.spec.field)
        return rep.passed and tuple(rep.rank_table()) == self.rank_table


def _pure_powers(n: int, d: int) -> list[Monomial]:
    return [Monomial.var(n, k, d) for k in range(n)]


def _candidates(n: int, d: int) -> list[Monomial]:
    return [m for m in monomials_of_degree(n, d) if not m.is_pure_power()]


def _passes(ideal: MonomialIdeal, fld: FieldSpec) -> LefschetzReport | None:
    rep = check_slp(ideal, fld, stop_early=True, witness=False)
    return rep if rep.passed else None


def search(spec: SearchSpec) -> SearchCertificate:
    """First ideal (in the strategy's order) with ``mu`` generators of degree
    ``d`` that has the SLP, or an empty certificate."""
    n, d, extra = spec.n, spec.d, spec.mu - spec.n
    base = _pure_powers(n, d)
    pool = _candidates(n, d)
    trials = 0
    found = None

    if spec.strategy == "exhaustive":
        for combo in combinations(pool, extra):
            trials += 1
            ideal = MonomialIdeal(n, base + list(combo))
            if _passes(ideal, spec.field):
                found = ideal
                break
    elif spec.strategy == "random":
        rng = random.Random(spec.seed)
        seen = set()
        total = comb(len(pool), extra)
        while trials < spec.max_trials and len(seen) < total:
            pick = tuple(sorted(rng.sample(range(len(pool)), extra)))
            if pick in seen:
                continue
            seen.add(pick)
            trials += 1
            ideal = MonomialIdeal(n, base + [pool[k] for k in pick])
            if _passes(ideal, spec.field):
                found = ideal
                break
    else:
        # add the first candidate keeping the SLP; if none does, the first candidate
        chosen: list[Monomial] = []
        remaining = list(pool)
        for _ in range(extra):
            pick = None
            for m in remaining:
                if trials >= spec.max_trials:
                    break
                trials += 1
                if _passes(MonomialIdeal(n, base + chosen + [m]), spec.field):
                    pick = m
                    break
            pick = pick if pick is not None else remaining[0]
            chosen.append(pick)
            remaining.remove(pick)
        ideal = MonomialIdeal(n, base + chosen)
        trials += 1
        if _passes(ideal, spec.field):
            found = ideal

    if found is None:
        return SearchCertificate(spec, None, (), trials)
    full = check_slp(found, spec.field)
    recert = check_slp(found, QQ).passed if spec.recertify else None
    return SearchCertificate(spec, found, tuple(full.rank_table()), trials, recert)


# ------------------------------------------------------------------ fixtures


@dataclass
class FixtureCheck:
    name: str
    expected: str
    observed: str

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "observed": self.observed, "ok": self.ok}


@dataclass
class FixtureReport:
    level: str
    checks: list[FixtureCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"level": self.level, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def verify_sec5_fixtures(level: str = "fast", progress=None) -> FixtureReport:
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    checks = []
    J = sec5_J()
    checks.append(FixtureCheck("sec5_J SLP over q", "pass", check_slp(J, QQ).verdict))
    for g in SEC5_J_SPECIAL:
        smaller = J.remove(parse_monomial(g, 3))
        checks.append(FixtureCheck(f"sec5_J without {g} SLP over q", "fail", check_slp(smaller, QQ).verdict))
    if level == "full":
        I = sec5_cubic8()
        prime = FieldSpec(DEFAULT_PRIME)
        checks.append(FixtureCheck(f"sec5_cubic8 SLP over {prime}", "pass", check_slp(I, prime).verdict))
        outside = [m for m in monomials_of_degree(8, 3) if not I.contains(m)]
        for k, m in enumerate(outside):
            verdict = check_wlp(I.add(m), QQ).verdict
            checks.append(FixtureCheck(f"sec5_cubic8 + {m} WLP over q", "fail", verdict))
            if progress is not None:
                progress(k + 1, len(outside), m, verdict)
    return FixtureReport(level, checks)

