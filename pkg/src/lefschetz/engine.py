"""Multiplication by powers of l = x1 + ... + xn and WLP/SLP decisions.

Maps are checked over the requested field. Over Q a map is first tested
modulo large primes: full rank there certifies full rank over Q. A map that
looks deficient is settled exactly, by fraction-free elimination for small
matrices and by a verified rational kernel vector for large ones.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable

from .ideals import MonomialIdeal, power_family
from .linalg import (
    QQ,
    ExactMatrix,
    FieldSpec,
    block,
    certified_kernel_vector,
    kernel_vector,
    left_kernel_vector,
    rank,
)
from .monomial import Monomial, format_monomial, monomials_of_degree
from .quotient import GradedQuotient, basis_split, build_quotient, reduced_quotient

CERT_PRIMES = (32003, 2147483629)
EXACT_LIMIT = 512
WORKERS_ENV = "LEFSCHETZ_WORKERS"


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV}={raw!r} is not an integer") from None
    if workers < 1:
        raise ValueError(f"{WORKERS_ENV} must be at least 1")
    return workers


def multinomial(t: int, parts: Iterable[int]) -> int:
    parts = list(parts)
    if sum(parts) != t or min(parts, default=0) < 0:
        raise ValueError(f"parts {parts} do not split {t}")
    out = factorial(t)
    for c in parts:
        out //= factorial(c)
    return out


def mult_matrix(q: GradedQuotient, i: int, t: int, field: FieldSpec = QQ) -> ExactMatrix:
    """Matrix of l^t : A_i -> A_{i+t} in the bases B_i (columns), B_{i+t} (rows).

    Entry (b, a) is the multinomial coefficient of x^(b-a) in l^t when a | b;
    terms of l^t * x^a that land in the ideal are simply absent from B_{i+t}.
    """
    if t < 0:
        raise ValueError("power must be non-negative")
    src, dst = q.basis(i), q.basis(i + t)
    m = ExactMatrix.zeros(len(dst), len(src), QQ)
    if not src or not dst:
        return m.to_field(field)
    n = q.n
    if comb(n + t - 1, t) <= len(dst):
        steps = [(c.exponents, multinomial(t, c.exponents)) for c in monomials_of_degree(n, t)]
        for col, a in enumerate(src):
            ae = a.exponents
            for ce, coeff in steps:
                row = q.position(i + t, Monomial(x + y for x, y in zip(ae, ce)))
                if row is not None:
                    m.data[row, col] = coeff
    else:
        for col, a in enumerate(src):
            ae = a.exponents
            for row, b in enumerate(dst):
                diff = [y - x for x, y in zip(ae, b.exponents)]
                if min(diff) >= 0:
                    m.data[row, col] = multinomial(t, diff)
    return m.to_field(field)


def linear_matrix(q: GradedQuotient, i: int, field: FieldSpec = QQ) -> ExactMatrix:
    """l : A_i -> A_{i+1}, built from basis lookups (every entry is 0 or 1)."""
    src, dst = q.basis(i), q.basis(i + 1)
    m = ExactMatrix.zeros(len(dst), len(src), field)
    for col, a in enumerate(src):
        ae = a.exponents
        for k in range(q.n):
            row = q.position(i + 1, Monomial(ae[:k] + (ae[k] + 1,) + ae[k + 1:]))
            if row is not None:
                m.data[row, col] = 1
    return m


class MultMatrixSet:
    """Lazily built M_i^t over one field, with powers formed as products of M^1."""

    def __init__(self, q: GradedQuotient, field: FieldSpec):
        self.quotient = q
        self.field = field
        self._linear: dict[int, ExactMatrix] = {}

    def linear(self, i: int) -> ExactMatrix:
        if i not in self._linear:
            self._linear[i] = linear_matrix(self.quotient, i, self.field)
        return self._linear[i]

    def chain(self, i: int, t_max: int):
        """Yield (t, M_i^t) for t = 1..t_max using M_i^t = M^1_{i+t-1} M_i^{t-1}."""
        cur = None
        for t in range(1, t_max + 1):
            step = self.linear(i + t - 1)
            cur = step if cur is None else step @ cur
            yield t, cur

    def power(self, i: int, t: int) -> ExactMatrix:
        if t == 0:
            return ExactMatrix.identity(self.quotient.dim(i), self.field)
        for s, m in self.chain(i, t):
            if s == t:
                return m
        raise AssertionError("unreachable")


# ------------------------------------------------------------ block structure


@dataclass(frozen=True)
class BlockDecomposition:
    top_left: ExactMatrix
    bottom_left: ExactMatrix
    bottom_right: ExactMatrix
    permuted: ExactMatrix

    @property
    def assembled(self) -> ExactMatrix:
        zero = ExactMatrix.zeros(self.top_left.rows, self.bottom_right.cols, self.top_left.field)
        return block([[self.top_left, zero], [self.bottom_left, self.bottom_right]])

    @property
    def matches(self) -> bool:
        return self.permuted == self.assembled


def block_decomposition(q: GradedQuotient, i: int, t: int, field: FieldSpec = QQ) -> BlockDecomposition:
    """Blocks of M_i^t in the split bases (monomials free of x_n first).

    Top left is Mbar_i^t, bottom left t * Mbar_i^(t-1), bottom right
    Mbar_(i-1)^t, all over the quotient in the first n-1 variables.
    """
    if i < 1 or t < 1:
        raise ValueError("block decomposition needs i, t >= 1")
    qbar = reduced_quotient(q)
    bar = MultMatrixSet(qbar, field)
    top_left = bar.power(i, t)
    bottom_left = bar.power(i, t - 1).scale(t)
    bottom_right = bar.power(i - 1, t)

    def order(k: int) -> list[int]:
        free, with_last = basis_split(q, k)
        return [q.position(k, m) for m in free + with_last]

    full = mult_matrix(q, i, t, field)
    rows, cols = order(i + t), order(i)
    permuted = ExactMatrix(full.data[rows][:, cols] if rows and cols else full.data, field)
    return BlockDecomposition(top_left, bottom_left, bottom_right, permuted)


# ---------------------------------------------------------------- decisions


@dataclass(frozen=True)
class MapRecord:
    i: int
    t: int
    source_dim: int
    target_dim: int
    rank: int
    method: str
    rank_exact: bool = True

    @property
    def expected(self) -> int:
        return min(self.source_dim, self.target_dim)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.expected

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "t": self.t,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "rank": self.rank,
            "expected": self.expected,
            "full_rank": self.full_rank,
            "method": self.method,
            "rank_exact": self.rank_exact,
        }


@dataclass(frozen=True)
class Witness:
    """Certificate that one map misses full rank.

    ``kind`` is ``kernel`` (a non-zero v with l^t v = 0 in A) or ``cokernel``
    (a basis monomial outside the image plus a functional vanishing on it).
    """

    i: int
    t: int
    kind: str
    vector: tuple[tuple[Monomial, object], ...]
    unreached: Monomial | None = None

    def to_json(self) -> dict:
        out = {
            "i": self.i,
            "t": self.t,
            "kind": self.kind,
            "vector": [[format_monomial(m), str(c)] for m, c in self.vector],
        }
        if self.unreached is not None:
            out["unreached"] = format_monomial(self.unreached)
        return out


@dataclass(frozen=True)
class LefschetzReport:
    property: str
    field: FieldSpec
    ideal: MonomialIdeal
    hilbert: tuple[int, ...]
    maps: tuple[MapRecord, ...]
    witness: Witness | None = None

    @property
    def passed(self) -> bool:
        return all(m.full_rank for m in self.maps)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def failures(self) -> list[MapRecord]:
        return [m for m in self.maps if not m.full_rank]

    def failing_maps(self) -> list[tuple[int, int]]:
        return [(m.i, m.t) for m in self.failures]

    def rank_table(self) -> list[tuple[int, int, int]]:
        return [(m.i, m.t, m.rank) for m in self.maps]

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "field": str(self.field),
            "ideal": self.ideal.to_json(),
            "hilbert": list(self.hilbert),
            "verdict": self.verdict,
            "maps": [m.to_json() for m in self.maps],
            "failures": [[m.i, m.t] for m in self.failures],
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _tasks(D: int, strong: bool) -> list[tuple[int, int]]:
    """(i, t_max) chains to examine, one per source degree."""
    if strong:
        return [(i, D - i) for i in range(D)]
    return [(i, 1) for i in range(D)]


def _check_chain_prime(mats: MultMatrixSet, i: int, t_max: int, stop) -> list[MapRecord]:
    q, p = mats.quotient, mats.field.p
    out = []
    for t, m in mats.chain(i, t_max):
        if stop is not None and stop():
            break
        r = rank(m)
        out.append(MapRecord(i, t, q.dim(i), q.dim(i + t), r, f"p:{p}"))
    return out


def _check_chain_rational(q: GradedQuotient, cert: list[MultMatrixSet], i: int, t_max: int, stop):
    """Ranks over Q. Prime full rank certifies; otherwise settle exactly."""
    chains = [c.chain(i, t_max) for c in cert]
    out = []
    for t in range(1, t_max + 1):
        if stop is not None and stop():
            break
        mods = [next(ch)[1] for ch in chains]
        src, dst = q.dim(i), q.dim(i + t)
        expected = min(src, dst)
        record = None
        best = 0
        for mats, m in zip(cert, mods):
            r = rank(m)
            best = max(best, r)
            if r == expected:
                record = MapRecord(i, t, src, dst, r, f"p:{mats.field.p}")
                break
        if record is None:
            record = _settle_exact(q, i, t, best)
        out.append(record)
    return out


def _settle_exact(q: GradedQuotient, i: int, t: int, lower: int) -> MapRecord:
    src, dst = q.dim(i), q.dim(i + t)
    m = mult_matrix(q, i, t, QQ)
    if max(src, dst) <= EXACT_LIMIT:
        return MapRecord(i, t, src, dst, rank(m), "exact")
    side = m if src <= dst else m.transpose()
    if certified_kernel_vector(side) is not None:
        # prime rank is a lower bound; the verified kernel vector proves deficiency
        return MapRecord(i, t, src, dst, lower, "kernel-certificate", rank_exact=False)
    return MapRecord(i, t, src, dst, rank(m), "exact")


def _witness(q: GradedQuotient, rec: MapRecord, field: FieldSpec) -> Witness:
    m = mult_matrix(q, rec.i, rec.t, field)
    big = max(m.shape) > EXACT_LIMIT and field.is_rational
    if rec.source_dim <= rec.target_dim:
        vec = certified_kernel_vector(m) if big else kernel_vector(m)
        basis = q.basis(rec.i)
        pairs = tuple((basis[k], c) for k, c in enumerate(vec) if c != 0)
        return Witness(rec.i, rec.t, "kernel", pairs)
    basis = q.basis(rec.i + rec.t)
    vec = certified_kernel_vector(m.transpose()) if big else left_kernel_vector(m)
    # y M = 0 with y_k != 0 means e_k is not in the image
    k = next(idx for idx, c in enumerate(vec) if c != 0)
    pairs = tuple((basis[idx], c) for idx, c in enumerate(vec) if c != 0)
    return Witness(rec.i, rec.t, "cokernel", pairs, unreached=basis[k])


def check_lefschetz(
    ideal: MonomialIdeal,
    field: FieldSpec = QQ,
    strong: bool = True,
    workers: int | None = None,
    stop_early: bool = False,
    witness: bool = True,
    quotient: GradedQuotient | None = None,
) -> LefschetzReport:
    """Decide WLP (``strong=False``) or SLP for l = x1 + ... + xn.

    With ``stop_early`` the scan ends at the first deficient map, so the
    report lists only the maps examined up to that point.
    """
    ideal.require_artinian()
    q = build_quotient(ideal) if quotient is None else quotient
    D = q.socle_degree
    tasks = _tasks(D, strong)
    workers = default_workers() if workers is None else max(1, workers)

    if field.is_rational:
        cert = [MultMatrixSet(q, FieldSpec(p)) for p in CERT_PRIMES]
        for mats in cert:  # warm the shared M^1 caches before threads start
            for k in range(D):
                mats.linear(k)
        run = lambda task, stop: _check_chain_rational(q, cert, *task, stop)
    else:
        mats = MultMatrixSet(q, field)
        for k in range(D):
            mats.linear(k)
        run = lambda task, stop: _check_chain_prime(mats, *task, stop)

    records: list[MapRecord] = []
    if stop_early:
        for task in tasks:
            chunk = []
            for rec in run(task, None):
                chunk.append(rec)
                if not rec.full_rank:
                    break
            records.extend(chunk)
            if chunk and not chunk[-1].full_rank:
                break
    elif workers == 1:
        for task in tasks:
            records.extend(run(task, None))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(lambda task: run(task, None), tasks):
                records.extend(chunk)

    records.sort(key=lambda r: (r.t, r.i))
    report_witness = None
    failing = [r for r in records if not r.full_rank]
    if witness and failing:
        report_witness = _witness(q, failing[0], field)
    return LefschetzReport(
        property="SLP" if strong else "WLP",
        field=field,
        ideal=ideal,
        hilbert=tuple(q.hilbert),
        maps=tuple(records),
        witness=report_witness,
    )


def check_slp(ideal: MonomialIdeal, field: FieldSpec = QQ, **kw) -> LefschetzReport:
    return check_lefschetz(ideal, field, strong=True, **kw)


def check_wlp(ideal: MonomialIdeal, field: FieldSpec = QQ, **kw) -> LefschetzReport:
    return check_lefschetz(ideal, field, strong=False, **kw)


def hf_gap(kind: str, d: int) -> int:
    """Hilbert-function gap that forces injectivity (n=3) or surjectivity (n=4)."""
    if d < 3:
        raise ValueError("d must be at least 3")
    if kind == "n3_injectivity_gap":
        h = build_quotient(power_family(3, d)).hilbert
        return h[d + 1] - h[d - 2]
    if kind == "n4_surjectivity_gap":
        h = build_quotient(power_family(4, d)).hilbert
        return h[2 * d - 3] - h[2 * d - 2]
    raise ValueError(f"unknown gap kind {kind!r}")
