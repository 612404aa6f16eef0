"""Exact matrices over Q and F_p, rank, kernels and the block-rank identity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from . import kernels

MAX_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % f for f in range(3, isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= MAX_PRIME:
                raise ValueError(f"primes must be below 2**31, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """``q`` or ``p:<prime>``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls()
        if text.startswith("p:"):
            return cls(int(text[2:]))
        raise ValueError(f"field must be 'q' or 'p:<prime>', got {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def element(self, x) -> int | Fraction:
        if self.p is None:
            return Fraction(x) if not isinstance(x, int) else x
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def __str__(self):
        return "q" if self.p is None else f"p:{self.p}"


QQ = FieldSpec()


def matmul_modp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product of residue matrices modulo p."""
    k = a.shape[1]
    bound = k * (p - 1) ** 2
    if bound < 2**53:
        out = np.rint(a.astype(np.float64) @ b.astype(np.float64))
        return np.mod(out.astype(np.int64), p)
    if bound < 2**63:
        return np.mod(a.astype(np.int64) @ b.astype(np.int64), p)
    out = a.astype(object) @ b.astype(object)
    return np.mod(out, p).astype(np.int64)


class ExactMatrix:
    """Dense matrix over a :class:`FieldSpec`.

    Rational entries are Python ``int``/``Fraction`` in an object array;
    prime-field entries are int64 residues in [0, p).
    """

    __slots__ = ("data", "field")

    def __init__(self, data, field: FieldSpec = QQ):
        arr = np.array(data, dtype=object) if not isinstance(data, np.ndarray) else data
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise ValueError("ExactMatrix needs 2-d data")
        if field.p is None:
            arr = arr.astype(object)
        else:
            if arr.dtype == object:
                arr = np.array(
                    [[field.element(x) for x in row] for row in arr], dtype=np.int64
                ).reshape(arr.shape)
            else:
                arr = np.mod(arr.astype(np.int64), field.p)
        self.data = arr
        self.field = field

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "ExactMatrix":
        dtype = object if field.p is None else np.int64
        data = np.zeros((rows, cols), dtype=dtype)
        if field.p is None:
            data[...] = 0
        return cls(data, field)

    @classmethod
    def identity(cls, size: int, field: FieldSpec = QQ) -> "ExactMatrix":
        m = cls.zeros(size, size, field)
        for k in range(size):
            m.data[k, k] = 1
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec = QQ, cols: int | None = None):
        if not rows:
            return cls.zeros(0, cols or 0, field)
        return cls(np.array([list(r) for r in rows], dtype=object), field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.field.p is None:
            if self.cols == 0:
                return ExactMatrix.zeros(self.rows, other.cols)
            return ExactMatrix(self.data.dot(other.data), self.field)
        return ExactMatrix(matmul_modp(self.data, other.data, self.field.p), self.field)

    def scale(self, alpha) -> "ExactMatrix":
        a = self.field.element(alpha)
        if self.field.p is None:
            return ExactMatrix(self.data * a, self.field)
        return ExactMatrix(self.data * a % self.field.p, self.field)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.data.T.copy(), self.field)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not np.any(self.data != 0)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.data == other.data))
        )

    __hash__ = None

    def to_lists(self) -> list[list]:
        return [list(row) for row in self.data]

    def to_field(self, field: FieldSpec) -> "ExactMatrix":
        """Map an integer/rational matrix into ``field``."""
        if field == self.field:
            return self
        if self.field.p is not None:
            raise ValueError("can only reduce rational matrices")
        return ExactMatrix(self.data, field)

    def __repr__(self):
        return f"ExactMatrix({self.to_lists()!r}, field={self.field})"


def block(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    field = blocks[0][0].field
    rows = []
    for row in blocks:
        heights = {b.rows for b in row}
        if len(heights) != 1:
            raise ValueError("blocks in a row must share their height")
        rows.append(np.hstack([b.data for b in row]) if row else None)
    widths = {r.shape[1] for r in rows}
    if len(widths) != 1:
        raise ValueError("block rows must share their width")
    return ExactMatrix(np.vstack(rows), field)


# ---------------------------------------------------------------- rank over Q


def _integer_rows(data: np.ndarray) -> list[dict[int, int]]:
    """Sparse integer rows, each scaled by the lcm of its denominators."""
    out = []
    for row in data:
        entries = {c: Fraction(x) for c, x in enumerate(row) if x != 0}
        if not entries:
            continue
        lcm = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in entries.values()), 1)
        out.append({c: int(v * lcm) for c, v in entries.items()})
    return out


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank_rational(data: np.ndarray) -> int:
    """Fraction-free sparse elimination over the integers.

    Each step picks the shortest row and, inside it, the entry of smallest
    magnitude; other rows become ``piv * row - row[c] * pivot_row`` and are
    divided by their content.
    """
    rows = [r for r in _integer_rows(data)]
    rank = 0
    while rows:
        k = min(range(len(rows)), key=lambda t: len(rows[t]))
        prow = rows.pop(k)
        c = min(prow, key=lambda col: (abs(prow[col]), col))
        pv = prow[c]
        rank += 1
        new_rows = []
        for row in rows:
            a = row.get(c)
            if a is None:
                new_rows.append(row)
                continue
            g = gcd(pv, a)
            s, t = pv // g, a // g
            merged = {col: s * v for col, v in row.items()}
            for col, v in prow.items():
                val = merged.get(col, 0) - t * v
                if val:
                    merged[col] = val
                else:
                    merged.pop(col, None)
            if merged:
                new_rows.append(_primitive(merged))
        rows = new_rows
    return rank


def rank(m: ExactMatrix, field: FieldSpec | None = None) -> int:
    """Exact rank of ``m`` over ``field`` (default: the matrix's own field)."""
    field = m.field if field is None else field
    if m.rows == 0 or m.cols == 0:
        return 0
    if field.p is None:
        if m.field.p is not None:
            raise ValueError("a residue matrix has no rank over Q")
        return rank_rational(m.data)
    data = m.to_field(field).data
    return kernels.rank_modp(data, field.p)


# ------------------------------------------------------------- kernel vectors


def _rref_rational(data: np.ndarray) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Sparse RREF over Q; rows are dicts keyed by column."""
    rows = [{c: Fraction(x) for c, x in enumerate(r) if x != 0} for r in data]
    rows = [r for r in rows if r]
    ncols = data.shape[1]
    pivots: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    for c in range(ncols):
        k = next((t for t, r in enumerate(rows) if c in r), None)
        if k is None:
            continue
        prow = rows.pop(k)
        inv = 1 / prow[c]
        prow = {col: v * inv for col, v in prow.items()}
        nxt = []
        for r in rows:
            a = r.get(c)
            if a is not None:
                for col, v in prow.items():
                    val = r.get(col, 0) - a * v
                    if val:
                        r[col] = val
                    else:
                        r.pop(col, None)
            if r:
                nxt.append(r)
        rows = nxt
        for r in reduced:
            a = r.get(c)
            if a is not None:
                for col, v in prow.items():
                    val = r.get(col, 0) - a * v
                    if val:
                        r[col] = val
                    else:
                        r.pop(col, None)
        reduced.append(prow)
        pivots.append(c)
    return reduced, pivots


def _normalize(vec: list, field: FieldSpec) -> list:
    """Scale so the first non-zero entry is 1."""
    lead = next(x for x in vec if x != 0)
    if field.p is None:
        return [Fraction(x) / lead for x in vec]
    inv = pow(int(lead), -1, field.p)
    return [int(x) * inv % field.p for x in vec]


def kernel_vector(m: ExactMatrix, field: FieldSpec | None = None) -> list | None:
    """A non-zero vector v with m v = 0, or None when m is injective.

    v expresses the first non-pivot column through earlier pivot columns and
    is scaled so its first non-zero entry is 1.
    """
    field = m.field if field is None else field
    ncols = m.cols
    if ncols == 0:
        return None
    if field.p is None:
        reduced, pivots = _rref_rational(m.data)
        free = next((c for c in range(ncols) if c not in set(pivots)), None)
        if free is None:
            return None
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            if free in row:
                vec[pc] = -row[free]
        return _normalize(vec, field)
    R, pivots = kernels.rref_modp(m.to_field(field).data, field.p)
    pset = set(pivots)
    free = next((c for c in range(ncols) if c not in pset), None)
    if free is None:
        return None
    vec = [0] * ncols
    vec[free] = 1
    for k, pc in enumerate(pivots):
        vec[pc] = int(-R[k, free]) % field.p
    return _normalize(vec, field)


def left_kernel_vector(m: ExactMatrix, field: FieldSpec | None = None) -> list | None:
    """A non-zero y with y m = 0, or None when m is surjective."""
    return kernel_vector(m.transpose(), field)


def unreached_index(m: ExactMatrix, field: FieldSpec | None = None) -> int | None:
    """Index k such that e_k is outside the column space, or None if surjective.

    Non-pivot columns of the RREF of m^T give coordinates whose unit vectors
    are not in the row space of m^T.
    """
    field = m.field if field is None else field
    t = m.transpose()
    if t.cols == 0:
        return None
    if t.rows == 0:
        return 0
    if field.p is None:
        _, pivots = _rref_rational(t.data)
    else:
        _, pivots = kernels.rref_modp(t.to_field(field).data, field.p)
    pset = set(pivots)
    return next((c for c in range(t.cols) if c not in pset), None)


def apply(m: ExactMatrix, vec: Sequence, field: FieldSpec | None = None) -> list:
    """m @ vec with exact arithmetic."""
    field = m.field if field is None else field
    out = []
    for row in m.data:
        s = sum((x * v for x, v in zip(row, vec) if x != 0 and v != 0), 0)
        out.append(s % field.p if field.p is not None else s)
    return out


# --------------------------------------------- multi-modular kernel vectors


def _rational_reconstruct(a: int, mod: int) -> Fraction | None:
    bound = isqrt(mod // 2)
    r0, r1 = mod, a % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


CERT_PRIMES = (2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
               2147483543, 2147483497, 2147483489, 2147483477, 2147483423)


def _more_primes():
    p = CERT_PRIMES[-1] - 2
    while True:
        if is_prime(p):
            yield p
        p -= 2


def certified_kernel_vector(m: ExactMatrix, max_primes: int = 200) -> list[Fraction] | None:
    """Rational kernel vector of an integer matrix via CRT over several primes.

    The canonical kernel vector (first free column against earlier pivot
    columns) is reconstructed from its residues and accepted only after the
    exact product m v = 0 has been verified. Returns None when no certificate
    is found within ``max_primes`` primes.
    """
    if m.field.p is not None:
        raise ValueError("expects an integer matrix over Q")
    if any(isinstance(x, Fraction) and x.denominator != 1 for x in m.data.flat):
        raise ValueError("expects integer entries")
    ints = [[int(x) for x in row] for row in m.data]
    ncols = m.cols
    residues: list[int] | None = None
    modulus = 1
    target = None

    def primes():
        yield from CERT_PRIMES
        yield from _more_primes()

    for count, p in enumerate(primes()):
        if count >= max_primes:
            return None
        red = np.array([[x % p for x in row] for row in ints], dtype=np.int64).reshape(m.shape)
        R, pivots = kernels.rref_modp(red, p)
        pset = set(pivots)
        free = next((c for c in range(ncols) if c not in pset), None)
        if free is None:
            return None  # injective mod p, hence over Q
        key = (free, tuple(c for c in pivots if c < free))
        if target is None or key[0] > target[0] or (key[0] == target[0] and key != target):
            # an earlier free column means a bad prime was used before
            target = key
            residues, modulus = [0] * ncols, 1
        elif key[0] < target[0]:
            continue  # this prime is bad
        vec = [0] * ncols
        vec[free] = 1
        for k, pc in enumerate(pivots):
            if pc < free:
                vec[pc] = int(-R[k, free]) % p
        # CRT merge
        inv = pow(modulus, -1, p)
        residues = [
            r + modulus * ((v - r) * inv % p) for r, v in zip(residues, vec)
        ]
        modulus *= p
        cand = [_rational_reconstruct(r, modulus) for r in residues]
        if any(c is None for c in cand):
            continue
        if all(x == 0 for x in apply(m, cand, QQ)):
            return _normalize(cand, QQ)
    return None


# ---------------------------------------------------------- block-rank lemma


@dataclass(frozen=True)
class BlockRankResult:
    lhs_rank: int
    rhs_rank: int

    @property
    def equal(self) -> bool:
        return self.lhs_rank == self.rhs_rank


def block_rank_check(
    A: ExactMatrix, P: ExactMatrix, B: ExactMatrix, alpha, field: FieldSpec | None = None
) -> BlockRankResult:
    """Compare rank([[AP, 0], [alpha P, PB]]) with rank(P) + rank(APB)."""
    field = A.field if field is None else field
    A, P, B = (x.to_field(field) for x in (A, P, B))
    a = field.element(alpha)
    if a == 0:
        raise ValueError("alpha must be non-zero in the field")
    if A.cols != P.rows or P.cols != B.rows:
        raise ValueError(f"dimension mismatch: A{A.shape} P{P.shape} B{B.shape}")
    AP, PB = A @ P, P @ B
    M = block([[AP, ExactMatrix.zeros(AP.rows, PB.cols, field)], [P.scale(a), PB]])
    return BlockRankResult(rank(M, field), rank(P, field) + rank(AP @ B, field))


def as_matrix(rows: Iterable[Iterable], field: FieldSpec = QQ) -> ExactMatrix:
    return ExactMatrix.from_rows([list(r) for r in rows], field)
