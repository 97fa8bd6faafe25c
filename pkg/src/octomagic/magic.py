"""Squares built from double multiplication ``A (e_i P)`` and their verification.

Row ``i`` of the matrix is the coordinate vector of ``A (e_i P)``.  For
dimensions up to 8 the rows are orthogonal with common squared length
``N(A) N(P)``; this module builds such matrices numerically and
symbolically, classifies them, and proves the orthogonality identities
with exact polynomial arithmetic.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .algebra import (
    CONVENTIONS,
    DEFAULT_CONVENTION,
    BasisTable,
    DimensionError,
    Hyper,
    cd_basis_table,
    multiply,
)
from .dyadic import HalfRational, common_scale
from .polynomial import P_OFFSET, Poly, poly_mul, poly_sum, sum_of_squares


@dataclass(frozen=True)
class Provenance:
    A: Hyper
    P: Hyper
    convention: str = DEFAULT_CONVENTION


class SquareMatrix:
    """An ``n x n`` matrix of exact dyadic entries with cached Gram data."""

    def __init__(self, entries: Sequence[Sequence], provenance: Optional[Provenance] = None):
        rows = tuple(tuple(HalfRational.coerce(v) for v in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix is not square")
        self.entries = rows
        self.provenance = provenance

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SquareMatrix(dim={self.dim})"

    def flat(self) -> list[HalfRational]:
        return [v for row in self.entries for v in row]

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(list(zip(*self.entries)))

    def scale(self, lam) -> SquareMatrix:
        lam = HalfRational.coerce(lam)
        return SquareMatrix([[lam * v for v in row] for row in self.entries])

    def permute_rows(self, perm: Sequence[int]) -> SquareMatrix:
        """Row ``i`` of the result is row ``perm[i]`` of ``self``."""
        return SquareMatrix([self.entries[k] for k in perm])

    @cached_property
    def _scaled(self) -> tuple[list[list[int]], int]:
        nums, k = common_scale(self.flat())
        n = self.dim
        return [nums[i * n:(i + 1) * n] for i in range(n)], k

    @cached_property
    def row_gram(self) -> tuple[tuple[HalfRational, ...], ...]:
        """``M M^T``."""
        rows, k = self._scaled
        return tuple(tuple(HalfRational(sum(a * b for a, b in zip(r, s)), 2 * k) for s in rows)
                     for r in rows)

    @cached_property
    def column_gram(self) -> tuple[tuple[HalfRational, ...], ...]:
        """``M^T M``."""
        rows, k = self._scaled
        cols = list(zip(*rows))
        return tuple(tuple(HalfRational(sum(a * b for a, b in zip(r, s)), 2 * k) for s in cols)
                     for r in cols)

    def to_json(self) -> dict:
        data: dict = {"dim": self.dim}
        if self.provenance is not None:
            data["A"] = self.provenance.A.to_json()
            data["P"] = self.provenance.P.to_json()
            data["convention"] = self.provenance.convention
        data["entries"] = [[str(v) for v in row] for row in self.entries]
        report = gram_report(self)
        data["constant"] = str(report.constant)
        return data

    @classmethod
    def from_json(cls, data: dict) -> SquareMatrix:
        prov = None
        if "A" in data and "P" in data:
            prov = Provenance(Hyper.from_json(data["A"]), Hyper.from_json(data["P"]),
                              data.get("convention", DEFAULT_CONVENTION))
        if "entries" in data:
            m = cls(data["entries"], prov)
        elif prov is not None:
            m = build_matrix(prov.A, prov.P, cd_basis_table(prov.A.dim, prov.convention))
        else:
            raise ValueError("matrix JSON needs 'entries' or both 'A' and 'P'")
        if "dim" in data and int(data["dim"]) != m.dim:
            raise DimensionError(f"declared dim {data['dim']} but entries are {m.dim}x{m.dim}")
        return m

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def grid(self) -> str:
        """Fixed-width text grid, one row per line."""
        cells = [[str(v) for v in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def build_matrix(A: Hyper, P: Hyper, table: Optional[BasisTable] = None) -> SquareMatrix:
    """Matrix whose row ``i`` holds the coordinates of ``A (e_i P)``."""
    if table is None:
        table = cd_basis_table(A.dim)
    if A.dim != P.dim or A.dim != table.dim:
        raise DimensionError(f"dimension mismatch: A {A.dim}, P {P.dim}, table {table.dim}")
    n = table.dim
    rows = [multiply(A, multiply(Hyper.basis(n, i), P, table), table).coords for i in range(n)]
    return SquareMatrix(rows, Provenance(A, P, table.convention))


# -- symbolic structure ---------------------------------------------------

@dataclass(frozen=True)
class TermPattern:
    """Symbolic entry ``sum_l sign_l * A[a_l] * P[l]``; ``terms[l] = (a_l, sign_l)``."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        a_indices = sorted(a for a, _ in self.terms)
        if a_indices != list(range(len(self.terms))):
            raise ValueError(f"p-index -> a-index map is not a bijection: {self.terms}")
        if any(s not in (1, -1) for _, s in self.terms):
            raise ValueError("signs must be +1 or -1")

    def __len__(self):
        return len(self.terms)

    def negate(self) -> TermPattern:
        return TermPattern(tuple((a, -s) for a, s in self.terms))

    def evaluate(self, A: Sequence, P: Sequence) -> HalfRational:
        total = HalfRational(0)
        for l, (a, s) in enumerate(self.terms):
            prod = HalfRational.coerce(A[a]) * HalfRational.coerce(P[l])
            total = total + prod if s > 0 else total - prod
        return total

    def to_poly(self) -> Poly:
        return Poly({((a, 1), (P_OFFSET + l, 1)): s for l, (a, s) in enumerate(self.terms)})


def _raw_terms(table: BasisTable) -> list[list[list[tuple[int, int, int]]]]:
    """``raw[i][j]`` lists ``(a_index, p_index, sign)`` for entry ``(i, j)``.

    The coefficient of ``A_k P_l`` in coordinate ``j`` of ``e_k (e_i e_l)``.
    """
    n = table.dim
    t = table.table
    raw = [[[] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for l in range(n):
            t1, s1 = t[i][l]
            for k in range(n):
                j, s2 = t[k][t1]
                raw[i][j].append((k, l, s1 * s2))
    return raw


@lru_cache(maxsize=None)
def build_symbolic(dim: int, table: Optional[BasisTable] = None) -> tuple[tuple[TermPattern, ...], ...]:
    """Matrix of term patterns for ``A (e_i P)`` at dimension 4 or 8."""
    if dim not in (4, 8):
        raise DimensionError(f"symbolic patterns are defined for dim 4 and 8, not {dim}")
    if table is None:
        table = cd_basis_table(dim)
    if table.dim != dim:
        raise DimensionError(f"table has dim {table.dim}, expected {dim}")
    out = []
    for row in _raw_terms(table):
        prow = []
        for cell in row:
            by_p = {l: (k, s) for k, l, s in cell}
            if len(by_p) != dim:
                raise AssertionError("entry does not use every p-variable exactly once")
            prow.append(TermPattern(tuple(by_p[l] for l in range(dim))))
        out.append(tuple(prow))
    return tuple(out)


def evaluate_patterns(patterns, A: Hyper, P: Hyper) -> SquareMatrix:
    return SquareMatrix([[pat.evaluate(A.coords, P.coords) for pat in row] for row in patterns])


def pattern_arrays(dim: int, table: Optional[BasisTable] = None):
    """``(a_index, sign)`` int arrays of shape ``(dim, dim, dim)`` indexed ``[i, j, p_index]``."""
    import numpy as np

    pats = build_symbolic(dim, table)
    a_idx = np.array([[[a for a, _ in pat.terms] for pat in row] for row in pats], dtype=np.int64)
    sign = np.array([[[s for _, s in pat.terms] for pat in row] for row in pats], dtype=np.int64)
    return a_idx, sign


# -- numeric verification -------------------------------------------------

@dataclass(frozen=True)
class GramReport:
    constant: HalfRational
    off_diagonal_max_abs: HalfRational
    is_orthogonal: bool
    row_sums_of_squares: tuple[HalfRational, ...]
    column_sums_of_squares: tuple[HalfRational, ...] = ()


def gram_report(M: SquareMatrix) -> GramReport:
    G = M.row_gram
    n = M.dim
    constant = G[0][0]
    off = [abs(G[i][j]) for i in range(n) for j in range(n) if i != j]
    off_max = max(off, default=HalfRational(0))
    diag = tuple(G[i][i] for i in range(n))
    col_diag = tuple(M.column_gram[j][j] for j in range(n))
    orthogonal = not off_max and all(d == constant for d in diag)
    return GramReport(constant, off_max, orthogonal, diag, col_diag)


def diagonal_sums(M: SquareMatrix) -> tuple[HalfRational, HalfRational]:
    """Sums of squares along the main and the anti-diagonal."""
    n = M.dim
    main = sum((M[i, i] ** 2 for i in range(n)), HalfRational(0))
    anti = sum((M[i, n - 1 - i] ** 2 for i in range(n)), HalfRational(0))
    return main, anti


class MagicKind(str, enum.Enum):
    NOT_SEMIMAGIC = "not_semimagic"
    SEMIMAGIC = "semimagic"
    FULLY_MAGIC = "fully_magic"


@dataclass(frozen=True)
class Classification:
    kind: MagicKind
    constant: HalfRational
    entries_distinct: bool
    squares_distinct: bool
    entries_integral: bool

    @property
    def is_semimagic(self) -> bool:
        return self.kind is not MagicKind.NOT_SEMIMAGIC

    @property
    def is_fully_magic(self) -> bool:
        return self.kind is MagicKind.FULLY_MAGIC

    def flags(self) -> dict:
        return {
            "entries_distinct": self.entries_distinct,
            "squares_distinct": self.squares_distinct,
            "entries_integral": self.entries_integral,
        }


def classify(M: SquareMatrix) -> Classification:
    """Semimagic: ``M M^T = M^T M = c I`` with ``c != 0``; fully magic adds both diagonals."""
    report = gram_report(M)
    c = report.constant
    n = M.dim
    cols_ok = all(
        (M.column_gram[i][j] == c) if i == j else not M.column_gram[i][j]
        for i in range(n) for j in range(n)
    )
    semimagic = bool(c) and report.is_orthogonal and cols_ok
    kind = MagicKind.NOT_SEMIMAGIC
    if semimagic:
        kind = MagicKind.FULLY_MAGIC if all(d == c for d in diagonal_sums(M)) else MagicKind.SEMIMAGIC
    flat = M.flat()
    return Classification(
        kind=kind,
        constant=c,
        entries_distinct=len(set(flat)) == len(flat),
        squares_distinct=len({abs(v) for v in flat}) == len(flat),
        entries_integral=all(v.is_integer() for v in flat),
    )


def closest_convention(M: SquareMatrix) -> tuple[str, int]:
    """Convention whose rebuild from ``M``'s provenance agrees in the most entries."""
    if M.provenance is None:
        raise ValueError("matrix has no (A, P) provenance")
    A, P = M.provenance.A, M.provenance.P
    best = None
    for conv in CONVENTIONS:
        rebuilt = build_matrix(A, P, cd_basis_table(A.dim, conv))
        hits = sum(a == b for a, b in zip(rebuilt.flat(), M.flat()))
        if best is None or hits > best[1]:
            best = (conv, hits)
    return best


# -- symbolic proof -------------------------------------------------------

@dataclass
class Obligation:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ProofReport:
    dim: int
    convention: str
    obligations: list[Obligation] = field(default_factory=list)
    nonzero_gram_entry: Optional[tuple[int, int, Poly]] = None

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.obligations)

    def format(self) -> str:
        lines = [f"dim {self.dim}, convention {self.convention}"]
        for o in self.obligations:
            status = "PASS" if o.passed else "FAIL"
            lines.append(f"  [{status}] {o.name}" + (f": {o.detail}" if o.detail else ""))
        if self.nonzero_gram_entry is not None:
            i, j, g = self.nonzero_gram_entry
            lines.append(f"  (MM^T)[{i}][{j}] = {g}")
        lines.append("all obligations hold" if self.passed else "some obligation failed")
        return "\n".join(lines)


class ProofFailure(AssertionError):
    def __init__(self, report: ProofReport):
        super().__init__(report.format())
        self.report = report


def symbolic_entries(dim: int, table: Optional[BasisTable] = None) -> list[list[Poly]]:
    if table is None:
        table = cd_basis_table(dim)
    return [[Poly({((k, 1), (P_OFFSET + l, 1)): s for k, l, s in cell}) for cell in row]
            for row in _raw_terms(table)]


def prove_theorem(dim: int, table: Optional[BasisTable] = None, strict: bool = False) -> ProofReport:
    """Check symbolically that ``A (e_i P)`` gives a semi-magic square of squares.

    Obligations: off-diagonal entries of ``M M^T`` vanish identically,
    diagonal entries equal ``N(A) N(P)``, and all entries are pairwise
    distinct polynomials.  With ``strict`` a failed obligation raises
    :class:`ProofFailure`.
    """
    if table is None:
        table = cd_basis_table(dim)
    if table.dim != dim:
        raise DimensionError(f"table has dim {table.dim}, expected {dim}")
    M = symbolic_entries(dim, table)
    report = ProofReport(dim, table.convention)

    nonzero = []
    for i in range(dim):
        for j in range(i + 1, dim):
            g = poly_sum(poly_mul(M[i][k], M[j][k]) for k in range(dim))
            if not g.is_zero():
                nonzero.append((i, j, g))
    if nonzero:
        i, j, g = nonzero[0]
        report.nonzero_gram_entry = (i, j, g)
        detail = (f"{len(nonzero)} of {dim * (dim - 1) // 2} off-diagonal entries nonzero; "
                  f"(MM^T)[{i}][{j}] has {len(g)} terms")
    else:
        detail = f"all {dim * (dim - 1) // 2} off-diagonal entries vanish"
    report.obligations.append(Obligation("off-diagonal Gram entries are zero", not nonzero, detail))

    target = poly_mul(sum_of_squares(range(dim)), sum_of_squares(range(P_OFFSET, P_OFFSET + dim)))
    bad = [i for i in range(dim)
           if poly_sum(poly_mul(M[i][k], M[i][k]) for k in range(dim)) != target]
    report.obligations.append(Obligation(
        "diagonal Gram entries equal N(A)N(P)", not bad,
        f"rows {bad} differ" if bad else f"{len(target)}-term product of norms"))

    flat = [p for row in M for p in row]
    distinct = len(set(flat))
    report.obligations.append(Obligation(
        "entries pairwise distinct", distinct == len(flat),
        f"{distinct} distinct of {len(flat)}"))

    if strict and not report.passed:
        raise ProofFailure(report)
    return report
