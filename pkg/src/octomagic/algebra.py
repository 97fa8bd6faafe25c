"""Cayley-Dickson algebras of dimension 1, 2, 4, 8 and 16 over dyadic rationals.

Basis elements are indexed from 0, with ``e0`` the real unit.  Products of
basis elements are signed basis elements; the table holding them is
generated recursively from a doubling rule selected by a convention tag.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .dyadic import HalfRational, common_scale

SUPPORTED_DIMS = (1, 2, 4, 8, 16)

#: ``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))``.  Gives Hamilton's
#: quaternions (i j = k) and reproduces the printed 9476 octonion square.
STANDARD = "standard"
#: ``(a, b)(c, d) = (ac - d conj(b), conj(a) d + c b)``.  Mirror-image rule;
#: at dimension 4 it yields i j = -k.
REVERSED = "reversed"

CONVENTIONS = (STANDARD, REVERSED)
DEFAULT_CONVENTION = STANDARD


class DimensionError(ValueError):
    pass


# Coordinate-level doubling rules, used only to generate basis tables.

def _conj(x):
    return [x[0]] + [-v for v in x[1:]]


def _vadd(u, v):
    return [p + q for p, q in zip(u, v)]


def _vsub(u, v):
    return [p - q for p, q in zip(u, v)]


def _doubling_mul(convention: str) -> Callable[[list, list], list]:
    def mul(x, y):
        n = len(x)
        if n == 1:
            return [x[0] * y[0]]
        h = n // 2
        a, b, c, d = x[:h], x[h:], y[:h], y[h:]
        if convention == STANDARD:
            return _vsub(mul(a, c), mul(_conj(d), b)) + _vadd(mul(d, a), mul(b, _conj(c)))
        return _vsub(mul(a, c), mul(d, _conj(b))) + _vadd(mul(_conj(a), d), mul(c, b))
    return mul


@dataclass(frozen=True)
class BasisTable:
    """Structure constants: ``e_i e_j = table[i][j][1] * e_{table[i][j][0]}``."""

    dim: int
    convention: str
    table: tuple[tuple[tuple[int, int], ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> tuple[int, int]:
        i, j = ij
        return self.table[i][j]

    def multiply(self, x: Hyper, y: Hyper) -> Hyper:
        return multiply(x, y, self)


@lru_cache(maxsize=None)
def cd_basis_table(dim: int, convention: str = DEFAULT_CONVENTION) -> BasisTable:
    """Generate the basis multiplication table for ``dim`` under ``convention``."""
    if dim not in SUPPORTED_DIMS:
        raise DimensionError(f"unsupported dimension {dim}; expected one of {SUPPORTED_DIMS}")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    mul = _doubling_mul(convention)
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            ei = [0] * dim
            ej = [0] * dim
            ei[i] = ej[j] = 1
            prod = mul(ei, ej)
            nz = [t for t, v in enumerate(prod) if v]
            if len(nz) != 1 or abs(prod[nz[0]]) != 1:
                raise AssertionError(f"e{i} e{j} is not a signed basis element")
            row.append((nz[0], prod[nz[0]]))
        rows.append(tuple(row))
    table = BasisTable(dim, convention, tuple(rows))
    check_basis_table(table)
    return table


def check_basis_table(table: BasisTable) -> None:
    """Raise ``AssertionError`` unless ``table`` satisfies the basis-table invariants."""
    n = table.dim
    t = table.table
    for j in range(n):
        assert t[0][j] == (j, 1), f"e0 e{j} != e{j}"
        assert t[j][0] == (j, 1), f"e{j} e0 != e{j}"
    for i in range(1, n):
        assert t[i][i] == (0, -1), f"e{i}^2 != -1"
        for j in range(1, n):
            if i != j:
                (ti, si), (tj, sj) = t[i][j], t[j][i]
                assert ti == tj and si == -sj, f"e{i}, e{j} do not anticommute"


class Hyper:
    """An element of a Cayley-Dickson algebra, stored as a coordinate tuple."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        coords = tuple(HalfRational.coerce(c) for c in coords)
        if len(coords) not in SUPPORTED_DIMS:
            raise DimensionError(f"length {len(coords)} is not one of {SUPPORTED_DIMS}")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("Hyper is immutable")

    @classmethod
    def _trusted(cls, coords: tuple) -> Hyper:
        # coords already a tuple of HalfRational of a supported length
        obj = object.__new__(cls)
        object.__setattr__(obj, "coords", coords)
        return obj

    @classmethod
    def basis(cls, dim: int, index: int) -> Hyper:
        if not 0 <= index < dim:
            raise IndexError(f"basis index {index} out of range for dim {dim}")
        return cls([1 if k == index else 0 for k in range(dim)])

    @classmethod
    def zero(cls, dim: int) -> Hyper:
        return cls([0] * dim)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __eq__(self, other):
        if not isinstance(other, Hyper):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other: Hyper) -> Hyper:
        _same_dim(self, other)
        return Hyper(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: Hyper) -> Hyper:
        _same_dim(self, other)
        return Hyper(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> Hyper:
        return Hyper(-a for a in self.coords)

    def scale(self, lam) -> Hyper:
        lam = HalfRational.coerce(lam)
        return Hyper(lam * a for a in self.coords)

    def dot(self, other: Hyper) -> HalfRational:
        _same_dim(self, other)
        nums_x, kx = common_scale(self.coords)
        nums_y, ky = common_scale(other.coords)
        return HalfRational(sum(a * b for a, b in zip(nums_x, nums_y)), kx + ky)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Sequence) -> Hyper:
        return cls(HalfRational.coerce(v) for v in data)

    def __repr__(self):
        return f"Hyper({', '.join(str(c) for c in self.coords)})"


def _same_dim(x: Hyper, y: Hyper) -> None:
    if x.dim != y.dim:
        raise DimensionError(f"dimension mismatch: {x.dim} vs {y.dim}")


def multiply(x: Hyper, y: Hyper, table: Optional[BasisTable] = None) -> Hyper:
    """Exact product ``x y``; ``table`` defaults to the standard convention."""
    if table is None:
        table = cd_basis_table(x.dim)
    if x.dim != y.dim or x.dim != table.dim:
        raise DimensionError(f"dimension mismatch: {x.dim}, {y.dim}, table {table.dim}")
    xs, kx = common_scale(x.coords)
    ys, ky = common_scale(y.coords)
    out = [0] * x.dim
    t = table.table
    for i, xi in enumerate(xs):
        if not xi:
            continue
        row = t[i]
        for j, yj in enumerate(ys):
            if yj:
                target, sign = row[j]
                out[target] += sign * xi * yj
    k = kx + ky
    return Hyper._trusted(tuple(HalfRational(v, k) for v in out))


def conjugate(x: Hyper) -> Hyper:
    return Hyper([x.coords[0]] + [-c for c in x.coords[1:]])


def norm(x: Hyper) -> HalfRational:
    """Sum of squared coordinates."""
    return x.dot(x)


def find_norm_multiplicativity_counterexample(
    dim: int = 16,
    table: Optional[BasisTable] = None,
    seed: int = 0,
    budget: int = 10**6,
    coord_range: int = 3,
) -> Optional[tuple[Hyper, Hyper]]:
    """Search for ``x, y`` with ``norm(x) * norm(y) != norm(x y)``.

    Basis pairs are tried first, then random integer pairs with coordinates
    in ``[-coord_range, coord_range]``.  Returns ``None`` if the budget runs
    out; any returned pair has been re-checked exactly.
    """
    if table is None:
        table = cd_basis_table(dim)
    if table.dim != dim:
        raise DimensionError(f"table has dim {table.dim}, expected {dim}")

    def violates(x: Hyper, y: Hyper) -> bool:
        return norm(x) * norm(y) != norm(multiply(x, y, table))

    def candidates():
        # sums of two basis elements catch the classic sedenion zero divisors
        for i in range(1, dim):
            for j in range(i + 1, dim):
                for k in range(1, dim):
                    for l in range(k + 1, dim):
                        x = Hyper([1 if m in (i, j) else 0 for m in range(dim)])
                        y = Hyper([1 if m in (k, l) else 0 for m in range(dim)])
                        yield x, y
        rng = random.Random(seed)
        while True:
            x = Hyper([rng.randint(-coord_range, coord_range) for _ in range(dim)])
            y = Hyper([rng.randint(-coord_range, coord_range) for _ in range(dim)])
            yield x, y

    for trial, (x, y) in enumerate(candidates()):
        if trial >= budget:
            return None
        if violates(x, y):
            # re-verify from fresh coordinate copies before reporting
            x2, y2 = Hyper(x.coords), Hyper(y.coords)
            if norm(x2) * norm(y2) == norm(multiply(x2, y2, table)):
                raise AssertionError("non-deterministic norm computation")
            return x, y
    return None


def associator(x: Hyper, y: Hyper, z: Hyper, table: Optional[BasisTable] = None) -> Hyper:
    """``(x y) z - x (y z)``."""
    return multiply(multiply(x, y, table), z, table) - multiply(x, multiply(y, z, table), table)
