"""Euler's parametrised 4x4 magic square of squares.

The table is transcribed by hand from the 1771 parametrisation and kept
independent of the quaternion code; :func:`euler4_match_quaternion` then
checks that the two agree up to sign changes and permutations.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .algebra import BasisTable, cd_basis_table
from .dyadic import HalfRational, common_scale
from .magic import SquareMatrix, TermPattern, build_symbolic

# Cell (i, j) of the table; each cell uses every a-letter and p-letter once.
EULER_TABLE_TEXT = (
    ("+ap+bq+cr+ds", "+ar-bs-cp+dq", "-as-br+cq+dp", "+aq-bp+cs-dr"),
    ("-aq+bp+cs-dr", "+as+br+cq+dp", "+ar-bs+cp-dq", "+ap+bq-cr-ds"),
    ("+ar+bs-cp-dq", "-ap+bq-cr+ds", "+aq+bp+cs+dr", "+as-br-cq+dp"),
    ("-as+br-cq+dp", "-aq-bp+cs+dr", "-ap+bq+cr-ds", "+ar+bs+cp+dq"),
)

EULER_EXAMPLE = (
    (68, -29, 41, -37),
    (-17, 31, 79, 32),
    (59, 28, -23, 61),
    (-11, -77, 8, 49),
)

_TERM = re.compile(r"([+-])([abcd])([pqrs])")


def _parse_cell(text: str) -> TermPattern:
    by_p = {}
    for sign, a, p in _TERM.findall(text):
        by_p["pqrs".index(p)] = ("abcd".index(a), 1 if sign == "+" else -1)
    if sorted(by_p) != [0, 1, 2, 3]:
        raise ValueError(f"malformed cell {text!r}")
    return TermPattern(tuple(by_p[l] for l in range(4)))


def euler4_symbolic() -> tuple[tuple[TermPattern, ...], ...]:
    return tuple(tuple(_parse_cell(cell) for cell in row) for row in EULER_TABLE_TEXT)


@dataclass(frozen=True)
class EulerParams:
    a: HalfRational
    b: HalfRational
    c: HalfRational
    d: HalfRational
    p: HalfRational
    q: HalfRational
    r: HalfRational
    s: HalfRational

    @classmethod
    def of(cls, abcd: Sequence, pqrs: Sequence) -> EulerParams:
        if len(abcd) != 4 or len(pqrs) != 4:
            raise ValueError("need four values for abcd and four for pqrs")
        return cls(*(HalfRational.coerce(v) for v in (*abcd, *pqrs)))

    @property
    def abcd(self) -> tuple[HalfRational, ...]:
        return (self.a, self.b, self.c, self.d)

    @property
    def pqrs(self) -> tuple[HalfRational, ...]:
        return (self.p, self.q, self.r, self.s)

    def to_json(self) -> dict:
        return {"abcd": [str(v) for v in self.abcd], "pqrs": [str(v) for v in self.pqrs]}

    @classmethod
    def from_json(cls, data: dict) -> EulerParams:
        return cls.of(data["abcd"], data["pqrs"])


def euler4_build(params: EulerParams) -> SquareMatrix:
    """Evaluate Euler's table at ``params``."""
    abcd, pqrs = params.abcd, params.pqrs
    return SquareMatrix([[pat.evaluate(abcd, pqrs) for pat in row] for row in euler4_symbolic()])


class EulerConditions(NamedTuple):
    products_vanish: bool  # pr + qs = 0
    ratio_holds: bool      # a/c ratio, cross-multiplied
    degenerate: bool       # both brackets of the ratio vanish


def _brackets(params: EulerParams):
    p, q, r, s = params.pqrs
    x = p * q + r * s
    y = p * s + q * r
    return x, y


def euler4_conditions(params: EulerParams) -> EulerConditions:
    """Evaluate the two side conditions that make both diagonals work.

    The ratio condition is tested as
    ``a (b X + d Y) + c (d X + b Y) = 0`` with ``X = pq + rs``,
    ``Y = ps + qr``.  When ``X = Y = 0`` it holds for every ``a, c`` and
    the result is flagged degenerate.
    """
    p, q, r, s = params.pqrs
    a, b, c, d = params.abcd
    x, y = _brackets(params)
    first = not (p * r + q * s)
    degenerate = not x and not y
    second = not (a * (b * x + d * y) + c * (d * x + b * y))
    return EulerConditions(first, second, degenerate)


def euler4_solve(p, q, r, s, b, d) -> Optional[tuple[int, int]]:
    """Integers ``(a, c)`` in lowest terms with the required ratio ``a/c``.

    Returns ``None`` in the degenerate case, where any ``a, c`` will do.
    Raises ``ValueError`` unless ``pr + qs = 0``.
    """
    p, q, r, s, b, d = (HalfRational.coerce(v) for v in (p, q, r, s, b, d))
    if p * r + q * s:
        raise ValueError("precondition pr + qs = 0 violated")
    x = p * q + r * s
    y = p * s + q * r
    num = -d * x - b * y
    den = b * x + d * y
    if not num and not den:
        return None
    (n, m), _ = common_scale([num, den])
    g = math.gcd(n, m)
    n, m = n // g, m // g
    if m < 0 or (m == 0 and n < 0):
        n, m = -n, -m
    return n, m


@dataclass(frozen=True)
class EulerMatch:
    """How the quaternionic symbolic matrix maps onto Euler's table.

    ``euler[i][j] == row_signs[i] * col_signs[j] * Q'[row_perm[i]][col_perm[j]]``
    where ``Q'`` is the quaternionic matrix after substituting
    ``a_k -> var_signs[k] * a_k`` and ``p_l -> var_signs[4 + l] * p_l``.
    """

    row_perm: tuple[int, ...]
    row_signs: tuple[int, ...]
    col_perm: tuple[int, ...]
    col_signs: tuple[int, ...]
    var_signs: tuple[int, ...]

    def apply(self, patterns) -> tuple[tuple[TermPattern, ...], ...]:
        flipped = [[_flip_vars(pat, self.var_signs) for pat in row] for row in patterns]
        out = []
        for i in range(4):
            row = []
            for j in range(4):
                pat = flipped[self.row_perm[i]][self.col_perm[j]]
                row.append(pat if self.row_signs[i] * self.col_signs[j] > 0 else pat.negate())
            out.append(tuple(row))
        return tuple(out)


IDENTITY_MATCH = EulerMatch((0, 1, 2, 3), (1,) * 4, (0, 1, 2, 3), (1,) * 4, (1,) * 8)


class NoMatchError(LookupError):
    pass


def _flip_vars(pat: TermPattern, var_signs: Sequence[int]) -> TermPattern:
    return TermPattern(tuple((a, s * var_signs[a] * var_signs[4 + l])
                             for l, (a, s) in enumerate(pat.terms)))


def _up_to_sign(pat: TermPattern) -> tuple[tuple, int]:
    # canonical representative with the p0 term positive, and the sign removed
    s0 = pat.terms[0][1]
    return tuple((a, s * s0) for a, s in pat.terms), s0


def euler4_match_quaternion(table: Optional[BasisTable] = None) -> EulerMatch:
    """Find signs and permutations turning ``A (e_i P)`` at dim 4 into Euler's table.

    Variable sign substitutions are tried in order of increasing number of
    flipped variables; for each, the row/column permutations and signs are
    read off by matching entries up to sign.  Raises :class:`NoMatchError`
    if no substitution works.
    """
    if table is None:
        table = cd_basis_table(4)
    quat = build_symbolic(4, table)
    euler = euler4_symbolic()
    euler_keys = [[_up_to_sign(pat) for pat in row] for row in euler]

    flips = sorted(itertools.product((1, -1), repeat=8), key=lambda v: (v.count(-1), [-x for x in v]))
    for var_signs in flips:
        where = {}
        for r, row in enumerate(quat):
            for c, pat in enumerate(row):
                key, sign = _up_to_sign(_flip_vars(pat, var_signs))
                where[key] = (r, c, sign)
        match = _read_off(euler_keys, where, var_signs)
        if match is not None and match.apply(quat) == euler:
            return match
    raise NoMatchError(f"Euler's table is not a transform of A e_i P under {table.convention!r}")


def _read_off(euler_keys, where, var_signs) -> Optional[EulerMatch]:
    row_perm = [None] * 4
    col_perm = [None] * 4
    signs = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            key, esign = euler_keys[i][j]
            if key not in where:
                return None
            r, c, qsign = where[key]
            if row_perm[i] not in (None, r) or col_perm[j] not in (None, c):
                return None
            row_perm[i], col_perm[j] = r, c
            signs[i][j] = esign * qsign
    if sorted(row_perm) != [0, 1, 2, 3] or sorted(col_perm) != [0, 1, 2, 3]:
        return None
    col_signs = tuple(signs[0])
    row_signs = tuple(signs[i][0] * col_signs[0] for i in range(4))
    if any(signs[i][j] != row_signs[i] * col_signs[j] for i in range(4) for j in range(4)):
        return None
    return EulerMatch(tuple(row_perm), row_signs, tuple(col_perm), col_signs, tuple(var_signs))


def generate_solutions(seed: int, count: int, bound: int = 9):
    """Yield ``count`` non-degenerate integer parameter sets satisfying both conditions.

    ``(r, s)`` is drawn as a multiple of ``(q, -p) / gcd(p, q)`` so that
    ``pr + qs = 0``; ``(a, c)`` then comes from :func:`euler4_solve`.
    """
    import random

    rng = random.Random(seed)
    made = 0
    while made < count:
        p, q = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if p == 0 and q == 0:
            continue
        g = math.gcd(p, q)
        t = rng.choice([v for v in range(-bound, bound + 1) if v])
        r, s = t * q // g, -t * p // g
        b, d = rng.randint(-bound, bound), rng.randint(-bound, bound)
        sol = euler4_solve(p, q, r, s, b, d)
        if sol is None:
            continue
        a, c = sol
        made += 1
        yield EulerParams.of((a, b, c, d), (p, q, r, s))
