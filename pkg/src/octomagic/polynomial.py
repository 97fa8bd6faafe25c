"""Sparse multivariate polynomials with integer coefficients.

Variables are indexed 0..31: 0..15 hold the coordinates of ``A`` and 16..31
those of ``P``.  A monomial is a sorted tuple of ``(variable, exponent)``
pairs; a polynomial maps monomials to nonzero ints.
"""
from __future__ import annotations

from typing import Mapping, Sequence

NUM_VARS = 32
P_OFFSET = 16
MAX_DEGREE = 8

Monomial = tuple  # tuple[tuple[int, int], ...]

_A_NAMES = "abcdefgh"
_P_NAMES = "pqrstuvw"


class DegreeError(ValueError):
    pass


def var_name(index: int) -> str:
    if not 0 <= index < NUM_VARS:
        raise IndexError(index)
    if index < P_OFFSET:
        return _A_NAMES[index] if index < 8 else f"a{index}"
    k = index - P_OFFSET
    return _P_NAMES[k] if k < 8 else f"p{k}"


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Monomial):
    # higher degree first, then lexicographic on the dense exponent vector
    dense = [0] * NUM_VARS
    for v, e in m:
        dense[v] = e
    return (-degree(m), [-e for e in dense])


class Poly:
    """Immutable polynomial; ``terms`` never stores zero coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for mono, coef in (terms or {}).items():
            if coef:
                if degree(mono) > MAX_DEGREE:
                    raise DegreeError(f"degree {degree(mono)} exceeds {MAX_DEGREE}")
                clean[mono] = coef
        self.terms = clean
        self._hash = None

    @classmethod
    def var(cls, index: int) -> Poly:
        if not 0 <= index < NUM_VARS:
            raise IndexError(f"variable index {index} out of range")
        return cls({((index, 1),): 1})

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls({(): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        return poly_add(self, _promote(other))

    __radd__ = __add__

    def __sub__(self, other):
        return poly_add(self, poly_neg(_promote(other)))

    def __rsub__(self, other):
        return poly_add(_promote(other), poly_neg(self))

    def __neg__(self):
        return poly_neg(self)

    def __mul__(self, other):
        return poly_mul(self, _promote(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return poly_eq(self, other)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def evaluate(self, values: Sequence):
        """Evaluate at ``values[i]`` for variable ``i`` (any ring supporting + and *)."""
        total = 0
        for mono, coef in self.terms.items():
            term = coef
            for v, e in mono:
                term = term * values[v] ** e
            total = total + term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, coef in self.sorted_terms():
            names = [var_name(v) + (f"^{e}" if e > 1 else "") for v, e in mono]
            body = ("*" if any(len(var_name(v)) > 1 for v, _ in mono) else "").join(names)
            mag = abs(coef)
            text = body if (mag == 1 and body) else (f"{mag}{body}" if body else str(mag))
            if not out:
                out.append(text if coef > 0 else f"-{text}")
            else:
                out.append(f" + {text}" if coef > 0 else f" - {text}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({self})"


def _promote(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Poly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def poly_add(p: Poly, q: Poly) -> Poly:
    terms = dict(p.terms)
    for mono, coef in q.terms.items():
        terms[mono] = terms.get(mono, 0) + coef
    return Poly(terms)


def poly_neg(p: Poly) -> Poly:
    return Poly({m: -c for m, c in p.terms.items()})


def poly_mul(p: Poly, q: Poly) -> Poly:
    terms: dict = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = _mono_mul(m1, m2)
            terms[m] = terms.get(m, 0) + c1 * c2
    return Poly(terms)


def poly_eq(p: Poly, q: Poly) -> bool:
    return p.terms == q.terms


def poly_sum(polys) -> Poly:
    terms: dict = {}
    for p in polys:
        for mono, coef in p.terms.items():
            terms[mono] = terms.get(mono, 0) + coef
    return Poly(terms)


def sum_of_squares(indices) -> Poly:
    """``sum x_i^2`` over the given variable indices."""
    return Poly({((i, 2),): 1 for i in indices})
