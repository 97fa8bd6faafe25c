"""Reference computations that share no code with the package."""
from fractions import Fraction


def cd_mul(x, y):
    """Cayley-Dickson product on plain lists: (a,b)(c,d) = (ac - d*b, da + bc*)."""
    n = len(x)
    if n == 1:
        return [x[0] * y[0]]
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]

    def conj(v):
        return [v[0]] + [-t for t in v[1:]]

    left = [p - q for p, q in zip(cd_mul(a, c), cd_mul(conj(d), b))]
    right = [p + q for p, q in zip(cd_mul(d, a), cd_mul(b, conj(c)))]
    return left + right


def four_squares(a, b):
    """Right-hand side terms of Euler's four-squares identity, as printed."""
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return [
        a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
        a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
    ]


def gram(rows):
    return [[sum(Fraction(str(x)) * Fraction(str(y)) for x, y in zip(r, s)) for s in rows] for r in rows]


def fr(values):
    return [Fraction(str(v)) for v in values]
