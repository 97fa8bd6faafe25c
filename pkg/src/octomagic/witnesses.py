"""Published parameter sets and matrices used as regression anchors."""
from __future__ import annotations

from .algebra import Hyper
from .dyadic import HalfRational

#: Octonion pair giving the constant-9476 semimagic square; P has half-integer coordinates.
A_9476 = Hyper([8, -2, -4, 8, -4, -1, -5, -4])
P_9476 = Hyper(HalfRational(v, 1) for v in (5, 7, -1, -3, -7, 1, 7, 1))

#: The 9476 square as printed.
MATRIX_9476 = (
    (43, 16, -19, 8, -22, 47, 38, -53),
    (-30, 11, 30, 5, 25, -32, 75, -16),
    (9, -4, -7, -52, -46, -57, -6, -35),
    (-8, -67, 48, 21, -5, 10, -17, -42),
    (54, -11, 14, 49, -31, -36, 17, 36),
    (44, 41, 60, -21, 33, -2, -25, -10),
    (7, -26, 29, -54, -24, 37, 32, 45),
    (-41, 46, 35, 22, -60, 15, -12, 1),
)

#: Integral pair with constant 43617 whose 64 entries have distinct absolute values.
A_43617 = Hyper([-2, -3, 7, -1, 2, -11, 2, -5])
P_43617 = Hyper([-7, 4, -4, -9, 1, 2, -5, 3])
