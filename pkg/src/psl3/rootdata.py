"""Root data of sl(3) and dominant integral affine weights.

Weights of the finite weight lattice P are stored in the basis of the
fundamental weights (lambda1, lambda2), so every lattice point has integer
coordinates and the simple roots are ``ALPHA1 = (2, -1)``, ``ALPHA2 = (-1, 2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# Gram matrix of the form on (lambda1, lambda2): inverse Cartan matrix of A2.
_GRAM = ((Fraction(2, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3)))


@dataclass(frozen=True, order=True)
class Weight:
    c1: int
    c2: int

    def __add__(self, other: Weight) -> Weight:
        return Weight(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: Weight) -> Weight:
        return Weight(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> Weight:
        return Weight(-self.c1, -self.c2)

    def __mul__(self, n: int) -> Weight:
        return Weight(n * self.c1, n * self.c2)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.c1
        yield self.c2


LAMBDA1 = Weight(1, 0)
LAMBDA2 = Weight(0, 1)
ALPHA1 = Weight(2, -1)
ALPHA2 = Weight(-1, 2)
ZERO = Weight(0, 0)

SIMPLE_ROOTS = {1: ALPHA1, 2: ALPHA2}
FUNDAMENTAL_WEIGHTS = {1: LAMBDA1, 2: LAMBDA2}


def pairing(u: Weight, v: Weight) -> Fraction:
    """Invariant form <u, v>, normalised so that <alpha, alpha> = 2."""
    a = (u.c1, u.c2)
    b = (v.c1, v.c2)
    return sum((a[i] * _GRAM[i][j] * b[j] for i in range(2) for j in range(2)), Fraction(0))


def int_pairing(alpha: Weight, mu: Weight) -> int:
    """<alpha, mu> for alpha in the root lattice Q; always an integer."""
    value = pairing(alpha, mu)
    if value.denominator != 1:
        raise ValueError(f"{alpha} is not in the root lattice")
    return value.numerator


@dataclass(frozen=True)
class AffineHW:
    """Dominant integral weight k0*Lambda0 + k1*Lambda1 + k2*Lambda2."""

    k0: int
    k1: int
    k2: int

    def __post_init__(self):
        if min(self.k0, self.k1, self.k2) < 0:
            raise ValueError(f"negative coefficient in {self.as_tuple()}")
        if self.level < 1:
            raise ValueError("level must be at least 1")

    @property
    def level(self) -> int:
        return self.k0 + self.k1 + self.k2

    @property
    def finite_part(self) -> Weight:
        # Lambda_j = Lambda_0 + lambda_j and Lambda_0 = d is orthogonal to h.
        return Weight(self.k1, self.k2)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.k0, self.k1, self.k2)

    def dynkin_flip(self) -> AffineHW:
        """Image under the diagram automorphism exchanging alpha1 and alpha2."""
        return AffineHW(self.k0, self.k2, self.k1)

    def __str__(self) -> str:
        return f"{self.k0}L0+{self.k1}L1+{self.k2}L2"


def charge_offsets(hw: AffineHW) -> tuple[Fraction, Fraction]:
    """Charges (<lambda1, Lambda>, <lambda2, Lambda>) of the highest weight vector."""
    mu = hw.finite_part
    return pairing(LAMBDA1, mu), pairing(LAMBDA2, mu)


def conformal_weight(hw: AffineHW) -> Fraction:
    """h_Lambda = <Lambda, Lambda + alpha1 + alpha2> / 2(k + 3).

    Display metadata only; every grading in this package is taken relative to
    the highest weight vector.
    """
    mu = hw.finite_part
    return pairing(mu, mu + ALPHA1 + ALPHA2) / (2 * (hw.level + 3))
