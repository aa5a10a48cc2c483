"""Characters chi' of principal subspaces W(Lambda) as truncated series.

Three families have closed constructions:

* ``A``: i*Lambda0 + (k-i)*Lambda1 and ``B``: i*Lambda0 + (k-i)*Lambda2, from the
  quasiparticle sum over chains M_1 >= ... >= M_k, N_1 >= ... >= N_k;
* ``C``: i*Lambda1 + (k-i)*Lambda2 (1 <= i <= k), obtained from family A by the
  substitution x1 -> x1/q, x2 -> x2*q followed by division by x1**i.

Everything else (all three k_j positive) is family ``G`` and only the lattice
oracle can produce it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .qseries import Envelope, Series, inv_pochhammer_coeffs, required_q_order
from .rootdata import AffineHW, charge_offsets, conformal_weight


class UnsupportedFamily(ValueError):
    """No closed character formula is available for this highest weight."""


class CancellationFailure(ArithmeticError):
    """A bracket that must be divisible by x1**i (or x2**i) was not."""


class Family(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    G = "G"


@dataclass(frozen=True)
class CharSpec:
    hw: AffineHW
    family: Family

    def __post_init__(self):
        k0, k1, k2 = self.hw.as_tuple()
        ok = {
            Family.A: k2 == 0,
            Family.B: k1 == 0,
            Family.C: k0 == 0 and k1 >= 1,
            Family.G: True,
        }[Family(self.family)]
        if not ok:
            raise ValueError(f"{self.hw} is not of family {self.family.value}")

    @property
    def k(self) -> int:
        return self.hw.level

    @property
    def i(self) -> int:
        """Family parameter: k0 for A and B, k1 for C."""
        if self.family is Family.C:
            return self.hw.k1
        return self.hw.k0

    @classmethod
    def A(cls, k: int, i: int) -> CharSpec:
        return cls(AffineHW(i, k - i, 0), Family.A)

    @classmethod
    def B(cls, k: int, i: int) -> CharSpec:
        return cls(AffineHW(i, 0, k - i), Family.B)

    @classmethod
    def C(cls, k: int, i: int) -> CharSpec:
        return cls(AffineHW(0, i, k - i), Family.C)

    @classmethod
    def classify(cls, hw: AffineHW) -> CharSpec:
        """Pick the first family (A, B, C, G) that contains hw."""
        k0, k1, k2 = hw.as_tuple()
        if k2 == 0:
            return cls(hw, Family.A)
        if k1 == 0:
            return cls(hw, Family.B)
        if k0 == 0:
            return cls(hw, Family.C)
        return cls(hw, Family.G)


def _chains(length: int, budget: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of naturals with sum <= budget, lexicographically descending."""
    if length == 0:
        yield ()
        return
    top = budget if cap is None else min(cap, budget)
    for first in range(top, -1, -1):
        # The remaining entries are each <= first, so they need no more than the leftover budget.
        for rest in _chains(length - 1, budget - first, first):
            yield (first,) + rest


def _quadratic(ms: tuple[int, ...], ns: tuple[int, ...]) -> int:
    return sum(m * m + n * n - m * n for m, n in zip(ms, ns))


def _gaps(parts: tuple[int, ...]) -> list[int]:
    return [parts[t] - (parts[t + 1] if t + 1 < len(parts) else 0) for t in range(len(parts))]


@lru_cache(maxsize=4096)
def _denominator_expansion(gaps: tuple[int, ...], order: int) -> tuple[int, ...]:
    """Coefficients of prod_g 1/(q)_g up to q**order."""
    acc = [1] + [0] * order
    for g in gaps:
        if g == 0:
            continue
        factor = inv_pochhammer_coeffs(g, order)
        out = [0] * (order + 1)
        for a, ca in enumerate(acc):
            if ca:
                for b in range(order + 1 - a):
                    out[a + b] += ca * factor[b]
        acc = out
    return tuple(acc)


def _check_level(k: int, i: int, lo: int = 0) -> None:
    if k < 1:
        raise ValueError(f"level must be >= 1, got {k}")
    if not lo <= i <= k:
        raise ValueError(f"i must lie in [{lo}, {k}], got {i}")


def georgiev_char(k: int, i: int, j: int, max_charge: int, s_max: int) -> Series:
    """chi' of W(i*Lambda0 + (k-i)*Lambda_j) from the quasiparticle sum."""
    _check_level(k, i)
    if j not in (1, 2):
        raise ValueError(f"j must be 1 or 2, got {j}")
    if max_charge < 0 or s_max < 0:
        raise ValueError("max_charge and s_max must be nonnegative")
    terms: dict[tuple[int, int, int], int] = {}
    for ms in _chains(k, max_charge):
        m_total = sum(ms)
        for ns in _chains(k, max_charge - m_total):
            # Quasiparticles of charge > i pay one extra unit of energy.
            tail = ms[i:] if j == 1 else ns[i:]
            low = _quadratic(ms, ns) + sum(tail)
            if low > s_max:
                continue
            series = _denominator_expansion(tuple(sorted(_gaps(ms) + _gaps(ns))), s_max - low)
            n_total = sum(ns)
            for d, c in enumerate(series):
                if c:
                    key = (m_total, n_total, low + d)
                    terms[key] = terms.get(key, 0) + c
    return Series(terms, Envelope(max_charge, 0, s_max))


def _shifted(k: int, a1: int, a2: int, max_charge: int, s_max: int) -> Series:
    down = max(0, -a1, -a2)
    base = georgiev_char(k, k, 1, max_charge, required_q_order(s_max, down, max_charge))
    return base.subst_q_shift(a1, a2).truncate(max_charge, s_max)


def shift_char_lambda1(k: int, max_charge: int, s_max: int) -> Series:
    """chi' of W(k*Lambda1) as chi'_{W(k Lambda0)}(x1*q, x2; q)."""
    return _shifted(k, 1, 0, max_charge, s_max)


def shift_char_lambda2(k: int, max_charge: int, s_max: int) -> Series:
    """chi' of W(k*Lambda2) as chi'_{W(k Lambda0)}(x1, x2*q; q)."""
    return _shifted(k, 0, 1, max_charge, s_max)


def _divided_difference(k: int, i: int, j: int, max_charge: int, s_max: int) -> Series:
    # x_j^{-i} [chi'_{i} - chi'_{i-1}] evaluated at x_j -> x_j/q, x_other -> x_other*q,
    # where chi'_t is the family (A if j == 1 else B) character with parameter t.
    c_in = max_charge + i
    s_in = required_q_order(s_max, 1, c_in)
    upper = georgiev_char(k, i, j, c_in, s_in)
    lower = georgiev_char(k, i - 1, j, c_in, s_in)
    a1, a2 = (-1, 1) if j == 1 else (1, -1)
    bracket = (upper - lower).subst_q_shift(a1, a2)
    for (r1, r2, s), c in bracket.items():
        if (r1 if j == 1 else r2) < i or s < 0:
            raise CancellationFailure(
                f"k={k}, i={i}: term {c}*x1^{r1}*x2^{r2}*q^{s} survives the subtraction"
            )
    out = bracket.scale_monomial(-i, 0, 0) if j == 1 else bracket.scale_monomial(0, -i, 0)
    return out.with_floor(0).truncate(max_charge, s_max)


def char_i1_i2(k: int, i: int, max_charge: int, s_max: int, route: str = "rec1") -> Series:
    """chi' of W(i*Lambda1 + (k-i)*Lambda2), 1 <= i <= k.

    ``route="rec1"`` uses the family A characters (the default). ``route="rec2"``
    instead uses family B with parameter k - i and so needs i < k; the two routes
    are independent and must agree.
    """
    _check_level(k, i, lo=1)
    if route == "rec1":
        return _divided_difference(k, i, 1, max_charge, s_max)
    if route == "rec2":
        if i == k:
            raise ValueError("route rec2 needs i < k")
        return _divided_difference(k, k - i, 2, max_charge, s_max)
    raise ValueError(f"unknown route {route!r}")


def new_grd_direct(k: int, i: int, max_charge: int, s_max: int) -> Series:
    """Single-sum reading of the closed formula for W(i*Lambda1 + (k-i)*Lambda2).

    Each chain contributes
    q^{Q(M,N) + sum_{t>i} M_t + sum_t (N_t - M_t)} (1 - q^{M_i}) / denominators
    times x1^{sum M - i} x2^{sum N}. Kept as an independent cross-check of
    :func:`char_i1_i2`.
    """
    _check_level(k, i, lo=1)
    terms: dict[tuple[int, int, int], int] = {}
    budget = max_charge + i
    for ms in _chains(k, budget):
        m_i = ms[i - 1]
        if m_i == 0:
            continue
        m_total = sum(ms)
        for ns in _chains(k, budget - m_total):
            n_total = sum(ns)
            low = _quadratic(ms, ns) + sum(ms[i:]) + n_total - m_total
            if low > s_max:
                continue
            series = _denominator_expansion(tuple(sorted(_gaps(ms) + _gaps(ns))), s_max - low)
            for d, c in enumerate(series):
                for e, sign in ((d, 1), (d + m_i, -1)):
                    if c and low + e <= s_max:
                        key = (m_total - i, n_total, low + e)
                        terms[key] = terms.get(key, 0) + sign * c
    return Series(terms, Envelope(max_charge, 0, s_max))


def char_of(spec: CharSpec, max_charge: int, s_max: int) -> Series:
    if spec.family is Family.A:
        return georgiev_char(spec.k, spec.i, 1, max_charge, s_max)
    if spec.family is Family.B:
        return georgiev_char(spec.k, spec.i, 2, max_charge, s_max)
    if spec.family is Family.C:
        return char_i1_i2(spec.k, spec.i, max_charge, s_max)
    raise UnsupportedFamily(
        f"no character formula for {spec.hw}; use the lattice oracle instead"
    )


def char_of_weight(hw: AffineHW, max_charge: int, s_max: int) -> Series:
    return char_of(CharSpec.classify(hw), max_charge, s_max)


def prefactor(hw: AffineHW) -> dict[str, Fraction]:
    """Exponents of x1, x2, q that turn chi' back into the unmodified character."""
    o1, o2 = charge_offsets(hw)
    return {"x1": o1, "x2": o2, "q": conformal_weight(hw)}
