"""Truncated formal series in x1, x2, q with exact integer coefficients.

A :class:`Series` stores the terms ``c * x1**r1 * x2**r2 * q**s`` of a series
together with an :class:`Envelope` saying which coefficients are trustworthy:

* every coefficient with ``r1 + r2 <= max_charge`` and ``s <= s_max`` is exact;
* every coefficient with ``s < s_min`` is zero.

All series handled by the package come from power series in q (characters are
bounded below), so the floor ``s_min`` only moves when a substitution
``x_i -> x_i q^a`` with ``a < 0`` pushes terms to lower q-powers.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

Key = tuple[int, int, int]


class SeriesError(Exception):
    pass


class NegativeChargeExponent(SeriesError):
    """A monomial rescaling would produce a negative power of x1 or x2."""


class OutOfWindow(SeriesError, KeyError):
    """The requested coefficient lies outside the known region."""


@dataclass(frozen=True)
class Envelope:
    max_charge: int
    s_min: int
    s_max: int

    def __post_init__(self):
        if self.max_charge < 0:
            raise ValueError(f"max_charge must be >= 0, got {self.max_charge}")
        if self.s_min > self.s_max:
            raise ValueError(f"empty q-window [{self.s_min}, {self.s_max}]")

    def contains(self, key: Key) -> bool:
        r1, r2, s = key
        return r1 >= 0 and r2 >= 0 and r1 + r2 <= self.max_charge and self.s_min <= s <= self.s_max

    def meet(self, other: Envelope) -> Envelope:
        """Region known in both: lower charge cap, lower top, lower floor."""
        return Envelope(
            min(self.max_charge, other.max_charge),
            min(self.s_min, other.s_min),
            min(self.s_max, other.s_max),
        )

    def as_dict(self) -> dict:
        return {"maxCharge": self.max_charge, "qWindow": [self.s_min, self.s_max]}


class Series:
    __slots__ = ("_terms", "envelope")

    def __init__(self, terms: Mapping[Key, int], envelope: Envelope):
        self.envelope = envelope
        kept = {}
        for k, c in terms.items():
            if not c:
                continue
            r1, r2, s = k
            if r1 < 0 or r2 < 0 or s < envelope.s_min:
                raise SeriesError(f"term {k} lies below the envelope {envelope}")
            if r1 + r2 <= envelope.max_charge and s <= envelope.s_max:
                kept[k] = int(c)
        self._terms = kept

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, max_charge: int, s_min: int = 0, s_max: int = 0) -> Series:
        return cls({}, Envelope(max_charge, s_min, s_max))

    @classmethod
    def one(cls, max_charge: int, s_min: int = 0, s_max: int = 0) -> Series:
        return cls({(0, 0, 0): 1}, Envelope(max_charge, s_min, s_max))

    @classmethod
    def monomial(cls, r1: int, r2: int, s: int, envelope: Envelope, coeff: int = 1) -> Series:
        return cls({(r1, r2, s): coeff}, envelope)

    # -- access -----------------------------------------------------------

    @property
    def max_charge(self) -> int:
        return self.envelope.max_charge

    @property
    def s_min(self) -> int:
        return self.envelope.s_min

    @property
    def s_max(self) -> int:
        return self.envelope.s_max

    def terms(self) -> dict[Key, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Key, int]]:
        """Nonzero terms in canonical (r1, r2, s) order."""
        return sorted(self._terms.items())

    def coefficient(self, r1: int, r2: int, s: int) -> int:
        if r1 < 0 or r2 < 0 or r1 + r2 > self.max_charge or s > self.s_max:
            raise OutOfWindow((r1, r2, s))
        return self._terms.get((r1, r2, s), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        env = self.envelope
        return f"Series({len(self._terms)} terms, C={env.max_charge}, q in [{env.s_min}, {env.s_max}])"

    # -- ring operations --------------------------------------------------

    def __add__(self, other: Series) -> Series:
        env = self.envelope.meet(other.envelope)
        out = defaultdict(int)
        for src in (self._terms, other._terms):
            for k, c in src.items():
                out[k] += c
        return Series(out, env)

    def __neg__(self) -> Series:
        return Series({k: -c for k, c in self._terms.items()}, self.envelope)

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def __mul__(self, other: Series) -> Series:
        a, b = self.envelope, other.envelope
        env = Envelope(
            min(a.max_charge, b.max_charge),
            a.s_min + b.s_min,
            min(a.s_max + b.s_min, b.s_max + a.s_min),
        )
        cap = env.max_charge
        out = defaultdict(int)
        for (r1, r2, s), c in self._terms.items():
            for (t1, t2, u), d in other._terms.items():
                if r1 + r2 + t1 + t2 <= cap and s + u <= env.s_max:
                    out[(r1 + t1, r2 + t2, s + u)] += c * d
        return Series(out, env)

    def scale(self, n: int) -> Series:
        return Series({k: n * c for k, c in self._terms.items()}, self.envelope)

    # -- monomial operations ----------------------------------------------

    def scale_monomial(self, dr1: int, dr2: int, ds: int) -> Series:
        """Multiply by x1**dr1 * x2**dr2 * q**ds (negative powers allowed if they divide)."""
        out = {}
        for (r1, r2, s), c in self._terms.items():
            n1, n2 = r1 + dr1, r2 + dr2
            if n1 < 0 or n2 < 0:
                raise NegativeChargeExponent(
                    f"term x1^{r1} x2^{r2} q^{s} times x1^{dr1} x2^{dr2} has a negative exponent"
                )
            out[(n1, n2, s + ds)] = c
        env = self.envelope
        cap = env.max_charge + dr1 + dr2
        if cap < 0:
            raise NegativeChargeExponent(f"charge cap {env.max_charge} cannot absorb x1^{dr1} x2^{dr2}")
        return Series(out, Envelope(cap, env.s_min + ds, env.s_max + ds))

    def subst_q_shift(self, a1: int, a2: int) -> Series:
        """Substitute x1 -> x1 q**a1, x2 -> x2 q**a2."""
        env = self.envelope
        # Worst downward shift over all charges r1 + r2 <= C.
        drop = min(0, a1 * env.max_charge, a2 * env.max_charge)
        out = {(r1, r2, s + a1 * r1 + a2 * r2): c for (r1, r2, s), c in self._terms.items()}
        return Series(out, Envelope(env.max_charge, env.s_min + drop, env.s_max + drop))

    def swap_charges(self) -> Series:
        """Exchange the roles of x1 and x2."""
        return Series({(r2, r1, s): c for (r1, r2, s), c in self._terms.items()}, self.envelope)

    def truncate(self, max_charge: int | None = None, s_max: int | None = None) -> Series:
        """Forget coefficients beyond a smaller charge cap or q-order."""
        env = self.envelope
        cap = env.max_charge if max_charge is None else max_charge
        top = env.s_max if s_max is None else s_max
        if cap > env.max_charge or top > env.s_max:
            raise OutOfWindow(f"cannot widen {env} to C={cap}, s_max={top}")
        return Series(self._terms, Envelope(cap, min(env.s_min, top), top))

    def with_floor(self, s_min: int) -> Series:
        """Raise the floor; only legal when no stored term lies below it."""
        if any(s < s_min for _, _, s in self._terms):
            raise SeriesError(f"terms below proposed floor {s_min}")
        env = self.envelope
        return Series(self._terms, Envelope(env.max_charge, min(s_min, env.s_max), env.s_max))

    # -- comparison -------------------------------------------------------

    def compare(self, other: Series) -> tuple[bool, Envelope]:
        """Coefficientwise equality on the common known region."""
        env = self.envelope.meet(other.envelope)
        return (self - other).is_zero(), env

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.compare(other)[0]

    __hash__ = None  # type: ignore[assignment]

    def first_nonzero(self) -> tuple[Key, int] | None:
        items = sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0], kv[0][2]))
        return items[0] if items else None

    # -- serialisation ----------------------------------------------------

    def to_dict(self) -> dict:
        d = self.envelope.as_dict()
        d["terms"] = [{"r1": r1, "r2": r2, "s": s, "c": str(c)} for (r1, r2, s), c in self.items()]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> Series:
        s_min, s_max = d["qWindow"]
        env = Envelope(int(d["maxCharge"]), int(s_min), int(s_max))
        terms = {(int(t["r1"]), int(t["r2"]), int(t["s"])): int(t["c"]) for t in d["terms"]}
        bad = [k for k in terms if not env.contains(k)]
        if bad:
            raise OutOfWindow(f"term {bad[0]} outside envelope")
        return cls(terms, env)

    @classmethod
    def from_json(cls, text: str) -> Series:
        return cls.from_dict(json.loads(text))


def sum_series(parts: Iterable[Series], envelope: Envelope) -> Series:
    """Add many series into a fixed envelope without repeated re-hashing."""
    out = defaultdict(int)
    for part in parts:
        for k, c in part._terms.items():
            out[k] += c
    return Series(out, envelope)


@lru_cache(maxsize=None)
def inv_pochhammer_coeffs(m: int, s_max: int) -> tuple[int, ...]:
    """Coefficients of 1/(q)_m up to q**s_max: partitions into parts of size <= m."""
    coeffs = [0] * (s_max + 1)
    if s_max >= 0:
        coeffs[0] = 1
    for part in range(1, m + 1):
        for n in range(part, s_max + 1):
            coeffs[n] += coeffs[n - part]
    return tuple(coeffs)


def inv_pochhammer(m: int, s_max: int) -> Series:
    """1/((1-q)(1-q^2)...(1-q^m)) as a univariate series to order s_max."""
    if m < 0 or s_max < 0:
        raise ValueError("m and s_max must be nonnegative")
    coeffs = inv_pochhammer_coeffs(m, s_max)
    return Series({(0, 0, n): c for n, c in enumerate(coeffs)}, Envelope(0, 0, s_max))


def required_q_order(target_s_max: int, max_abs_shift: int, max_charge: int) -> int:
    """q-order an input must reach so a shift by up to max_abs_shift per unit charge
    still leaves every coefficient up to target_s_max exact."""
    return target_s_max + max_abs_shift * max_charge
