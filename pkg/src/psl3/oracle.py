"""Brute-force graded dimensions of principal subspaces.

Level-k modules are realised inside the k-fold tensor power of the lattice
vertex algebra V_P = M(1) (x) C[P]. A basis vector of one tensor factor is a
Heisenberg monomial (a sorted tuple of modes ``(n, d)`` standing for
alpha_d(-n)) together with a lattice point mu of P. The operators
x_{alpha_j}(m) act through the lattice vertex operator

    Y(e^alpha, z) = E^-(-alpha, z) E^+(-alpha, z) e_alpha z^alpha

on each factor and through the coproduct on the tensor product. The principal
subspace is then the span of all words in x_{alpha_1}(m), x_{alpha_2}(m)
applied to the highest weight vector, computed block by block with exact
rational row reduction.
"""
from __future__ import annotations

import json
import os
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from pathlib import Path
from typing import Iterable

from .rootdata import ALPHA1, ALPHA2, AffineHW, Weight, int_pairing

FORMAT_VERSION = 1
DEFAULT_BUDGET = 400

Heis = tuple[tuple[int, int], ...]
Factor = tuple[Heis, tuple[int, int]]
Basis = tuple[Factor, ...]
FockVector = dict

_ROOTS = {1: ALPHA1, 2: ALPHA2}

# Signs eps(alpha_i, lambda_j) of a bimultiplicative cocycle Q x P -> {+1, -1}.
# Both satisfy eps(a1, a2) / eps(a2, a1) = (-1)^<a1, a2> = -1.
COCYCLES = {
    "standard": ((1, 1), (1, -1)),
    "alternate": ((-1, 1), (1, 1)),
}


class BudgetExceeded(RuntimeError):
    pass


def cocycle_sign(j: int, mu: tuple[int, int], cocycle: str = "standard") -> int:
    row = COCYCLES[cocycle][j - 1]
    sign = 1
    for s, c in zip(row, mu):
        if s == -1 and c % 2:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _partitions(total: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    if total == 0:
        return ((),)
    top = total if largest is None else min(largest, total)
    out = []
    for first in range(top, 0, -1):
        for rest in _partitions(total - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _raising_part(j: int, degree: int) -> tuple[tuple[Counter, Fraction], ...]:
    """Degree-`degree` part of exp(sum_n alpha_j(-n) z^n / n) as (modes, coefficient)."""
    out = []
    for lam in _partitions(degree):
        counts = Counter(lam)
        coeff = Fraction(1)
        for n, c in counts.items():
            coeff /= n ** c * factorial(c)
        out.append((Counter({(n, j): c for n, c in counts.items()}), coeff))
    return tuple(out)


def _lowering(j: int, heis: Heis) -> dict[tuple[Heis, int], int]:
    """E^+(-alpha_j, z) applied to a Heisenberg monomial.

    alpha_j(n)/n acts as sum_d <alpha_j, alpha_d> d/dy_{n,d}, so the exponential
    is the substitution y_{n,d} -> y_{n,d} - <alpha_j, alpha_d> z^{-n}.
    Returns {(monomial, power of 1/z): integer coefficient}.
    """
    alpha = _ROOTS[j]
    acc: dict = {((), 0): 1}
    for (n, d), e in sorted(Counter(heis).items()):
        c = int_pairing(alpha, _ROOTS[d])
        nxt: dict = defaultdict(int)
        for (mono, b), coeff in acc.items():
            for t in range(e + 1):
                term = comb(e, t) * (-c) ** t
                if term == 0:
                    continue
                kept = mono + (((n, d), e - t),) if e - t else mono
                nxt[(kept, b + n * t)] += coeff * term
        acc = {k: v for k, v in nxt.items() if v}
    out = {}
    for (mono, b), coeff in acc.items():
        flat = tuple(sorted(x for x, e in mono for _ in range(e)))
        out[(flat, b)] = out.get((flat, b), 0) + coeff
    return out


@lru_cache(maxsize=None)
def apply_mode_factor(j: int, m: int, factor: Factor, cocycle: str = "standard") -> tuple[tuple[Factor, Fraction], ...]:
    """x_{alpha_j}(m) on a single basis vector of V_P."""
    heis, mu = factor
    alpha = _ROOTS[j]
    p = int_pairing(alpha, Weight(*mu))
    new_mu = (mu[0] + alpha.c1, mu[1] + alpha.c2)
    sign = cocycle_sign(j, mu, cocycle)
    out: dict[Factor, Fraction] = defaultdict(Fraction)
    for (mono, b), coeff in _lowering(j, heis).items():
        # Total z-power: a - b + p must equal -m - 1.
        a = b - p - m - 1
        if a < 0:
            continue
        base = Counter(mono)
        for modes, rc in _raising_part(j, a):
            merged = base + modes
            key = (tuple(sorted(merged.elements())), new_mu)
            out[key] += sign * coeff * rc
    return tuple(sorted((k, v) for k, v in out.items() if v))


def apply_mode(j: int, m: int, v: FockVector, cocycle: str = "standard") -> FockVector:
    """Coproduct action of x_{alpha_j}(m) on a tensor-product vector."""
    out: dict[Basis, Fraction] = defaultdict(Fraction)
    for basis, coeff in v.items():
        for t, factor in enumerate(basis):
            for new_factor, c in apply_mode_factor(j, m, factor, cocycle):
                out[basis[:t] + (new_factor,) + basis[t + 1:]] += coeff * c
    return {k: c for k, c in out.items() if c}


def highest_weight_vector(hw: AffineHW) -> FockVector:
    factors = [((), (0, 0))] * hw.k0 + [((), (1, 0))] * hw.k1 + [((), (0, 1))] * hw.k2
    return {tuple(factors): Fraction(1)}


class RowEchelon:
    """Incrementally grown basis of a subspace, each row normalised at its pivot."""

    def __init__(self):
        self.rows: list[tuple[Basis, dict]] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: FockVector) -> dict:
        v = dict(v)
        for pivot, row in self.rows:
            c = v.get(pivot)
            if c:
                for k, rc in row.items():
                    nv = v.get(k, 0) - c * rc
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def insert(self, v: FockVector) -> dict | None:
        """Add v if it is independent; return the stored row or None."""
        r = self.reduce(v)
        if not r:
            return None
        pivot = min(r)
        inv = 1 / r[pivot]
        row = {k: c * inv for k, c in r.items()}
        self.rows.append((pivot, row))
        return row


@dataclass
class GradedDims:
    hw: AffineHW
    max_charge: int
    max_weight: int
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)
    cocycle: str = "standard"

    def dim(self, r1: int, r2: int, s: int) -> int:
        if min(r1, r2) < 0 or s < 0:
            return 0
        if r1 + r2 > self.max_charge or s > self.max_weight:
            raise KeyError(f"({r1}, {r2}, {s}) outside the computed window")
        return self.entries.get((r1, r2, s), 0)

    def keys(self) -> Iterable[tuple[int, int, int]]:
        for r1 in range(self.max_charge + 1):
            for r2 in range(self.max_charge + 1 - r1):
                for s in range(self.max_weight + 1):
                    yield (r1, r2, s)

    def to_dict(self) -> dict:
        return {
            "weight": list(self.hw.as_tuple()),
            "C": self.max_charge,
            "S": self.max_weight,
            "entries": [
                {"r1": r1, "r2": r2, "s": s, "dim": d}
                for (r1, r2, s), d in sorted(self.entries.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict, cocycle: str = "standard") -> GradedDims:
        entries = {(e["r1"], e["r2"], e["s"]): int(e["dim"]) for e in d["entries"]}
        return cls(AffineHW(*d["weight"]), d["C"], d["S"], entries, cocycle)


def principal_dims(
    hw: AffineHW,
    max_charge: int,
    max_weight: int,
    *,
    cocycle: str = "standard",
    budget: int = DEFAULT_BUDGET,
    reverse: bool = False,
) -> GradedDims:
    """Dimensions of W(hw)'_{r1, r2; s} for r1 + r2 <= max_charge, s <= max_weight.

    ``reverse`` flips the order in which generators and modes are tried; the
    fixed point does not depend on it.
    """
    if hw.level * max(max_charge, 1) * max(max_weight, 1) > budget:
        raise BudgetExceeded(
            f"k*C*S = {hw.level * max_charge * max_weight} exceeds budget {budget}"
        )
    if cocycle not in COCYCLES:
        raise ValueError(f"unknown cocycle {cocycle!r}")
    blocks: dict[tuple[int, int, int], RowEchelon] = defaultdict(RowEchelon)
    start = highest_weight_vector(hw)
    blocks[(0, 0, 0)].insert(start)
    queue = deque([((0, 0, 0), start)])
    gens = (2, 1) if reverse else (1, 2)
    while queue:
        (r1, r2, w), vec = queue.popleft()
        if r1 + r2 >= max_charge:
            continue
        for j in gens:
            modes = range(w - max_weight, w + 1)
            for m in (reversed(modes) if reverse else modes):
                image = apply_mode(j, m, vec, cocycle)
                if not image:
                    continue
                key = (r1 + (j == 1), r2 + (j == 2), w - m)
                row = blocks[key].insert(image)
                if row is not None:
                    queue.append((key, row))
    entries = {k: len(b) for k, b in blocks.items() if len(b)}
    return GradedDims(hw, max_charge, max_weight, entries, cocycle)


def cache_path(cache_dir: str | os.PathLike, hw: AffineHW, max_charge: int, max_weight: int,
               cocycle: str = "standard") -> Path:
    k0, k1, k2 = hw.as_tuple()
    name = f"dims-v{FORMAT_VERSION}-{k0}_{k1}_{k2}-C{max_charge}-S{max_weight}-{cocycle}.json"
    return Path(cache_dir) / name


def cached_principal_dims(
    hw: AffineHW,
    max_charge: int,
    max_weight: int,
    cache_dir: str | os.PathLike | None,
    **kwargs,
) -> GradedDims:
    cocycle = kwargs.get("cocycle", "standard")
    if cache_dir is None:
        return principal_dims(hw, max_charge, max_weight, **kwargs)
    path = cache_path(cache_dir, hw, max_charge, max_weight, cocycle)
    if path.exists():
        try:
            return GradedDims.from_dict(json.loads(path.read_text()), cocycle)
        except (ValueError, KeyError):
            pass  # unreadable cache entries are recomputed
    dims = principal_dims(hw, max_charge, max_weight, **kwargs)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dims.to_json())
    return dims


@dataclass
class ExactnessReport:
    k: int
    i: int
    max_charge: int
    max_weight: int
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def exactness_check(k: int, i: int, max_charge: int, max_weight: int, **kwargs) -> ExactnessReport:
    """Dimension additivity along both families of short exact sequences.

    First family: dim A(i) = dim A(i-1) + dim C shifted by (i, 0; r1 - r2) where
    A(t) = t*L0 + (k-t)*L1 and C = i*L1 + (k-i)*L2. The second family is the
    mirror image with L1 and L2 (and the charges) exchanged.
    """
    if not 1 <= i <= k:
        raise ValueError(f"need 1 <= i <= k, got i={i}, k={k}")
    C, S = max_charge, max_weight
    # The kernel term is read at weight s - r1 + r2 <= S + C.
    first = (
        principal_dims(AffineHW(i, k - i, 0), C, S, **kwargs),
        principal_dims(AffineHW(i - 1, k - i + 1, 0), C, S, **kwargs),
        principal_dims(AffineHW(0, i, k - i), C, S + C, **kwargs),
    )
    second = (
        principal_dims(AffineHW(i, 0, k - i), C, S, **kwargs),
        principal_dims(AffineHW(i - 1, 0, k - i + 1), C, S, **kwargs),
        principal_dims(AffineHW(0, k - i, i), C, S + C, **kwargs),
    )
    report = ExactnessReport(k, i, C, S)
    for seq, (mid, right, left) in (("sequence", first), ("sequence'", second)):
        for r1, r2, s in mid.keys():
            if seq == "sequence":
                kernel = left.dim(r1 - i, r2, s - r1 + r2)
            else:
                kernel = left.dim(r1, r2 - i, s + r1 - r2)
            lhs = mid.dim(r1, r2, s)
            rhs = right.dim(r1, r2, s) + kernel
            report.checked += 1
            if lhs != rhs:
                report.failures.append(
                    {"sequence": seq, "r1": r1, "r2": r2, "s": s, "middle": lhs, "sum": rhs}
                )
    return report
