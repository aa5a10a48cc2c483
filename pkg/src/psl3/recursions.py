"""The q-difference equations between principal-subspace characters.

Each identity is written as an :class:`~psl3.dsl.IdentityExpr` whose value must
vanish. ``A(t)`` below is t*L0 + (k-t)*L1 and ``B(t)`` is t*L0 + (k-t)*L2.

========== ==========================================================
SHIFT1     chi'_{kL1}(x1, x2) = chi'_{kL0}(x1 q, x2)
SHIFT2     chi'_{kL2}(x1, x2) = chi'_{kL0}(x1, x2 q)
SEQ1       A(i) = x1^i q^i chi'_{iL1+(k-i)L2}(x1 q, x2/q) + A(i-1)
SEQ2       B(i) = x2^i q^i chi'_{(k-i)L1+iL2}(x1/q, x2 q) + B(i-1)
INV1       chi'_{iL1+(k-i)L2} = x1^-i [A(i) - A(i-1)](x1/q, x2 q)
INV2       chi'_{(k-i)L1+iL2} = x2^-i [B(i) - B(i-1)](x1 q, x2/q)
FOUR1      four-term equation linking A(i), A(i-1), B(k-i), B(k-i-1)
FOUR2      its mirror image
BOUNDARY   the i = k equation linking (k-1)L0+L1, (k-1)L0+L2, kL1, kL2
LEVEL1A/B  the two level-1 recursions for chi_{W(L0)}
========== ==========================================================
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .dsl import Arg, IdentityExpr, Term, eval_identity, normalising_shift, pretty
from .qseries import Series

TAGS = (
    "SHIFT1", "SHIFT2", "SEQ1", "SEQ2", "INV1", "INV2",
    "FOUR1", "FOUR2", "BOUNDARY", "LEVEL1A", "LEVEL1B",
)
_WITH_I = {"SEQ1", "SEQ2", "INV1", "INV2", "FOUR1", "FOUR2"}


class ParameterRangeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class IdentityID:
    tag: str
    k: int
    i: int | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ParameterRangeError(f"unknown identity {self.tag!r}")
        k, i = self.k, self.i
        if k < 1:
            raise ParameterRangeError(f"{self.tag}: level must be >= 1")
        if self.tag in _WITH_I:
            if i is None:
                raise ParameterRangeError(f"{self.tag} needs a parameter i")
            hi = k - 1 if self.tag.startswith("FOUR") else k
            if not 1 <= i <= hi:
                raise ParameterRangeError(f"{self.tag} needs 1 <= i <= {hi}, got i={i} (k={k})")
        elif i is not None:
            raise ParameterRangeError(f"{self.tag} takes no parameter i")
        if self.tag.startswith("LEVEL1") and k != 1:
            raise ParameterRangeError(f"{self.tag} only holds at level 1")

    def __str__(self) -> str:
        return self.tag if self.i is None else f"{self.tag}(i={self.i})"


def _chi(sign, weight, a1=0, a2=0, x1=0, x2=0, q=0) -> Term:
    return Term(sign, tuple(weight), (Arg("x1", a1), Arg("x2", a2)), x1, x2, q)


def identity_expr(ident: IdentityID) -> IdentityExpr:
    """The identity in the form (left side) - (right side)."""
    k, i, tag = ident.k, ident.i, ident.tag

    def A(t):
        return (t, k - t, 0)

    def B(t):
        return (t, 0, k - t)

    if tag == "SHIFT1":
        terms = [_chi(1, (0, k, 0)), _chi(-1, (k, 0, 0), a1=1)]
    elif tag == "SHIFT2":
        terms = [_chi(1, (0, 0, k)), _chi(-1, (k, 0, 0), a2=1)]
    elif tag == "SEQ1":
        terms = [_chi(1, A(i)), _chi(-1, (0, i, k - i), 1, -1, x1=i, q=i), _chi(-1, A(i - 1))]
    elif tag == "SEQ2":
        terms = [_chi(1, B(i)), _chi(-1, (0, k - i, i), -1, 1, x2=i, q=i), _chi(-1, B(i - 1))]
    elif tag == "INV1":
        terms = [
            _chi(1, (0, i, k - i)),
            _chi(-1, A(i), -1, 1, x1=-i),
            _chi(1, A(i - 1), -1, 1, x1=-i),
        ]
    elif tag == "INV2":
        terms = [
            _chi(1, (0, k - i, i)),
            _chi(-1, B(i), 1, -1, x2=-i),
            _chi(1, B(i - 1), 1, -1, x2=-i),
        ]
    elif tag == "FOUR1":
        terms = [
            _chi(1, A(i)),
            _chi(-1, A(i - 1)),
            _chi(1, (k - i - 1, 0, i + 1), 2, -2, x1=i, x2=i - k, q=k),
            _chi(-1, (k - i, 0, i), 2, -2, x1=i, x2=i - k, q=k),
        ]
    elif tag == "FOUR2":
        terms = [
            _chi(1, B(i)),
            _chi(-1, B(i - 1)),
            _chi(1, (k - i - 1, i + 1, 0), -2, 2, x1=i - k, x2=i, q=k),
            _chi(-1, (k - i, i, 0), -2, 2, x1=i - k, x2=i, q=k),
        ]
    elif tag == "BOUNDARY":
        terms = [
            _chi(1, (k - 1, 1, 0)),
            _chi(-1, (k - 1, 0, 1)),
            _chi(1, (0, k, 0), 1, -1, x1=k, q=k),
            _chi(-1, (0, 0, k), -1, 1, x2=k, q=k),
        ]
    elif tag == "LEVEL1A":
        terms = [_chi(1, (1, 0, 0)), _chi(-1, (1, 0, 0), a1=1), _chi(-1, (1, 0, 0), 2, -1, x1=1, q=1)]
    else:  # LEVEL1B
        terms = [_chi(1, (1, 0, 0)), _chi(-1, (1, 0, 0), a2=1), _chi(-1, (1, 0, 0), -1, 2, x2=1, q=1)]
    return IdentityExpr(tuple(terms))


def residual(ident: IdentityID, max_charge: int, s_max: int, characters=None) -> Series:
    """Left minus right side, cleared of negative x-powers, exact on the window.

    Every input character is computed far enough in q (via
    :func:`~psl3.qseries.required_q_order`) that the returned coefficients for
    charge <= max_charge and q-power <= s_max are final.
    """
    return eval_identity(identity_expr(ident), max_charge, s_max, characters)


def admissible_identities(k: int) -> list[IdentityID]:
    out = []
    for tag in TAGS:
        if tag.startswith("LEVEL1"):
            if k == 1:
                out.append(IdentityID(tag, k))
        elif tag.startswith("FOUR"):
            out.extend(IdentityID(tag, k, i) for i in range(1, k))
        elif tag in _WITH_I:
            out.extend(IdentityID(tag, k, i) for i in range(1, k + 1))
        else:
            out.append(IdentityID(tag, k))
    return out


@dataclass
class IdentityResult:
    ident: IdentityID
    passed: bool
    certified: tuple[int, int, int]  # (max_charge, s_min, s_max) of the residual
    first_failure: dict | None = None
    expression: str = ""

    def to_dict(self) -> dict:
        c, lo, hi = self.certified
        return {
            "id": self.ident.tag,
            "i": self.ident.i,
            "pass": self.passed,
            "firstFailure": self.first_failure,
            "certified": {"C": c, "qWindow": [lo, hi]},
        }


@dataclass
class VerificationReport:
    level: int
    max_charge: int
    s_max: int
    results: list[IdentityResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "window": {"C": self.max_charge, "sMax": self.s_max},
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def check_identity(ident: IdentityID, max_charge: int, s_max: int, characters=None) -> IdentityResult:
    expr = identity_expr(ident)
    res = eval_identity(expr, max_charge, s_max, characters)
    env = res.envelope
    failure = None
    first = res.first_nonzero()
    if first is not None:
        (r1, r2, s), c = first
        x1, x2 = normalising_shift(expr)
        failure = {"r1": r1, "r2": r2, "s": s, "coeff": str(c), "clearedBy": {"x1": x1, "x2": x2}}
    return IdentityResult(
        ident, first is None, (env.max_charge, env.s_min, env.s_max), failure, pretty(expr)
    )


def verify_all(k: int, max_charge: int, s_max: int, characters=None) -> VerificationReport:
    if k < 1:
        raise ParameterRangeError("level must be >= 1")
    report = VerificationReport(k, max_charge, s_max)
    for ident in admissible_identities(k):
        report.results.append(check_identity(ident, max_charge, s_max, characters))
    return report
