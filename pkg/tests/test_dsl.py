import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psl3.characters import UnsupportedFamily, georgiev_char
from psl3.dsl import (
    Arg,
    DSLSyntaxError,
    IdentityExpr,
    Term,
    eval_identity,
    parse_identity,
    pretty,
)


def test_shift_identity_in_dsl_vanishes():
    expr = parse_identity("chi(1;1,0,0)(x1*q^1,x2) - chi(1;0,1,0)(x1,x2)")
    assert eval_identity(expr, 3, 8).is_zero()


def test_single_term_is_the_character():
    expr = parse_identity("chi(1;1,0,0)(x1,x2)")
    assert eval_identity(expr, 3, 6) == georgiev_char(1, 1, 1, 3, 6)


def test_parse_structure():
    expr = parse_identity("x1^2*x2^-1*q^3*chi(2;0,1,1)(x1*q^-1, x2*q)")
    (t,) = expr.terms
    assert t == Term(1, (0, 1, 1), (Arg("x1", -1), Arg("x2", 1)), 2, -1, 3)


def test_level_mismatch_rejected():
    with pytest.raises(DSLSyntaxError):
        parse_identity("chi(2;1,0,0)(x1,x2)")


@pytest.mark.parametrize("text,offset", [
    ("chi(1;1,0,0)(x1,", 16),
    ("chi(1;1,0,0", 11),
    ("chi(1;1,0,0)(x1,x2) +", 21),
    ("chi(1;1,0,0)(x1,x1)", 16),
    ("psi(1;1,0,0)(x1,x2)", 0),
])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(DSLSyntaxError) as info:
        parse_identity(text)
    assert info.value.offset == offset


def test_general_family_rejected():
    with pytest.raises(UnsupportedFamily):
        eval_identity(parse_identity("chi(3;1,1,1)(x1,x2)"), 2, 3)


def test_swapped_arguments_mirror_the_character():
    a = eval_identity(parse_identity("chi(1;0,1,0)(x2,x1)"), 3, 6)
    b = eval_identity(parse_identity("chi(1;0,0,1)(x1,x2)"), 3, 6)
    assert a == b


def test_level_one_recursion_in_dsl():
    text = "chi(1;1,0,0)(x1,x2) - chi(1;1,0,0)(x1*q,x2) - x1*q*chi(1;1,0,0)(x1*q^2,x2*q^-1)"
    assert eval_identity(parse_identity(text), 4, 8).is_zero()


# -- properties -------------------------------------------------------------

weights = st.sampled_from([(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)])
args = st.tuples(st.sampled_from([("x1", "x2"), ("x2", "x1")]), st.integers(-2, 2), st.integers(-2, 2)).map(
    lambda a: (Arg(a[0][0], a[1]), Arg(a[0][1], a[2]))
)
terms = st.builds(
    lambda sign, w, a, x1, x2, q: Term(sign, w, a, x1, x2, q),
    st.sampled_from([1, -1]), weights, args,
    st.integers(-2, 2), st.integers(-2, 2), st.integers(-3, 3),
)
exprs = st.lists(terms, min_size=1, max_size=4).map(lambda ts: IdentityExpr(tuple(ts)))


@settings(max_examples=100, deadline=None)
@given(exprs)
def test_pretty_parse_round_trip(expr):
    assert parse_identity(pretty(expr)) == expr


@settings(max_examples=25, deadline=None)
@given(exprs.filter(lambda e: min(t.x1 for t in e.terms) >= 0 and min(t.x2 for t in e.terms) >= 0),
       st.integers(0, 2), st.integers(0, 2), st.integers(0, 3))
def test_evaluation_is_linear_in_monomials(expr, d1, d2, ds):
    C, S = 3, 5
    scaled = IdentityExpr(tuple(
        Term(t.sign, t.weight, t.args, t.x1 + d1, t.x2 + d2, t.q + ds) for t in expr.terms
    ))
    base = eval_identity(expr, C, S)
    moved = eval_identity(scaled, C + d1 + d2, S + ds)
    assert moved == base.scale_monomial(d1, d2, ds)
