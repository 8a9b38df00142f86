from fractions import Fraction
from itertools import product

import pytest
from flint import fmpz_poly
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from oracles import rank as oracle_rank
from tensor_envelope import gf
from tensor_envelope.linalg import Matrix, Subspace
from tensor_envelope.scalar import (FunctionField, PoleError, RationalField, Scalar, ScalarParseError,
                                    format_scalar, make_field, parse_scalar)

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

small_int = st.integers(-4, 4)
poly = st.lists(small_int, min_size=1, max_size=4).map(fmpz_poly)
nonzero_poly = poly.filter(lambda p: not p.is_zero())
scalars = st.builds(lambda n, d: Scalar(n, d), poly, nonzero_poly)
nonzero_scalars = scalars.filter(bool)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


# ------------------------------------------------------------ Q(t) field axioms
@SETTINGS
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + Scalar(0) == a and a * Scalar(1) == a
    assert a - a == Scalar(0)


@SETTINGS
@given(nonzero_scalars, scalars)
def test_division(a, b):
    assert a * a.inverse() == Scalar(1)
    assert (b / a) * a == b


@SETTINGS
@given(scalars)
def test_canonical_form(a):
    # reduced and with a positive leading denominator coefficient
    assert a.num.gcd(a.den).is_one() or a.num.is_zero()
    assert a.den.leading_coefficient() > 0
    assert hash(a) == hash(Scalar(a.num * 3, a.den * 3))


@SETTINGS
@given(scalars)
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


@pytest.mark.parametrize("text,value", [
    ("t", Scalar.t()), ("2*t^2-1", Scalar(fmpz_poly([-1, 0, 2]))),
    ("(t-1)/(t+1)", Scalar(fmpz_poly([-1, 1]), fmpz_poly([1, 1]))),
    ("-3/4", Scalar.from_rational(Fraction(-3, 4))), ("2t", Scalar(fmpz_poly([0, 2]))),
])
def test_parse_examples(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "t+", "(t", "x", "1//2", "t^t"])
def test_parse_errors(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text)


@SETTINGS
@given(scalars, scalars, rationals)
def test_specialization_is_a_homomorphism(a, b, v):
    try:
        sa, sb = a.evaluate(v), b.evaluate(v)
    except PoleError:
        assume(False)
    assert (a + b).evaluate(v) == sa + sb
    try:
        assert (a * b).evaluate(v) == sa * sb
    except PoleError:
        # a product may only have a pole where a factor has one
        raise AssertionError("product acquired a pole")


def test_pole_is_reported():
    x = Scalar(1, fmpz_poly([-1, 1]))
    with pytest.raises(PoleError):
        x.specialize(1)
    assert x.specialize(3) == Scalar.from_rational(Fraction(1, 2))


@SETTINGS
@given(rationals, rationals)
def test_constants_match_fractions(x, y):
    a, b = Scalar.from_rational(x), Scalar.from_rational(y)
    assert (a + b).to_fraction() == x + y
    assert (a * b).to_fraction() == x * y


def test_fields():
    assert isinstance(make_field("generic"), FunctionField)
    F = make_field("3/2")
    assert isinstance(F, RationalField) and F.param_power(2) == F(Fraction(9, 4))
    assert F(parse_scalar("t+1")) == F(Fraction(5, 2))
    assert make_field("generic").param_power(3) == Scalar.t() ** 3


# ------------------------------------------------------------ matrices
int_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@SETTINGS
@given(int_matrix)
def test_rank_and_nullspace_over_q(rows):
    F = make_field("0")
    M = Matrix.from_rows(F, rows)
    want = oracle_rank([[Fraction(x) for x in r] for r in rows])
    assert M.rank() == want
    K = M.nullspace()
    assert K.ncols == M.ncols - want
    assert (M @ K).is_zero()
    assert K.rank() == K.ncols


@SETTINGS
@given(int_matrix)
def test_rank_over_function_field_with_parameter(rows):
    # adding t to the first entry keeps the rank at least that over Q at t = 0
    F = make_field("generic")
    t = Scalar.t()
    Mt = Matrix.from_rows(F, [[Scalar(x) + (t if (i, j) == (0, 0) else 0) for j, x in enumerate(r)]
                              for i, r in enumerate(rows)])
    M0 = Matrix.from_rows(make_field("0"), rows)
    r = Mt.rank()
    assert r >= M0.rank()
    K = Mt.nullspace()
    assert K.ncols == Mt.ncols - r and (Mt @ K).is_zero()


@SETTINGS
@given(int_matrix)
def test_solve_consistency(rows):
    F = make_field("0")
    M = Matrix.from_rows(F, rows)
    x = Matrix.from_rows(F, [[1] for _ in range(M.ncols)])
    B = M @ x
    X = M.solve(B)
    assert X is not None and M @ X == B


def test_inverse_and_det():
    for F in (make_field("0"), make_field("generic")):
        t = F(2) if not F.is_generic else F.param
        M = Matrix.from_rows(F, [[1, t], [F(1), F(3)]])
        assert M.det() == F(3) - t
        assert M @ M.inverse() == Matrix.identity(F, 2)
    with pytest.raises(ZeroDivisionError):
        Matrix.from_rows(make_field("0"), [[1, 2], [2, 4]]).inverse()


def test_subspace_operations():
    F = make_field("0")
    U = Subspace.span(F, 3, [[1, 0, 0], [0, 1, 0]])
    V = Subspace.span(F, 3, [[0, 1, 0], [0, 0, 1]])
    assert U.intersect(V).dim == 1 and U.sum(V).dim == 3
    assert U.contains(Matrix.from_rows(F, [[2], [3], [0]]))


# ------------------------------------------------------------ prime fields
@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(1, 3), st.data())
def test_gf_rank_counts_the_row_space(q, r, c, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    span = {tuple(sum(a * x for a, x in zip(coeffs, col)) % q for col in zip(*rows))
            for coeffs in product(range(q), repeat=r)}
    assert len(span) == q ** gf.rank(rows, c, q)
    for v in gf.nullspace(rows, c, q):
        assert all(sum(a * b for a, b in zip(row, v)) % q == 0 for row in rows)
