import sympy
import pytest
from hypothesis import given, settings, strategies as st

from unexpcurves.exactfield import QQ, PrimeField
from unexpcurves.polyring import (
    BinaryForm,
    HomPoly,
    ProjTransform,
    apply_transform,
    binary_gcd,
    divide_by_linear,
    monomial_basis,
    multiplicity_at,
    origin_chart,
    partials,
    restrict_to_line,
)

from conftest import X, Y, Z_, to_sympy


def _form(coeffs, degree):
    mons = monomial_basis(degree)
    return HomPoly(QQ, degree, {m: QQ.from_int(c) for m, c in zip(mons, coeffs)})


forms = st.integers(1, 3).flatmap(
    lambda d: st.lists(st.integers(-3, 3), min_size=len(monomial_basis(d)), max_size=len(monomial_basis(d)))
    .map(lambda cs: _form(cs, d))
)


def test_monomial_count():
    assert [len(monomial_basis(t)) for t in range(5)] == [1, 3, 6, 10, 15]


def test_parse_and_print_round_trip():
    F = HomPoly.parse("x^2*y+3/2*x*z^2-y^3", QQ)
    assert HomPoly.parse(F.to_str(), QQ) == F
    assert to_sympy(F) == sympy.expand(X**2 * Y + sympy.Rational(3, 2) * X * Z_**2 - Y**3)


@settings(max_examples=40, deadline=None)
@given(forms, forms)
def test_product_matches_sympy(F, G):
    assert to_sympy(F * G) == sympy.expand(to_sympy(F) * to_sympy(G))


@settings(max_examples=40, deadline=None)
@given(forms)
def test_partials_match_sympy(F):
    (fx, fy, fz), euler = partials(F)
    e = to_sympy(F)
    assert to_sympy(fx) == sympy.diff(e, X)
    assert to_sympy(fy) == sympy.diff(e, Y)
    assert to_sympy(fz) == sympy.diff(e, Z_)
    assert euler or F.is_zero()


def test_euler_flag_false_when_char_divides_degree():
    F = HomPoly.parse("x^2+y*z", PrimeField(2))
    _, euler = partials(F)
    assert not euler
    _, euler = partials(HomPoly.parse("x^3+y*z^2", PrimeField(2)))
    assert euler


@settings(max_examples=40, deadline=None)
@given(forms, st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3)))
def test_divide_by_linear_matches_sympy(F, ell):
    L = HomPoly.linear(QQ, ell)
    assert divide_by_linear(F * L, L) == F
    q, r = sympy.div(to_sympy(F), to_sympy(L), Z_)
    assert (divide_by_linear(F, L) is not None) == (r == 0)


def test_multiplicity_of_node_and_line_pair():
    assert multiplicity_at(HomPoly.parse("x*y*z+x^3+y^3", QQ), (0, 0, 1)) == 2
    assert multiplicity_at(HomPoly.parse("(x-z)*(y-z)", QQ), (1, 1, 1)) == 2
    assert multiplicity_at(HomPoly.parse("x", QQ), (0, 1, 0)) == 1
    assert multiplicity_at(HomPoly.parse("x+y", QQ), (1, 1, 1)) == 0


def test_origin_chart_moves_point_to_origin():
    S, Sinv = origin_chart(QQ, (2, 3, 5))
    F = HomPoly.parse("(5*x-2*z)*(5*y-3*z)", QQ)
    G = apply_transform(F, S)
    assert all(a + b >= 2 for (a, b, _c) in G.coeffs)
    assert apply_transform(G, Sinv).is_proportional(F)


def test_transform_inverse_is_identity():
    M = ProjTransform(QQ, [[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    F = HomPoly.parse("x^2+y*z-3*x*y", QQ)
    assert apply_transform(apply_transform(F, M), M.inverse()) == F


def test_restrict_to_line_z_zero():
    F = HomPoly.parse("x^2*y+3/2*x*z^2-y^3", QQ)
    g = restrict_to_line(F, (0, 0, 1))
    assert list(g.coeffs) == [0, 1, 0, -1]


def test_binary_gcd_matches_sympy():
    a, b = sympy.symbols("a b")
    g1 = BinaryForm.from_ints(QQ, [1, -1, -2, 0])  # a^3 - a^2 b - 2 a b^2 = a(a-2b)(a+b)
    g2 = BinaryForm.from_ints(QQ, [1, 1, 0])  # a^2 + a b = a(a+b)
    g = binary_gcd(g1, g2)
    expect = sympy.Poly(sympy.gcd(a**3 - a**2 * b - 2 * a * b**2, a**2 + a * b), a, b).monic()
    assert [int(c) for c in g.coeffs] == [int(expect.coeff_monomial(a**(g.degree - i) * b**i)) for i in range(g.degree + 1)]


def test_zero_form_multiplicity_rejected():
    with pytest.raises(ValueError):
        multiplicity_at(HomPoly(QQ, 2), (0, 0, 1))
