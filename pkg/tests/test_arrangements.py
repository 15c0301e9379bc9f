import pytest
from hypothesis import given, settings, strategies as st

from unexpcurves.arrangements import (
    LineArrangement,
    addition_deletion,
    c2,
    deg_jacobian,
    freeness,
    incidence_signature,
    jacobian_dim,
    milnor_total,
    modular_points,
    restriction_count,
    shallow_adddel_certificate,
    singular_points,
    supersolvable,
)
from unexpcurves.catalog import build, star_random
from unexpcurves.exactfield import QQ, PrimeField
from unexpcurves.schemes import GenericMode


def test_singular_points_of_triangle():
    A = LineArrangement(QQ, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert sorted(ip.multiplicity for ip in singular_points(A)) == [2, 2, 2]
    assert milnor_total(A) == 3


@pytest.mark.parametrize("name", ["b3", "example20_a", "a_ab"])
def test_deg_jacobian_equals_milnor_sum(name):
    A = build(name, {"a": 2, "b": 4} if name == "a_ab" else None)
    assert deg_jacobian(A) == milnor_total(A)


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 7), st.integers(0, 99))
def test_deg_jacobian_generic_lines(d, seed):
    A = star_random(QQ, d, seed=seed)
    assert deg_jacobian(A) == milnor_total(A) == d * (d - 1) // 2


def test_h19_jacobian_tail_and_c2():
    A = build("h19")
    assert jacobian_dim(A, 25) == 243
    assert jacobian_dim(A, 26) == 244
    assert deg_jacobian(A) == 243
    assert c2(A) == 81


def test_supersolvable_a_ab():
    A = build("a_ab", {"a": 3, "b": 5})
    assert supersolvable(A) == (3, 5)
    assert modular_points(A)


def test_star_is_not_supersolvable():
    assert supersolvable(star_random(QQ, 6, seed=2)) is None


def test_addition_deletion_on_b3():
    A = build("b3")
    n = restriction_count(A, 0)
    out = addition_deletion(A, 0, {"A": (3, 5)})
    assert out["restriction_count"] == n
    assert out["verdict"] in ("A_prime free", "Inconsistent")
    bad = addition_deletion(A, 0, {"A": (3, 5), "restriction": n + 1})
    assert bad["verdict"] == "Inconsistent"


def test_addition_deletion_needs_claims():
    with pytest.raises(ValueError):
        addition_deletion(build("b3"), 0, {})


def test_shallow_certificate_for_example20_a():
    cert = shallow_adddel_certificate(build("example20_a"))
    assert cert is None or tuple(cert["A"]) == (7, 10)


def test_freeness_reports():
    assert freeness(build("b3"), GenericMode.probe()).free is True
    rep = freeness(build("example20_a"), GenericMode.probe())
    assert rep.free is True and rep.splitting == (7, 10)


def test_freeness_flags_char_dividing_degree():
    A = build("a_ab", {"a": 2, "b": 4}, PrimeField(7))
    rep = freeness(A, GenericMode.probe())
    assert rep.char_divides_degree
    assert rep.c2 is None


def test_incidence_signature_invariant_under_reordering():
    A = build("b3")
    B = LineArrangement(QQ, list(reversed(A.forms)))
    assert incidence_signature(A) == incidence_signature(B)


def test_repeated_line_rejected():
    with pytest.raises(ValueError):
        LineArrangement(QQ, [(1, 0, 0), (2, 0, 0)])
