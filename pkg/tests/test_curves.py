import itertools

import pytest
import sympy

from unexpcurves.catalog import build, build_points
from unexpcurves.curves import (
    common_points,
    curve_CP,
    decompose,
    decomposed_curve,
    irreducibility_by_deletion,
    irreducible_by_global_syzygy,
    least_syzygy_degree,
    mz_after_adding_dual,
    parametrize,
    unexpected_in_degree,
)
from unexpcurves.errors import OutOfRange, StructureViolation
from unexpcurves.exactfield import QQ, PrimeField
from unexpcurves.invariants import compute_splitting
from unexpcurves.polyring import multiplicity_at, partials
from unexpcurves.schemes import GenericMode, PointConfig, ProjPoint

from conftest import X, Y, Z_, to_sympy


def sympy_multiplicity(expr, P):
    """Least order of a nonvanishing partial derivative at P (characteristic 0)."""
    sub = {X: P[0], Y: P[1], Z_: P[2]}
    k = 0
    while True:
        for e in itertools.combinations_with_replacement((X, Y, Z_), k):
            if (sympy.diff(expr, *e) if e else expr).subs(sub) != 0:
                return k
        k += 1


def test_b3_unexpected_quartic():
    Z = build_points("b3")
    P = ProjPoint(QQ, (3, 7, 11))
    rec = curve_CP(Z, P, mode=GenericMode.probe())
    assert rec.F.degree == 4
    e = to_sympy(rec.F)
    for p in Z:
        assert e.subs({X: p.coords[0], Y: p.coords[1], Z_: p.coords[2]}) == 0
    assert sympy_multiplicity(e, P.coords) == 3
    assert multiplicity_at(rec.F, P) == 3


def test_b3_quartic_is_irreducible():
    Z = build_points("b3")
    rec = decompose(curve_CP(Z, ProjPoint(QQ, (3, 7, 11)), mode=GenericMode.probe()), Z)
    assert rec.peeled == []
    assert rec.irreducible_for_this_P
    assert sympy.factor_list(to_sympy(rec.F))[1][0][0].as_poly(X, Y, Z_).total_degree() == 4
    assert len(sympy.factor_list(to_sympy(rec.F))[1]) == 1


def test_fano_cubic_has_double_point():
    Z = build_points("fano")
    rec = curve_CP(Z, mode=GenericMode.symbolic())
    assert rec.F.degree == 3
    assert all(rec.F.vanishes_at(p.lift(rec.F.field)) for p in Z)


def test_h19_peels_one_line():
    Z = build_points("h19")
    rec = decompose(curve_CP(Z, mode=GenericMode.probe()), Z)
    assert len(rec.peeled) == 1
    assert rec.core.degree == 8
    assert rec.F.degree == 9
    ell, i = rec.peeled[0]
    assert ell.vanishes_at(rec.P) and ell.vanishes_at(Z[i])


def test_h19_parametrization():
    Z = build_points("h19")
    par, rec = parametrize(Z, mode=GenericMode.probe())
    assert par.n == len(rec.peeled) == 1
    assert par.component_degree == 8


def test_unexpected_in_degree_dimension():
    Z = build_points("b3")
    out = unexpected_in_degree(Z, (3, 7, 11), 4, GenericMode.probe())
    assert out["free_lines"] == 0
    assert out["dimension"] == out["predicted_dimension"] == 1
    with pytest.raises(OutOfRange):
        unexpected_in_degree(Z, (3, 7, 11), 5, GenericMode.probe())


def test_global_syzygy_of_fermat():
    A = build("fermat", {"t": 5}, PrimeField(11))
    m, syz = least_syzygy_degree(A.f, None)
    assert m == 6
    (fx, fy, fz), _ = partials(A.f)
    total = syz.s[0] * fx + syz.s[1] * fy + syz.s[2] * fz
    assert total.is_zero()


def test_global_syzygy_over_q_matches_sympy():
    A = build("b3")
    m, syz = least_syzygy_degree(A.f, None)
    f = to_sympy(A.f)
    expr = sum(to_sympy(s) * sympy.diff(f, v) for s, v in zip(syz.s, (X, Y, Z_)))
    assert sympy.expand(expr) == 0
    assert m == 3


def test_irreducibility_tests_agree_on_family():
    for k in (1, 2):
        Z = build_points("family_a4k", {"k": k})
        assert irreducibility_by_deletion(Z, GenericMode.probe())
        assert irreducible_by_global_syzygy(Z, GenericMode.probe()) in (True, None)


def test_common_points_nonempty_for_example20_a():
    F = PrimeField(23)
    Z = build_points("example20_a", field=F)
    mode = GenericMode.probe()
    pts = common_points(Z, mode)
    Q = ProjPoint(F, (-1, 2, 0))
    assert pts == [Q]
    m = compute_splitting(Z, mode).a
    assert compute_splitting(Z.add(Q), mode).a == m
    for other in [(1, 0, 0), (1, 1, 1), (0, 1, 5)]:
        R = ProjPoint(F, other)
        if R not in Z:
            assert compute_splitting(Z.add(R), mode).a == m + 1


def test_common_points_b3_by_recomputation():
    F = PrimeField(11)
    Z = build_points("b3", field=F)
    assert common_points(Z, GenericMode.probe(), check=True) == []


def test_mz_after_adding_dual_point():
    Z = build_points("a_ab", {"a": 2, "b": 4})
    mode = GenericMode.probe()
    m = compute_splitting(Z, mode).a
    for q in [(1, 5, 7), (1, 0, 0), (0, 1, 7), (1, 1, 0)]:
        Q = ProjPoint(QQ, q)
        if Q in Z:
            continue
        direct = compute_splitting(Z.add(Q), mode).a == m
        assert mz_after_adding_dual(Z, Q, mode=mode, check=False) == direct


def test_special_probe_point_is_resampled():
    # The first probe lies on the conic through the last five points, so the cubic splits off a line.
    F = PrimeField(101)
    Z = PointConfig(F, [(0, 0, 1), (0, 1, 2), (1, 0, 99), (1, 4, 0), (1, 51, 0), (1, 76, 25)])
    special = ProjPoint(F, (1, 70, 32))
    with pytest.raises(StructureViolation):
        decomposed_curve(Z, special, mode=GenericMode.probe())
    rec = decomposed_curve(Z, mode=GenericMode.probe())
    assert rec.resamples >= 1
    assert rec.peeled == [] and rec.core.degree == 3
    par, _ = parametrize(Z, mode=GenericMode.probe())
    assert par.n == 0 and par.component_degree == 3
