import itertools
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from unexpcurves.catalog import build_points
from unexpcurves.errors import PointInZ
from unexpcurves.exactfield import QQ, PrimeField
from unexpcurves.schemes import (
    GenericMode,
    PointConfig,
    ProjPoint,
    delta_hf,
    fatpoint_dim,
    generic_fatpoint_dim,
    hilbert_function,
    ideal_basis,
    ideal_dim,
    max_collinear,
    spanned_lines,
)

from conftest import X, Y, Z_


def _monos(t):
    return [X**a * Y**b * Z_**(t - a - b) for a in range(t, -1, -1) for b in range(t - a, -1, -1)]


def sympy_ideal_dim(pts, t):
    monos = _monos(t)
    if not pts:
        return len(monos)
    M = sympy.Matrix([[m.subs({X: p[0], Y: p[1], Z_: p[2]}) for m in monos] for p in pts])
    return len(monos) - M.rank()


def sympy_fat_dim(pts, P, j, t):
    """Forms of degree t through pts with all (j-1)-st partials vanishing at P (char 0)."""
    monos = _monos(t)
    cs = sympy.symbols(f"c0:{len(monos)}")
    G = sum(c * m for c, m in zip(cs, monos))
    eqs = [G.subs({X: p[0], Y: p[1], Z_: p[2]}) for p in pts]
    if j >= 1:
        for e in itertools.combinations_with_replacement((X, Y, Z_), j - 1):
            eqs.append((sympy.diff(G, *e) if e else G).subs({X: P[0], Y: P[1], Z_: P[2]}))
    if not eqs:
        return len(monos)
    M = sympy.Matrix([[sympy.diff(eq, c) for c in cs] for eq in eqs])
    return len(monos) - M.rank()


points = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 2)), min_size=1, max_size=9)


def _config(raw):
    pts = []
    for p in raw:
        if p == (0, 0, 0):
            continue
        q = ProjPoint(QQ, p)
        if q not in pts:
            pts.append(q)
    return PointConfig(QQ, pts) if pts else None


def test_point_normalization():
    assert ProjPoint(QQ, (2, 4, 6)).coords == (1, 2, 3)
    assert ProjPoint(PrimeField(7), (0, 3, 1)).coords == (0, 1, 5)
    with pytest.raises(ValueError):
        ProjPoint(QQ, (0, 0, 0))


def test_duplicate_points_rejected():
    with pytest.raises(ValueError):
        PointConfig(QQ, [(1, 0, 0), (2, 0, 0)])


@settings(max_examples=40, deadline=None)
@given(points, st.integers(0, 4))
def test_ideal_dim_matches_sympy(raw, t):
    Z = _config(raw)
    if Z is None:
        return
    assert ideal_dim(Z, t) == sympy_ideal_dim([p.coords for p in Z], t)
    for G in ideal_basis(Z, t):
        assert all(G.vanishes_at(p) for p in Z)


@settings(max_examples=25, deadline=None)
@given(points, st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 3)), st.integers(1, 3))
def test_fatpoint_dim_matches_derivative_conditions(raw, P, j):
    Z = _config(raw)
    if Z is None or ProjPoint(QQ, P) in Z:
        return
    t = j + 1
    assert fatpoint_dim(Z, P, j, t) == sympy_fat_dim([p.coords for p in Z], P, j, t)


def test_fatpoint_at_point_of_z_rejected():
    Z = PointConfig(QQ, [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(PointInZ):
        fatpoint_dim(Z, (1, 0, 0), 1, 2)


def test_hilbert_function_of_three_collinear_points():
    Z = PointConfig(QQ, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert [hilbert_function(Z, t) for t in range(4)] == [1, 2, 3, 3]
    assert delta_hf(Z) == [1, 1, 1]


def test_h19_delta_hf():
    Z = build_points("h19")
    assert delta_hf(Z) == [1, 2, 3, 4, 4, 4, 1]


def test_collinearity():
    Z = build_points("a_ab", {"a": 3, "b": 13})
    assert max_collinear(Z) == 14
    assert max(len(v) for v in spanned_lines(Z).values()) == 14


def test_symbolic_and_probe_agree_on_fano():
    Z = build_points("fano")
    v, cert = generic_fatpoint_dim(Z, 2, 3, GenericMode.probe())
    assert v == 1
    assert cert.level == "Certified"


def test_probe_upper_bounds_symbolic():
    rng = random.Random(5)
    pts = {ProjPoint(QQ, (rng.randint(-4, 4), rng.randint(-4, 4), 1)) for _ in range(7)}
    Z = PointConfig(QQ, sorted(pts, key=str))
    for j in range(1, 4):
        s, _ = generic_fatpoint_dim(Z, j, j + 1, GenericMode.symbolic())
        p, _ = generic_fatpoint_dim(Z, j, j + 1, GenericMode.probe(samples=1, seed=9))
        assert p >= s
