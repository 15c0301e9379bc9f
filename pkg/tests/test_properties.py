"""Randomized invariants tying the modules together; configurations are drawn by hypothesis."""

from hypothesis import HealthCheck, assume, given, settings, strategies as st

from unexpcurves.arrangements import c2, milnor_total
from unexpcurves.curves import parametrize
from unexpcurves.errors import CharDividesDegree, OutOfRange
from unexpcurves.exactfield import QQ, PrimeField
from unexpcurves.invariants import compute_splitting, compute_tZ, ramp, unexpected_report
from unexpcurves.lefschetz import slp_unexpected_equivalence
from unexpcurves.schemes import GenericMode, PointConfig, ProjPoint, dual_lines, generic_fatpoint_dim

FIELDS = {"Q": QQ, "GF101": PrimeField(101)}
SETTINGS = settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def configs(draw, min_size=3, max_size=9):
    field = FIELDS[draw(st.sampled_from(sorted(FIELDS)))]
    raw = draw(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)),
                        min_size=min_size, max_size=max_size + 4))
    pts = []
    for c in raw:
        if all(x % 101 == 0 for x in c):
            continue
        P = ProjPoint(field, c)
        if P not in pts:
            pts.append(P)
    assume(min_size <= len(pts))
    return PointConfig(field, pts[:max_size])


@SETTINGS
@given(configs())
def test_unexpectedness_criteria_agree(Z):
    rep = unexpected_report(Z, GenericMode.probe())
    assert len(set(rep.criteria.values())) == 1
    assert rep.unexpected == bool(rep.unexpected_degrees)


@SETTINGS
@given(configs())
def test_splitting_matches_symbolic_fatpoint_dims(Z):
    sp = compute_splitting(Z, GenericMode.probe())
    a, b = sp.pair
    assert a + b == len(Z) - 1
    for j in range(0, b + 2):
        v, _ = generic_fatpoint_dim(Z, j, j + 1, GenericMode.symbolic())
        assert v == ramp(a, b, j)


@SETTINGS
@given(configs(max_size=7), st.integers(0, 10**6))
def test_probe_never_below_symbolic(Z, seed):
    for j in range(1, 4):
        s, _ = generic_fatpoint_dim(Z, j, j + 1, GenericMode.symbolic())
        p, _ = generic_fatpoint_dim(Z, j, j + 1, GenericMode.probe(samples=1, seed=seed))
        assert p >= s


@SETTINGS
@given(configs(max_size=8), st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 6)))
def test_adding_a_point_raises_t_and_m_by_at_most_one(Z, q):
    Q = ProjPoint(Z.field, q)
    assume(Q not in Z)
    mode = GenericMode.probe()
    t, m = compute_tZ(Z), compute_splitting(Z, mode).a
    Z2 = Z.add(Q)
    assert compute_tZ(Z2) - t in (0, 1)
    assert compute_splitting(Z2, mode).a - m in (0, 1)


@SETTINGS
@given(configs(max_size=8), st.integers(2, 4))
def test_slp_failure_iff_unexpected(Z, j):
    unexpected, fails = slp_unexpected_equivalence(Z, j, GenericMode.probe())
    assert unexpected == fails


@SETTINGS
@given(configs(max_size=8))
def test_chern_class_bounds_splitting_product(Z):
    A = dual_lines(Z)
    a, b = compute_splitting(Z, GenericMode.probe()).pair
    if Z.field == QQ:
        assert c2(A) == (len(A) - 1) ** 2 - milnor_total(A)
    assert c2(A) >= a * b


@SETTINGS
@given(configs(min_size=4, max_size=8))
def test_parametrization_bookkeeping(Z):
    try:
        par, rec = parametrize(Z, mode=GenericMode.probe())
    except (CharDividesDegree, OutOfRange):
        return
    assert par.n == len(rec.peeled)
    assert par.component_degree == rec.m_Z + 1 - par.n
