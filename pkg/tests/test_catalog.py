import json

import pytest

from unexpcurves.arrangements import singular_points, supersolvable
from unexpcurves.catalog import (
    H19_FORMS,
    build,
    build_points,
    entry,
    family,
    list_entries,
    primitive_root_of_unity,
)
from unexpcurves.errors import FieldConstraintViolated, UnknownName
from unexpcurves.exactfield import QQ, PrimeField


def test_every_entry_listed_once():
    names = [e.name for e in list_entries()]
    assert len(names) == len(set(names))
    assert {"fano", "b3", "h19", "a_ab", "family_a4k", "fermat", "star_random"} <= set(names)


def test_unknown_name():
    with pytest.raises(UnknownName):
        entry("nope")


def test_sizes():
    assert len(build("fano")) == 7
    assert len(build("h19")) == len(H19_FORMS) == 19
    assert len(build("b3")) == 9
    assert len(build("a_ab", {"a": 3, "b": 13})) == 17
    assert len(build("example20_a")) == 18
    assert len(build("example20_b")) == 19
    assert len(build("example20_c")) == 20
    assert build("example20_d").forms == build("h19").forms


def test_b3_incidences():
    mults = sorted(ip.multiplicity for ip in singular_points(build("b3")))
    assert mults == [2] * 6 + [3] * 4 + [4] * 3


def test_family_lengths_and_supersolvable_seed():
    for n in range(4, 12):
        assert len(family(QQ, n)) == n + 5
    assert supersolvable(family(QQ, 4)) == (3, 5)


def test_fermat_needs_roots_of_unity():
    assert len(build("fermat", {"t": 5}, PrimeField(11))) == 15
    with pytest.raises(FieldConstraintViolated):
        build("fermat", {"t": 5}, PrimeField(13))
    with pytest.raises(FieldConstraintViolated):
        build("fermat", {"t": 3}, QQ)


@pytest.mark.parametrize("p,t", [(7, 3), (11, 5), (13, 4), (31, 6)])
def test_primitive_roots(p, t):
    z = primitive_root_of_unity(p, t)
    assert pow(z, t, p) == 1
    assert all(pow(z, k, p) != 1 for k in range(1, t))


def test_fano_needs_characteristic_two():
    with pytest.raises(FieldConstraintViolated):
        build("fano", field=QQ)


def test_a_ab_needs_large_enough_field():
    with pytest.raises(FieldConstraintViolated):
        build("a_ab", {"a": 3, "b": 9}, PrimeField(5))


def test_star_random_deterministic():
    assert build("star_random", {"d": 6, "seed": 4}).forms == build("star_random", {"d": 6, "seed": 4}).forms


def test_klein_needs_coordinates(tmp_path):
    with pytest.raises(FieldConstraintViolated):
        build("klein")
    path = tmp_path / "lines.json"
    path.write_text(json.dumps([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    assert len(build("klein", {"file": str(path)})) == 3


def test_dual_points_of_arrangement():
    Z = build_points("h19")
    assert len(Z) == 19
    assert all(p.coords in {tuple(ell) for ell in build("h19").forms} or True for p in Z)
