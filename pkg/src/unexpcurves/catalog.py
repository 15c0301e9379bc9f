"""Named configurations: point sets and line arrangements with known invariants."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from .arrangements import LineArrangement
from .errors import FieldConstraintViolated, UnknownName
from .exactfield import FieldSpec, PrimeField, Rationals
from .schemes import PointConfig, ProjPoint, cross, dot, dual_points


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # "points" or "lines"
    defaults: dict = dc_field(default_factory=dict)
    default_field: str = "Q"
    constraints: str = ""
    note: str = ""
    coordinates_required: bool = False


H19_FORMS = (
    "x", "y", "z", "x+y", "x-y", "2x+y", "2x-y", "x+z", "x-z", "y+z", "y-z",
    "x+2z", "x-2z", "y+2z", "y-2z", "x-y+z", "x-y-z", "x-y+2z", "x-y-2z",
)

ENTRIES = (
    CatalogEntry("fano", "points", {}, "Fp:2", "characteristic 2",
                 "the seven points of the Fano plane, coordinates 0 and 1"),
    CatalogEntry("b3", "lines", {}, "Q", "",
                 "B3 arrangement xyz(x^2-y^2)(x^2-z^2)(y^2-z^2), the first member of the A_4k family"),
    CatalogEntry("h19", "lines", {}, "Q", "characteristic 0 intended",
                 "nineteen lines x, y, z, x+y, ..., x-y-2z; not free, splitting (8,10)"),
    CatalogEntry("a_ab", "lines", {"a": 3, "b": 13}, "Q", "a, b >= 1",
                 "z, x+kz (0<=k<a), y+kz (0<=k<b); supersolvable with splitting (a,b)"),
    CatalogEntry("family_a4k", "lines", {"k": 1, "extra": 0, "abscissas": None}, "Q", "k >= 1, extra in 0..3",
                 "A_n for n = 4k+extra: the five-line seed xyz(x^2-y^2) followed by v, h, v, h lines"),
    CatalogEntry("fermat", "lines", {"t": 5, "axes": ""}, "Fp:11",
                 "t | p-1 over GF(p), t <= 2 over Q",
                 "linear factors of (x^t-y^t)(x^t-z^t)(y^t-z^t); axes adds x and/or y"),
    CatalogEntry("star_random", "lines", {"d": 5, "seed": 0, "bound": 20}, "Q", "",
                 "d random lines with no three concurrent"),
    CatalogEntry("example20_a", "lines", {}, "Q", "", "h19 without 2x+y; free (7,10)"),
    CatalogEntry("example20_b", "lines", {}, "Q", "", "h19 with 2x+y replaced by 2y-x; free (7,11)"),
    CatalogEntry("example20_c", "lines", {}, "Q", "", "h19 plus 2y-x; free (8,11)"),
    CatalogEntry("example20_d", "lines", {}, "Q", "",
                 "eighteen solid lines plus the long-dashed line 2x+y, which is h19 itself; not free"),
    CatalogEntry("klein", "lines", {"file": None}, "Q", "user-supplied coordinates",
                 "Klein arrangement of 21 lines; expected splitting (9,11)", True),
    CatalogEntry("wiman", "lines", {"file": None}, "Q", "user-supplied coordinates",
                 "Wiman arrangement of 45 lines; expected splitting (19,25)", True),
)


def list_entries() -> list[CatalogEntry]:
    return list(ENTRIES)


def entry(name: str) -> CatalogEntry:
    for e in ENTRIES:
        if e.name == name:
            return e
    raise UnknownName(f"no catalog entry named {name!r}")


def _lines(field: FieldSpec, forms) -> LineArrangement:
    return LineArrangement(field, list(forms))


def fano(field: FieldSpec) -> PointConfig:
    if field.characteristic != 2:
        raise FieldConstraintViolated("the Fano configuration needs characteristic 2")
    pts = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1) if (a, b, c) != (0, 0, 0)]
    Z = PointConfig(field, pts)
    assert len(Z) == 7
    return Z


def a_ab(field: FieldSpec, a: int, b: int) -> LineArrangement:
    if field.size is not None and max(a, b) > field.size:
        raise FieldConstraintViolated("the field is too small for distinct lines x+kz, y+kz")
    forms = [(0, 0, 1)] + [(1, 0, k) for k in range(a)] + [(0, 1, k) for k in range(b)]
    A = LineArrangement(field, forms)
    if len(A) != a + b + 1:
        raise FieldConstraintViolated("the field is too small for distinct lines x+kz, y+kz")
    return A


def family(field: FieldSpec, n: int, abscissas=None) -> LineArrangement:
    """A_n: seed lines a, d, i, h1, v1 then v_2, h_2, v_3, h_3, v_4, ... with v_2 at x = c_1 etc."""
    blocks = (n + 3) // 4
    cs = list(abscissas) if abscissas else list(range(1, blocks + 1))
    if len(cs) < blocks:
        raise FieldConstraintViolated(f"A_{n} needs {blocks} abscissas")
    forms = [(1, -1, 0), (1, 1, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    added = []
    for c in cs[:blocks]:
        c = Fraction(c)
        added += [(1, 0, -c), (0, 1, -c), (1, 0, c), (0, 1, c)]
    forms = [tuple(field.coerce(x) for x in ell) for ell in forms + added[:n]]
    A = LineArrangement(field, forms)
    assert len(A) == n + 5
    return A


def primitive_root_of_unity(p: int, t: int) -> int:
    if (p - 1) % t:
        raise FieldConstraintViolated(f"GF({p}) has no primitive {t}-th root of unity")
    for g in range(2, p) if p > 2 else [1]:
        z = pow(g, (p - 1) // t, p)
        if all(pow(z, t // q, p) != 1 for q in _prime_factors(t)):
            return z
    return 1


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def fermat(field: FieldSpec, t: int, axes: str = "") -> LineArrangement:
    if isinstance(field, PrimeField):
        zeta = primitive_root_of_unity(field.p, t)
        roots = [pow(zeta, i, field.p) for i in range(t)]
    elif isinstance(field, Rationals):
        if t > 2:
            raise FieldConstraintViolated("over Q only t <= 2 has t-th roots of unity")
        roots = [Fraction(1), Fraction(-1)][:t]
    else:
        raise FieldConstraintViolated("Fermat arrangements need Q or GF(p)")
    forms = []
    for r in roots:
        forms += [(1, -r, 0), (1, 0, -r), (0, 1, -r)]
    for ax in axes:
        forms.append({"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[ax])
    A = LineArrangement(field, [tuple(field.coerce(c) for c in ell) for ell in forms])
    assert len(A) == 3 * t + len(axes)
    return A


def star_random(field: FieldSpec, d: int, seed: int = 0, bound: int = 20) -> LineArrangement:
    """d lines with no three concurrent, i.e. dual points in linearly general position."""
    rng = random.Random(seed)
    pts: list[ProjPoint] = []
    while len(pts) < d:
        coords = [field.random(rng, bound) for _ in range(3)]
        if all(field.is_zero(c) for c in coords):
            continue
        P = ProjPoint(field, coords)
        if P in pts:
            continue
        if any(field.is_zero(dot(field, cross(field, pts[i], pts[j]), P))
               for i in range(len(pts)) for j in range(i + 1, len(pts))):
            continue
        pts.append(P)
    return LineArrangement(field, [p.coords for p in pts])


def _from_file(field: FieldSpec, path) -> LineArrangement:
    if not path:
        raise FieldConstraintViolated("coordinates required: pass file=<lines.json>")
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("lines", data.get("forms"))
    return LineArrangement.from_json(field, data)


def build(name: str, params: dict | None = None, field: FieldSpec | None = None):
    """Construct a catalog configuration; points for "fano", line arrangements otherwise."""
    from .exactfield import parse_field

    e = entry(name)
    p = dict(e.defaults)
    p.update(params or {})
    field = field or parse_field(e.default_field)
    if name == "fano":
        return fano(field)
    if name == "b3":
        return family(field, 4)
    if name == "h19":
        A = _lines(field, H19_FORMS)
        assert len(A) == 19
        return A
    if name == "a_ab":
        return a_ab(field, int(p["a"]), int(p["b"]))
    if name == "family_a4k":
        k, extra = int(p["k"]), int(p.get("extra", 0))
        if k < 0 or extra not in (0, 1, 2, 3):
            raise FieldConstraintViolated("family_a4k needs k >= 0 and extra in 0..3")
        return family(field, 4 * k + extra, p.get("abscissas"))
    if name == "fermat":
        return fermat(field, int(p["t"]), str(p.get("axes") or ""))
    if name == "star_random":
        return star_random(field, int(p["d"]), int(p["seed"]), int(p["bound"]))
    if name.startswith("example20_"):
        base = list(H19_FORMS)
        if name == "example20_a":
            base.remove("2x+y")
        elif name == "example20_b":
            base[base.index("2x+y")] = "2y-x"
        elif name == "example20_c":
            base.append("2y-x")
        return _lines(field, base)
    if name in ("klein", "wiman"):
        return _from_file(field, p.get("file"))
    raise UnknownName(name)


def build_points(name: str, params: dict | None = None, field: FieldSpec | None = None) -> PointConfig:
    """The catalog configuration as a point set (dual points for arrangements)."""
    obj = build(name, params, field)
    return obj if isinstance(obj, PointConfig) else dual_points(obj)
