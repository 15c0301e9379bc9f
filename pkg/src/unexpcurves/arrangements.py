"""Line arrangements: incidences, the Jacobian degree, freeness and certificates.

Freeness is decided by the Chern class test: with (a, b) the splitting type of
the dual points and c2 = (d-1)^2 - deg Jac(f), the arrangement is free exactly
when c2 = a*b.  Modular points and addition-deletion give independent
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from .errors import CriteriaDisagree, NoStabilization
from .exactfield import FieldSpec
from .polyring import HomPoly, partials, product, span_dim
from .schemes import GenericMode, ProjPoint, cross, dual_points


class LineArrangement:
    """Pairwise non-proportional linear forms, each scaled so its first nonzero coefficient is 1."""

    __slots__ = ("field", "forms")

    def __init__(self, field: FieldSpec, forms: Sequence):
        out = []
        for ell in forms:
            if isinstance(ell, HomPoly):
                if ell.degree != 1:
                    raise ValueError("arrangement members must be linear forms")
                ell = [ell.coeffs.get(m, field.zero()) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
            elif isinstance(ell, str):
                h = HomPoly.parse(ell, field)
                ell = [h.coeffs.get(m, field.zero()) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
            out.append(ProjPoint(field, ell).coords)
        if len(set(out)) != len(out):
            raise ValueError("arrangement lines must be pairwise non-proportional")
        self.field = field
        self.forms = tuple(out)

    def __len__(self):
        return len(self.forms)

    @property
    def d(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __eq__(self, other):
        return isinstance(other, LineArrangement) and self.field == other.field and self.forms == other.forms

    def __hash__(self):
        return hash((str(self.field), self.forms))

    def __repr__(self):
        return f"LineArrangement({self.field}, {[str(g) for g in self.linear_forms()]})"

    def coefficient_triples(self) -> list[tuple]:
        return list(self.forms)

    def linear_forms(self) -> list[HomPoly]:
        return [HomPoly.linear(self.field, ell) for ell in self.forms]

    def index(self, ell) -> int:
        key = LineArrangement(self.field, [ell]).forms[0]
        return self.forms.index(key)

    @property
    def f(self) -> HomPoly:
        return product(self.linear_forms(), self.field)

    def remove(self, index: int) -> "LineArrangement":
        return LineArrangement(self.field, self.forms[:index] + self.forms[index + 1:])

    def add(self, ell) -> "LineArrangement":
        return LineArrangement(self.field, list(self.forms) + [ell])

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(c) for c in ell] for ell in self.forms]

    @classmethod
    def from_json(cls, field: FieldSpec, data) -> "LineArrangement":
        forms = []
        for item in data:
            if isinstance(item, str):
                forms.append(item)
            else:
                forms.append([field.coerce(str(c)) for c in item])
        return cls(field, forms)


@dataclass(frozen=True)
class IncidencePoint:
    point: ProjPoint
    multiplicity: int
    incident: frozenset


def singular_points(A: LineArrangement) -> list[IncidencePoint]:
    """All intersection points with the lines through them."""
    f = A.field
    groups: dict[ProjPoint, set] = {}
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            p = ProjPoint(f, cross(f, A.forms[i], A.forms[j]))
            groups.setdefault(p, set()).update((i, j))
    pts = [IncidencePoint(p, len(s), frozenset(s)) for p, s in groups.items()]
    pts.sort(key=lambda ip: (-ip.multiplicity, sorted(ip.incident)))
    if sum(comb(ip.multiplicity, 2) for ip in pts) != comb(len(A), 2):
        raise AssertionError("incidence count does not add up to C(d, 2)")
    return pts


def jacobian_generators(A: LineArrangement) -> list[HomPoly]:
    F = A.f
    (fx, fy, fz), _ = partials(F)
    return [fx, fy, fz, F]


def jacobian_dim(A: LineArrangement, t: int) -> int:
    """dim (R/J)_t for J = (f_x, f_y, f_z, f)."""
    if t < 0:
        return 0
    return comb(t + 2, 2) - span_dim(jacobian_generators(A), t, A.field)


def deg_jacobian(A: LineArrangement, window: int = 3) -> int:
    """Stable value of dim (R/J)_t, scanning up from t = 2(d-2) until it is constant for ``window`` degrees."""
    d = len(A)
    gens = jacobian_generators(A)
    t = max(0, 2 * (d - 2))
    values = []
    while t <= 3 * d:
        values.append(comb(t + 2, 2) - span_dim(gens, t, A.field))
        if len(values) >= window and len(set(values[-window:])) == 1:
            return values[-1]
        t += 1
    raise NoStabilization(f"dim (R/J)_t not constant by t = {3 * d}: {values}")


def c2(A: LineArrangement) -> int:
    """(d-1)^2 - deg Jac(f)."""
    return (len(A) - 1) ** 2 - deg_jacobian(A)


def milnor_total(A: LineArrangement) -> int:
    """Sum over intersection points of (m_p - 1)^2."""
    return sum((ip.multiplicity - 1) ** 2 for ip in singular_points(A))


def modular_points(A: LineArrangement) -> list[IncidencePoint]:
    """Intersection points p such that the line joining p to any other intersection point lies in A."""
    f = A.field
    pts = singular_points(A)
    lines = set(A.forms)
    out = []
    for ip in pts:
        ok = True
        for other in pts:
            if other.point == ip.point:
                continue
            if ProjPoint(f, cross(f, ip.point, other.point)).coords not in lines:
                ok = False
                break
        if ok:
            out.append(ip)
    return out


def supersolvable(A: LineArrangement) -> tuple[int, int] | None:
    """Splitting (m-1, d-m) from a modular point with m lines, or None."""
    mods = modular_points(A)
    if not mods:
        return None
    m = max(ip.multiplicity for ip in mods)
    return tuple(sorted((m - 1, len(A) - m)))


def restriction_count(A: LineArrangement, index: int) -> int:
    """Number of distinct points in which the other lines meet line ``index``."""
    f = A.field
    ell = A.forms[index]
    return len({ProjPoint(f, cross(f, ell, other)) for k, other in enumerate(A.forms) if k != index})


def _sorted_pair(p) -> tuple[int, int]:
    return tuple(sorted(int(x) for x in p))


def addition_deletion(A: LineArrangement, index: int, claims: dict) -> dict:
    """Apply the triple rule for A, A' = A minus line ``index`` and the restriction A''.

    ``claims`` may hold exponents under "A" and "A_prime" and a point count under
    "restriction"; the restriction count is always computed.  The result names
    the implied third statement, or the verdict "Inconsistent".
    """
    n = restriction_count(A, index)
    out = {"restriction_count": n, "index": index}
    if "restriction" in claims and int(claims["restriction"]) != n:
        out["verdict"] = "Inconsistent"
        out["reason"] = f"claimed restriction count {claims['restriction']} but computed {n}"
        return out
    has_a = claims.get("A") is not None
    has_p = claims.get("A_prime") is not None
    if has_a and has_p:
        x, y = _sorted_pair(claims["A"])
        a, b = _sorted_pair(claims["A_prime"])
        implied = None
        for inc, other in ((a, b), (b, a)):
            if _sorted_pair((inc + 1, other)) == (x, y):
                implied = other + 1
        if implied is None or implied != n:
            out["verdict"] = "Inconsistent"
            out["reason"] = f"exponents {claims['A']} and {claims['A_prime']} need restriction {implied}, found {n}"
        else:
            out["verdict"] = "restriction"
            out["restriction_exponent"] = n - 1
        return out
    if has_p:
        a, b = _sorted_pair(claims["A_prime"])
        if n - 1 == b:
            out["verdict"], out["A"] = "A free", _sorted_pair((a + 1, b))
        elif n - 1 == a:
            out["verdict"], out["A"] = "A free", _sorted_pair((a, b + 1))
        else:
            out["verdict"] = "Inconsistent"
            out["reason"] = f"restriction has {n} points, not {a + 1} or {b + 1}"
        return out
    if has_a:
        x, y = _sorted_pair(claims["A"])
        if n - 1 == y and x >= 1:
            out["verdict"], out["A_prime"] = "A_prime free", _sorted_pair((x - 1, y))
        elif n - 1 == x and y >= 1:
            out["verdict"], out["A_prime"] = "A_prime free", _sorted_pair((x, y - 1))
        else:
            out["verdict"] = "Inconsistent"
            out["reason"] = f"restriction has {n} points, not {x + 1} or {y + 1}"
        return out
    raise ValueError("addition_deletion needs exponents for A or for A minus the line")


def shallow_adddel_certificate(A: LineArrangement) -> dict | None:
    """Delete one line so the rest is supersolvable and conclude by the triple rule."""
    for i in range(len(A)):
        rest = A.remove(i)
        ss = supersolvable(rest)
        if ss is None:
            continue
        res = addition_deletion(A, i, {"A_prime": ss})
        if res["verdict"] == "A free":
            return {"deleted": i, "A_prime": ss, "restriction_count": res["restriction_count"], "A": res["A"]}
    return None


def incidence_signature(A: LineArrangement) -> tuple:
    """Sorted point multiplicities plus, per line, the sorted multiplicities of its points."""
    pts = singular_points(A)
    mults = tuple(sorted((ip.multiplicity for ip in pts), reverse=True))
    per_line = []
    for i in range(len(A)):
        per_line.append(tuple(sorted((ip.multiplicity for ip in pts if i in ip.incident), reverse=True)))
    return mults, tuple(sorted(per_line, reverse=True))


@dataclass
class FreenessReport:
    splitting: tuple[int, int]
    deg_jac: int | None
    c2: int | None
    free: bool | None
    modular_point: IncidencePoint | None = None
    supersolvable_splitting: tuple[int, int] | None = None
    adddel: dict | None = None
    char_divides_degree: bool = False
    certificate_level: str = "Certified"
    notes: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "splitting": [str(x) for x in self.splitting],
            "deg_jac": None if self.deg_jac is None else str(self.deg_jac),
            "c2": None if self.c2 is None else str(self.c2),
            "free": self.free,
            "modular_point": None if self.modular_point is None else self.modular_point.point.to_json(),
            "supersolvable_splitting": None if self.supersolvable_splitting is None
            else [str(x) for x in self.supersolvable_splitting],
            "adddel": None if self.adddel is None else {k: str(v) for k, v in self.adddel.items()},
            "char_divides_degree": self.char_divides_degree,
            "certificate": self.certificate_level,
            "notes": list(self.notes),
        }


def freeness(A: LineArrangement, mode: GenericMode | None = None, search_adddel: bool = True) -> FreenessReport:
    """Chern class freeness test with modular-point and addition-deletion certificates."""
    from .invariants import compute_splitting

    mode = mode or GenericMode.symbolic()
    d = len(A)
    sp = compute_splitting(dual_points(A), mode)
    a, b = sp.pair
    mods = modular_points(A)
    ss = supersolvable(A)
    mod_pt = max(mods, key=lambda ip: ip.multiplicity) if mods else None
    cert = shallow_adddel_certificate(A) if search_adddel and ss is None else None
    p = A.field.characteristic
    if p and d % p == 0:
        free = True if (ss or cert) else None
        return FreenessReport((a, b), None, None, free, mod_pt, ss, cert, True, sp.certificate.level,
                              ["characteristic divides d: Chern class route disabled"])
    dj = deg_jacobian(A)
    c = (d - 1) ** 2 - dj
    if c < a * b:
        raise CriteriaDisagree(f"c2 = {c} < a*b = {a * b}")
    free = c == a * b
    for label, pair in (("modular point", ss), ("addition-deletion", cert["A"] if cert else None)):
        if pair is not None and (not free or tuple(pair) != (a, b)):
            raise CriteriaDisagree(f"{label} certificate {pair} disagrees with c2 test ({free}, {(a, b)})")
    return FreenessReport((a, b), dj, c, free, mod_pt, ss, cert, False, sp.certificate.level)
