"""Point configurations, Hilbert functions and fat-point conditions.

Fat-point conditions are imposed characteristic-safely: the point P is moved to
[0:0:1] and the allowed forms are spanned by the monomials u^a v^b w^c with
a + b >= j in the new coordinates.  No derivatives are taken.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterable, Sequence

from .errors import DegenerateProbe, FieldMismatch, PointInZ
from .exactfield import FieldSpec, FunctionField, Scalar
from .linalg import Mat, rank
from .polyring import HomPoly, _coords, chart_at, monomial_basis

SMALL_FIELD = 100  # below this size "random" is not "general" and Symbolic is forced


class ProjPoint:
    """A point of the projective plane, scaled so its first nonzero coordinate is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldSpec, coords: Sequence):
        if len(coords) != 3:
            raise ValueError("a projective point needs three coordinates")
        raw = [c if not isinstance(c, (int, str, Scalar)) and not _is_fraction(c) else field.coerce(c)
               for c in coords]
        lead = next((c for c in raw if not field.is_zero(c)), None)
        if lead is None:
            raise ValueError("[0:0:0] is not a projective point")
        inv = field.inv(lead)
        self.field = field
        self.coords = tuple(field.mul(inv, c) for c in raw)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((str(self.field), self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "[" + ":".join(self.field.format(c) for c in self.coords) + "]"

    __repr__ = __str__

    def to_json(self) -> list[str]:
        return [self.field.format(c) for c in self.coords]

    def lift(self, field: FieldSpec) -> "ProjPoint":
        """The same point over a function field built on this point's field."""
        if field == self.field:
            return self
        if isinstance(field, FunctionField) and field.base_field == self.field:
            return ProjPoint(field, [field.from_base(c) for c in self.coords])
        raise FieldMismatch(f"cannot view a point over {self.field} in {field}")


def _is_fraction(x) -> bool:
    from fractions import Fraction

    return isinstance(x, Fraction)


def cross(field: FieldSpec, p, q) -> tuple:
    """Cross product: the line through two points, or the meet of two lines."""
    f = field
    a, b = _coords(p), _coords(q)
    return (
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    )


def dot(field: FieldSpec, p, q):
    f = field
    a, b = _coords(p), _coords(q)
    return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))


class PointConfig:
    """An ordered set Z of distinct points over one field."""

    __slots__ = ("field", "points")

    def __init__(self, field: FieldSpec, points: Iterable):
        pts = []
        for p in points:
            pts.append(p if isinstance(p, ProjPoint) else ProjPoint(field, p))
        for p in pts:
            if p.field != field:
                raise FieldMismatch("point over a different field")
        if not pts:
            raise ValueError("a point configuration needs at least one point")
        if len(set(pts)) != len(pts):
            raise ValueError("points of a configuration must be distinct")
        self.field = field
        self.points = tuple(pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, p):
        return p in self.points

    def __eq__(self, other):
        return isinstance(other, PointConfig) and self.field == other.field and self.points == other.points

    def __hash__(self):
        return hash((str(self.field), self.points))

    def __repr__(self):
        return f"PointConfig({self.field}, {list(self.points)})"

    def add(self, q) -> "PointConfig":
        q = q if isinstance(q, ProjPoint) else ProjPoint(self.field, q)
        return PointConfig(self.field, self.points + (q,))

    def remove(self, index: int) -> "PointConfig":
        return PointConfig(self.field, self.points[:index] + self.points[index + 1:])

    def index(self, q) -> int:
        q = q if isinstance(q, ProjPoint) else ProjPoint(self.field, q)
        return self.points.index(q)

    def to_json(self) -> list[list[str]]:
        return [p.to_json() for p in self.points]

    @classmethod
    def from_json(cls, field: FieldSpec, data) -> "PointConfig":
        return cls(field, [ProjPoint(field, [field.coerce(str(c)) for c in row]) for row in data])


# ---------------------------------------------------------------------------
# genericity modes and certificates

LEVELS = ("MonteCarlo", "RampConsistent", "Certified")


@dataclass(frozen=True)
class GenericMode:
    """Symbolic (P = [s:t:1]) or Probe (random concrete P) evaluation of generic values."""

    kind: str = "probe"
    samples: int = 2
    bound: int = 10**4
    seed: int = 0
    avoid_lines: bool = False

    def __post_init__(self):
        if self.kind not in ("probe", "symbolic"):
            raise ValueError(f"unknown generic mode {self.kind!r}")
        if self.samples < 1 or self.bound < 1:
            raise ValueError("probe mode needs samples >= 1 and bound >= 1")

    @classmethod
    def symbolic(cls) -> "GenericMode":
        return cls(kind="symbolic")

    @classmethod
    def probe(cls, samples: int = 2, bound: int = 10**4, seed: int = 0, avoid_lines: bool = False):
        return cls("probe", samples, bound, seed, avoid_lines)

    @property
    def is_symbolic(self) -> bool:
        return self.kind == "symbolic"

    def effective(self, field: FieldSpec) -> "GenericMode":
        """Symbolic over small finite fields, where a random point is not general."""
        size = field.size
        if self.kind == "probe" and size is not None and size < SMALL_FIELD:
            return GenericMode("symbolic", self.samples, self.bound, self.seed, self.avoid_lines)
        return self

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass
class DimCertificate:
    level: str
    witness: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"level": self.level, "witness": {k: _jsonable(v) for k, v in self.witness.items()}}


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v if not isinstance(v, int) or isinstance(v, bool) else str(v)
    return str(v)


def weakest(certs: Iterable[DimCertificate]) -> DimCertificate:
    certs = list(certs)
    if not certs:
        return DimCertificate("Certified", {"empty": True})
    return min(certs, key=lambda c: LEVELS.index(c.level))


# ---------------------------------------------------------------------------
# Hilbert functions


def _power_table(field: FieldSpec, q: Sequence, t: int):
    pw = []
    for i in range(3):
        row = [field.one()]
        for _ in range(t):
            row.append(field.mul(row[-1], q[i]))
        pw.append(row)
    return pw


def _eval_rows(field: FieldSpec, pts: Sequence, monos: Sequence) -> list[list]:
    t = sum(monos[0]) if monos else 0
    rows = []
    for q in pts:
        pw = _power_table(field, q, t)
        rows.append([field.mul(pw[0][a], field.mul(pw[1][b], pw[2][c])) for a, b, c in monos])
    return rows


def evaluation_matrix(Z: PointConfig, t: int) -> Mat:
    monos = monomial_basis(t)
    return Mat(Z.field, _eval_rows(Z.field, [p.coords for p in Z], monos), len(monos))


def ideal_dim(Z: PointConfig, t: int) -> int:
    """dim [I_Z]_t."""
    if t < 0:
        return 0
    return comb(t + 2, 2) - rank(evaluation_matrix(Z, t))


def ideal_basis(Z: PointConfig, t: int) -> list[HomPoly]:
    from .linalg import kernel_basis

    return [HomPoly.from_vector(Z.field, t, v) for v in kernel_basis(evaluation_matrix(Z, t))]


def hilbert_function(Z: PointConfig, t: int) -> int:
    """h_Z(t) = dim [R/I_Z]_t."""
    if t < 0:
        return 0
    return comb(t + 2, 2) - ideal_dim(Z, t)


def hilbert_table(Z: PointConfig) -> list[int]:
    """h_Z(0), h_Z(1), ... up to and including the first degree where h_Z = |Z|."""
    out = []
    t = 0
    while True:
        out.append(hilbert_function(Z, t))
        if out[-1] == len(Z):
            return out
        t += 1


def delta_hf(Z: PointConfig) -> list[int]:
    """First difference of h_Z through stabilization at |Z|."""
    h = hilbert_table(Z)
    return [h[0]] + [h[i] - h[i - 1] for i in range(1, len(h))]


# ---------------------------------------------------------------------------
# fat points


def fat_columns(j: int, t: int) -> list:
    """Monomials u^a v^b w^c of degree t with a + b >= j."""
    return [m for m in monomial_basis(t) if m[0] + m[1] >= j]


def fatpoint_matrix(Z: PointConfig, P, j: int, t: int) -> tuple[Mat, list]:
    """Matrix whose kernel is [I_Z ∩ I_P^j]_t written in coordinates centred at P."""
    field = P.field if isinstance(P, ProjPoint) else Z.field
    pts = [p.lift(field).coords for p in Z] if field != Z.field else [p.coords for p in Z]
    i, jj, k, p = chart_at(field, P)
    moved = []
    for q in pts:
        moved.append((field.sub(q[i], field.mul(p[i], q[k])), field.sub(q[jj], field.mul(p[jj], q[k])), q[k]))
    cols = fat_columns(j, t)
    return Mat(field, _eval_rows(field, moved, cols) if cols else [[] for _ in moved], len(cols)), cols


def _check_not_in(Z: PointConfig, P: ProjPoint):
    if P.field == Z.field and P in Z:
        raise PointInZ(f"{P} belongs to Z")


def fatpoint_dim(Z: PointConfig, P, j: int, t: int) -> int:
    """dim [I_Z ∩ I_P^j]_t at a concrete point P."""
    if not isinstance(P, ProjPoint):
        P = ProjPoint(Z.field, P)
    _check_not_in(Z, P)
    M, cols = fatpoint_matrix(Z, P, j, t)
    if not cols:
        return 0
    return len(cols) - rank(M)


def symbolic_point(field: FieldSpec) -> ProjPoint:
    """The generic point [s:t:1] over the function field of ``field``."""
    K = field.function_field()
    s, t = K.gens()
    return ProjPoint(K, (s, t, K.one()))


def _on_spanned_line(Z: PointConfig, P: ProjPoint) -> bool:
    f = Z.field
    pts = Z.points
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if f.is_zero(dot(f, cross(f, pts[a], pts[b]), P)):
                return True
    return False


def sample_probe(Z: PointConfig, mode: GenericMode, rng: random.Random, avoid_lines: bool | None = None,
                 retries: int = 200) -> ProjPoint:
    """A random concrete point off Z (and off lines through two points of Z if asked)."""
    avoid = mode.avoid_lines if avoid_lines is None else avoid_lines
    f = Z.field
    for _ in range(retries):
        coords = [f.random(rng, mode.bound) for _ in range(3)]
        if all(f.is_zero(c) for c in coords):
            continue
        P = ProjPoint(f, coords)
        if P in Z:
            continue
        if avoid and _on_spanned_line(Z, P):
            continue
        return P
    raise DegenerateProbe(f"no acceptable probe point after {retries} attempts")


class FatPointSweep:
    """Generic values of dim [I_{Z+jP}]_t for one configuration and one mode.

    Probe points are drawn once, so every cell of a sweep uses the same points.
    A cell is Certified when some probe (or specialization) reaches the largest
    rank the matrix shape allows, because rank never increases under
    specialization; Symbolic cells are always Certified.
    """

    def __init__(self, Z: PointConfig, mode: GenericMode, avoid_lines: bool | None = None):
        self.Z = Z
        self.requested = mode
        self.mode = mode.effective(Z.field)
        self.escalated = self.mode.kind != mode.kind
        self._probes: list[ProjPoint] | None = None
        self._avoid = avoid_lines
        self._cache: dict = {}

    @property
    def probes(self) -> list[ProjPoint]:
        if self._probes is None:
            rng = self.mode.rng()
            self._probes = [sample_probe(self.Z, self.mode, rng, self._avoid) for _ in range(self.mode.samples)]
        return self._probes

    def probe_values(self, j: int, t: int) -> list[tuple[int, int]]:
        """(dim, rank) at each probe point."""
        out = []
        for P in self.probes:
            M, cols = fatpoint_matrix(self.Z, P, j, t)
            r = rank(M) if cols else 0
            out.append((len(cols) - r, r))
        return out

    def symbolic_value(self, j: int, t: int) -> int:
        M, cols = fatpoint_matrix(self.Z, symbolic_point(self.Z.field), j, t)
        return len(cols) - (rank(M) if cols else 0)

    def value(self, j: int, t: int, force_symbolic: bool = False) -> tuple[int, DimCertificate]:
        key = (j, t, force_symbolic or self.mode.is_symbolic)
        if key in self._cache:
            return self._cache[key]
        ncols = len(fat_columns(j, t))
        full = min(ncols, len(self.Z))
        if ncols == 0:
            res = (0, DimCertificate("Certified", {"empty": True}))
        elif force_symbolic or self.mode.is_symbolic:
            wit = {"symbolic": "P=[s:t:1]"}
            if self.escalated:
                wit["escalated"] = f"field of size {self.Z.field.size} < {SMALL_FIELD}"
            res = (self.symbolic_value(j, t), DimCertificate("Certified", wit))
        else:
            vals = self.probe_values(j, t)
            dim = min(v for v, _ in vals)
            certified = any(r == full for _, r in vals)
            wit = {"probes": [str(P) for P in self.probes], "values": [v for v, _ in vals]}
            res = (dim, DimCertificate("Certified" if certified else "MonteCarlo", wit))
        self._cache[key] = res
        return res


def generic_fatpoint_dim(Z: PointConfig, j: int, t: int, mode: GenericMode | None = None) -> tuple[int, DimCertificate]:
    """Generic value of dim [I_{Z+jP}]_t with its certificate."""
    return FatPointSweep(Z, mode or GenericMode()).value(j, t)


def h1_fatpoint(Z: PointConfig, j: int, mode: GenericMode | None = None) -> int:
    """h^1 of I_{Z+jP}(j+1) for general P: D(j) + |Z| - (2j+3)."""
    dim, _ = generic_fatpoint_dim(Z, j, j + 1, mode)
    return max(0, dim + len(Z) - (2 * j + 3))


# ---------------------------------------------------------------------------
# collinearity and duality


def spanned_lines(Z: PointConfig) -> dict[ProjPoint, list[int]]:
    """Each line through two points of Z, with the indices of the points on it."""
    f = Z.field
    pts = Z.points
    lines: dict[ProjPoint, list[int]] = {}
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            L = ProjPoint(f, cross(f, pts[a], pts[b]))
            if L not in lines:
                lines[L] = [i for i, q in enumerate(pts) if f.is_zero(dot(f, L, q))]
    return lines


def max_collinear(Z: PointConfig) -> int:
    if len(Z) < 2:
        return len(Z)
    return max(len(v) for v in spanned_lines(Z).values())


def dual_lines(Z: PointConfig):
    """The arrangement of lines p0*x + p1*y + p2*z, one per point."""
    from .arrangements import LineArrangement

    return LineArrangement(Z.field, [p.coords for p in Z])


def dual_points(A) -> PointConfig:
    """The points whose coordinates are the coefficient triples of the lines of A."""
    return PointConfig(A.field, [ProjPoint(A.field, ell) for ell in A.coefficient_triples()])
