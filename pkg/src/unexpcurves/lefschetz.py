"""Power ideals of linear forms: Hilbert functions, Lefschetz ranks, inverse systems, Terao's condition."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import CharacteristicUnsupported, CriteriaDisagree, OracleMismatch
from .exactfield import FieldSpec, Rationals
from .invariants import compute_splitting, ramp
from .linalg import Mat, rank, rref
from .polyring import HomPoly, apply_transform, monomial_basis, monomial_index, multiples_rows, origin_chart, span_dim
from .schemes import DimCertificate, GenericMode, PointConfig, dual_lines, ideal_dim, symbolic_point


@dataclass
class PowerIdeal:
    field: FieldSpec
    generators: list[tuple[HomPoly, int]]

    def __post_init__(self):
        forms = [ell for ell, _ in self.generators]
        for ell, a in self.generators:
            if ell.degree != 1 or a < 1:
                raise ValueError("generators must be linear forms with exponents >= 1")
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                if forms[i].is_proportional(forms[j]):
                    raise ValueError(f"forms {forms[i]} and {forms[j]} are proportional")

    @classmethod
    def uniform(cls, forms, exponent: int, field: FieldSpec | None = None) -> "PowerIdeal":
        forms = list(forms)
        field = field or forms[0].field
        return cls(field, [(ell, exponent) for ell in forms])

    @classmethod
    def of_points(cls, Z: PointConfig, exponent: int) -> "PowerIdeal":
        """Powers of the forms dual to the points of Z."""
        return cls.uniform(dual_lines(Z).linear_forms(), exponent, Z.field)

    def powers(self, field: FieldSpec | None = None) -> list[HomPoly]:
        out = []
        for ell, a in self.generators:
            g = ell ** a
            if field is not None and field != g.field:
                g = HomPoly(field, g.degree, {m: field.from_base(c) for m, c in g.coeffs.items()})
            out.append(g)
        return out


@dataclass
class SLPReport:
    k: int
    dlow: int
    dim_source: int
    dim_target: int
    rank: int
    rank_direct: int
    maximal_rank: bool
    delta: int
    certificate: DimCertificate = dc_field(default_factory=lambda: DimCertificate("Certified"))

    def to_json(self) -> dict:
        return {
            "k": str(self.k), "dlow": str(self.dlow), "dim_source": str(self.dim_source),
            "dim_target": str(self.dim_target), "rank": str(self.rank), "maximal_rank": self.maximal_rank,
            "delta": str(self.delta), "certificate": self.certificate.level,
        }


def power_ideal_hf(PI: PowerIdeal, j: int) -> int:
    """dim [R/I]_j."""
    if j < 0:
        return 0
    return comb(j + 2, 2) - span_dim(PI.powers(), j, PI.field)


def power_ideal_hf_table(PI: PowerIdeal, upto: int | None = None) -> list[int]:
    """[R/I]_j for j = 0, 1, ... until the quotient vanishes (or ``upto``)."""
    out = []
    j = 0
    while True:
        v = power_ideal_hf(PI, j)
        if v == 0 and upto is None:
            return out
        out.append(v)
        if upto is not None and j >= upto:
            return out
        j += 1


def quotient_hf_with(PI: PowerIdeal, L: HomPoly, k: int, j: int) -> int:
    """dim [R/(I, L^k)]_j."""
    K = L.field
    if j < 0:
        return 0
    return comb(j + 2, 2) - span_dim(PI.powers(K) + [L ** k], j, K)


def _general_form(field: FieldSpec, mode: GenericMode, salt: int = 0) -> HomPoly:
    mode = mode.effective(field)
    if mode.is_symbolic:
        return HomPoly.linear(field.function_field(), symbolic_point(field).coords)
    rng = GenericMode(seed=mode.seed + salt).rng()
    while True:
        c = [field.random(rng, mode.bound) for _ in range(3)]
        if any(not field.is_zero(x) for x in c):
            return HomPoly.linear(field, c)


def _standard_monomials(PI: PowerIdeal, n: int):
    """RREF of [I]_n over the base field: (rows, pivots, non-pivot columns)."""
    ncols = comb(n + 2, 2)
    rows = multiples_rows(PI.powers(), n)
    if not rows:
        return [], [], list(range(ncols))
    R, piv = rref(Mat(PI.field, rows, ncols))
    free = [c for c in range(ncols) if c not in set(piv)]
    return R, piv, free


def _multiplication_rank(PI: PowerIdeal, L: HomPoly, k: int, dlow: int) -> int:
    """Rank of x L^k : [R/I]_dlow -> [R/I]_(dlow+k) written on standard-monomial bases."""
    K = L.field
    base = PI.field
    lift = (lambda c: c) if K == base else K.from_base
    _, _, src = _standard_monomials(PI, dlow)
    R, piv, tgt = _standard_monomials(PI, dlow + k)
    if not src or not tgt:
        return 0
    Lk = L ** k
    tidx = monomial_index(dlow + k)
    sbasis = monomial_basis(dlow)
    rows = []
    for c in src:
        m = sbasis[c]
        v = {}
        for mono, coef in Lk.coeffs.items():
            key = tidx[(mono[0] + m[0], mono[1] + m[1], mono[2] + m[2])]
            v[key] = coef
        row = []
        for col in tgt:
            val = v.get(col, K.zero())
            for r, p in zip(R, piv):
                if p in v and not base.is_zero(r[col]):
                    val = K.sub(val, K.mul(v[p], lift(r[col])))
            row.append(val)
        rows.append(row)
    return rank(Mat(K, rows, len(tgt)))


def _slp_with(PI: PowerIdeal, L: HomPoly, k: int, dlow: int) -> SLPReport:
    src = power_ideal_hf(PI, dlow)
    tgt = power_ideal_hf(PI, dlow + k)
    coker = quotient_hf_with(PI, L, k, dlow + k) if k > 0 else 0
    r = tgt - coker if k > 0 else src
    direct = _multiplication_rank(PI, L, k, dlow) if k > 0 else src
    if r != direct:
        raise OracleMismatch(f"x L^{k} rank {r} from the cokernel but {direct} from the matrix")
    full = min(src, tgt)
    return SLPReport(k, dlow, src, tgt, r, direct, r == full, full - r)


def slp_at(PI: PowerIdeal, k: int, dlow: int, L: HomPoly | None = None, mode: GenericMode | None = None) -> SLPReport:
    """Rank of multiplication by L^k from degree dlow to dlow + k on R/I.

    A supplied L is used as is.  Otherwise a probe L is tried first; maximal
    rank at a probe certifies the generic value, and anything less is
    recomputed with the symbolic form s x + t y + z.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if L is not None:
        rep = _slp_with(PI, L, k, dlow)
        rep.certificate = DimCertificate("Certified", {"L": L.to_str()})
        return rep
    mode = mode or GenericMode()
    L0 = _general_form(PI.field, mode)
    rep = _slp_with(PI, L0, k, dlow)
    if rep.maximal_rank or L0.field.is_function_field:
        rep.certificate = DimCertificate("Certified", {"L": L0.to_str()})
        return rep
    Ls = _general_form(PI.field, GenericMode.symbolic())
    rep = _slp_with(PI, Ls, k, dlow)
    rep.certificate = DimCertificate("Certified", {"L": Ls.to_str(), "escalated": "probe rank below maximal"})
    return rep


def slp_table(PI: PowerIdeal, k: int, mode: GenericMode | None = None) -> list[SLPReport]:
    """SLP reports for every source degree until the target quotient vanishes."""
    out = []
    d = 0
    while power_ideal_hf(PI, d) > 0:
        out.append(slp_at(PI, k, d, mode=mode))
        d += 1
    return out


def quotient_hf_table(PI: PowerIdeal, k: int, mode: GenericMode | None = None) -> list[int]:
    """Hilbert function of R/(I, L^k) for a general L, until it vanishes."""
    mode = mode or GenericMode()
    out = []
    j = 0
    while True:
        top = power_ideal_hf(PI, j)
        v = 0 if top == 0 else top - slp_at(PI, k, j - k, mode=mode).rank if j >= k else top
        if v == 0:
            return out
        out.append(v)
        j += 1


def _fatpoint_rows(field: FieldSpec, point, mu: int, j: int) -> list[list]:
    """Conditions for a degree-j form to vanish to order mu at ``point``."""
    if mu <= 0:
        return []
    S, _ = origin_chart(field, point)
    basis = monomial_basis(j)
    low = [m for m in basis if m[0] + m[1] < mu]
    lidx = {m: i for i, m in enumerate(low)}
    cols = []
    for m in basis:
        G = apply_transform(HomPoly(field, j, {m: field.one()}), S)
        col = [field.zero()] * len(low)
        for mono, c in G.coeffs.items():
            if mono in lidx:
                col[lidx[mono]] = c
        cols.append(col)
    return [[cols[c][r] for c in range(len(basis))] for r in range(len(low))]


def macaulay_dual_dim(PI: PowerIdeal, j: int, side: str = "power") -> int:
    """dim [R/I]_j ("power") or dim [∩ ℘_i^(j - a_i + 1)]_j at the dual points ("fatpoint")."""
    if not isinstance(PI.field, Rationals):
        raise CharacteristicUnsupported("inverse-system duality is only used in characteristic zero")
    if side == "power":
        return power_ideal_hf(PI, j)
    if side != "fatpoint":
        raise ValueError(f"unknown side {side!r}")
    f = PI.field
    rows = []
    for ell, a in PI.generators:
        point = [ell.coeffs.get(m, f.zero()) for m in monomial_basis(1)]
        rows += _fatpoint_rows(f, point, j - a + 1, j)
    n = comb(j + 2, 2)
    return n - (rank(Mat(f, rows, n)) if rows else 0)


def unexpected_in_degree_check(Z: PointConfig, j: int, mode: GenericMode | None = None) -> bool:
    """Whether generic dim [I_(Z+jP)]_(j+1) exceeds max(0, dim [I_Z]_(j+1) - C(j+1, 2))."""
    sp = compute_splitting(Z, mode)
    return ramp(sp.a, sp.b, j) > max(0, ideal_dim(Z, j + 1) - comb(j + 1, 2))


def slp_unexpected_equivalence(Z: PointConfig, j: int, mode: GenericMode | None = None) -> tuple[bool, bool]:
    """(unexpected curve of degree j+1, failure of SLP in range 2 from degree j-1) for the dual forms of Z."""
    if j < 2:
        raise ValueError("j must be >= 2")
    unexpected = unexpected_in_degree_check(Z, j, mode)
    PI = PowerIdeal.of_points(Z, j + 1)
    fails = not slp_at(PI, 2, j - 1, mode=mode).maximal_rank
    if unexpected != fails:
        raise CriteriaDisagree(f"degree {j + 1}: unexpected={unexpected} but SLP failure={fails}")
    return unexpected, fails


def terao_surjectivity(forms, a: int, b: int, mode: GenericMode | None = None) -> bool:
    """Whether x L^2 : [R/J]_(b-2) -> [R/J]_b is onto for J = (ℓ_i^b, L_1^b, ..., L_(b-a)^b).

    The L_i are general forms.  Surjectivity at one choice of forms certifies the
    generic answer; a failure is rechecked with fresh forms and a symbolic L.
    """
    forms = list(forms)
    if a > b:
        raise ValueError("need a <= b")
    mode = mode or GenericMode()
    field = forms[0].field
    target = comb(b + 2, 2)

    def attempt(salt: int, symbolic: bool) -> bool:
        extra = [_general_form(field, GenericMode(seed=mode.seed + salt, bound=mode.bound), 17 * (i + 1))
                 for i in range(b - a)]
        PI = PowerIdeal.uniform(forms + extra, b, field)
        L = _general_form(field, GenericMode.symbolic() if symbolic else mode, 7919)
        return span_dim(PI.powers(L.field) + [L ** 2], b, L.field) == target

    if attempt(0, False):
        return True
    return attempt(1, True)
