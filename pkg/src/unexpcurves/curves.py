"""The curve C_P(Z): construction, peeling of linear components, syzygies and parametrization."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    CharacteristicObstruction,
    CharDividesDegree,
    GcdDegreeMismatch,
    OracleMismatch,
    OutOfRange,
    StructureViolation,
    UnexpectedKernelDim,
    UnsupportedField,
)
from .exactfield import FieldSpec, PrimeField, Rationals
from .invariants import compute_splitting
from .linalg import Mat, kernel_basis
from .polyring import (
    BinaryForm,
    HomPoly,
    apply_transform,
    binary_gcd,
    divide_by_linear,
    monomial_basis,
    multiplicity_at,
    origin_chart,
    partials,
    product,
    restrict_to_line,
)
from .schemes import (
    GenericMode,
    PointConfig,
    ProjPoint,
    cross,
    dual_lines,
    fatpoint_matrix,
    sample_probe,
    symbolic_point,
)


@dataclass
class CurveRecord:
    P: ProjPoint
    m_Z: int
    F: HomPoly | None = None
    pencil: list[HomPoly] = dc_field(default_factory=list)
    peeled: list[tuple[HomPoly, int]] = dc_field(default_factory=list)
    core: HomPoly | None = None
    Zprime: list[int] = dc_field(default_factory=list)
    m_Zprime: int | None = None
    mult_F: int | None = None
    mult_core: int | None = None
    irreducible_for_this_P: bool | None = None
    resamples: int = 0

    def to_json(self) -> dict:
        out = {"P": self.P.to_json(), "m_Z": str(self.m_Z), "resamples": str(self.resamples)}
        if self.pencil:
            out["pencil"] = [g.to_str() for g in self.pencil]
        if self.F is not None:
            out["F"] = self.F.to_str()
            out["degree"] = str(self.F.degree)
        if self.core is not None:
            out["components"] = (
                [{"kind": "line", "form": ell.to_str(), "joins_point": str(i)} for ell, i in self.peeled]
                + [{"kind": "core", "form": self.core.to_str(), "degree": str(self.core.degree)}]
            )
            out["Zprime"] = [str(i) for i in self.Zprime]
            out["mult_F"] = str(self.mult_F)
            out["mult_core"] = str(self.mult_core)
            out["irreducible_for_this_P"] = self.irreducible_for_this_P
        return out


@dataclass
class SyzygyTriple:
    s: tuple[HomPoly, HomPoly, HomPoly]
    mod_ell: HomPoly | None = None
    s3: HomPoly | None = None

    @property
    def degree(self) -> int:
        return self.s[0].degree

    def to_json(self) -> dict:
        out = {"degree": str(self.degree), "s": [g.to_str() for g in self.s]}
        if self.mod_ell is not None:
            out["mod_ell"] = self.mod_ell.to_str()
            out["s3"] = self.s3.to_str()
        return out


@dataclass
class Parametrization:
    forms: tuple[BinaryForm, BinaryForm, BinaryForm]
    gcd: BinaryForm
    n: int
    component_degree: int
    gcd_splits: bool | None

    def to_json(self) -> dict:
        return {
            "forms": [str(g) for g in self.forms],
            "gcd": str(self.gcd),
            "n": str(self.n),
            "component_degree": str(self.component_degree),
            "gcd_splits": self.gcd_splits,
        }


# ---------------------------------------------------------------------------
# construction


def general_point(Z: PointConfig, mode: GenericMode | None = None, attempt: int = 0) -> ProjPoint:
    """A point off Z and off every line through two points of Z; symbolic over small fields."""
    mode = (mode or GenericMode()).effective(Z.field)
    if mode.is_symbolic:
        return symbolic_point(Z.field)
    rng = GenericMode(seed=mode.seed + attempt).rng()
    return sample_probe(Z, mode, rng, avoid_lines=True)


def _m_of(Z: PointConfig, mode: GenericMode | None) -> int:
    return compute_splitting(Z, mode).a


def _fat_kernel(Z: PointConfig, P: ProjPoint, j: int, t: int) -> list[HomPoly]:
    """Basis of [I_Z ∩ I_P^j]_t as forms in x, y, z."""
    M, cols = fatpoint_matrix(Z, P, j, t)
    if not cols:
        return []
    f = P.field
    _, T = origin_chart(f, P.coords)
    out = []
    for vec in kernel_basis(M):
        G = HomPoly(f, t, {c: v for c, v in zip(cols, vec) if not f.is_zero(v)})
        out.append(apply_transform(G, T).monic())
    return out


def curve_CP(Z: PointConfig, P=None, m_Z: int | None = None, mode: GenericMode | None = None,
             max_resamples: int = 5) -> CurveRecord:
    """The form of degree m_Z + 1 through Z with multiplicity m_Z at P (a pencil when a_Z = b_Z)."""
    if m_Z is None:
        m_Z = _m_of(Z, mode)
    sp_equal = 2 * m_Z == len(Z) - 1
    expected = 2 if sp_equal else 1
    given = P is not None
    attempt = 0
    while True:
        Q = (P if isinstance(P, ProjPoint) else ProjPoint(Z.field, P)) if given else general_point(Z, mode, attempt)
        basis = _fat_kernel(Z, Q, m_Z, m_Z + 1)
        if len(basis) == expected:
            break
        if given or attempt >= max_resamples:
            raise UnexpectedKernelDim(f"kernel of dimension {len(basis)} at {Q}, expected {expected}")
        attempt += 1
    rec = CurveRecord(P=Q, m_Z=m_Z, resamples=attempt)
    if expected == 1:
        rec.F = basis[0]
        for z in Z:
            if not rec.F.vanishes_at(z.lift(Q.field).coords):
                raise StructureViolation(f"C_P does not pass through {z}")
        rec.mult_F = multiplicity_at(rec.F, Q.coords)
    else:
        rec.pencil = basis
    return rec


def decompose(rec: CurveRecord, Z: PointConfig, mode: GenericMode | None = None) -> CurveRecord:
    """Peel the lines joining P to points of Z; record the core and the point subset it passes through."""
    if rec.F is None:
        raise ValueError("decompose needs a single form, not a pencil")
    f = rec.F.field
    P = rec.P
    core = rec.F
    peeled: list[tuple[HomPoly, int]] = []
    remaining = list(range(len(Z)))
    progress = True
    while progress:
        progress = False
        for idx in list(remaining):
            z = Z[idx].lift(f)
            ell = HomPoly.linear(f, cross(f, P.coords, z.coords)).monic()
            q = divide_by_linear(core, ell)
            if q is None:
                continue
            on = [i for i in remaining if ell.vanishes_at(Z[i].lift(f).coords)]
            if on != [idx]:
                raise StructureViolation(f"line {ell} through P meets Z in {len(on)} points")
            core = q
            peeled.append((ell, idx))
            remaining.remove(idx)
            progress = True
    for ell, _ in peeled:
        if not ell.vanishes_at(P.coords):
            raise StructureViolation("peeled line misses P")
    if not product([ell for ell, _ in peeled] + [core], f) == rec.F:
        raise StructureViolation("F is not the product of its peeled lines and core")
    Zp = PointConfig(Z.field, [Z[i] for i in remaining])
    for i in range(len(Z)):
        on_core = core.vanishes_at(Z[i].lift(f).coords)
        if on_core != (i in remaining):
            raise StructureViolation(f"core vanishing at point {i} does not match Z'")
    rec.peeled = peeled
    rec.core = core
    rec.Zprime = remaining
    rec.mult_core = multiplicity_at(core, P.coords)
    if rec.mult_core != core.degree - 1:
        raise StructureViolation(f"core of degree {core.degree} has multiplicity {rec.mult_core} at P")
    if len(Zp) >= 2:
        rec.m_Zprime = _m_of(Zp, mode)
        if core.degree != rec.m_Zprime + 1:
            raise StructureViolation(f"core degree {core.degree} but m_Z' = {rec.m_Zprime}")
        if len(peeled) != rec.m_Z - rec.m_Zprime:
            raise StructureViolation(f"{len(peeled)} peeled lines but m_Z - m_Z' = {rec.m_Z - rec.m_Zprime}")
    rec.irreducible_for_this_P = not peeled
    return rec


def decomposed_curve(Z: PointConfig, P=None, m_Z: int | None = None, mode: GenericMode | None = None,
                     max_resamples: int = 5) -> CurveRecord:
    """``curve_CP`` followed by ``decompose``.

    When P is chosen here, a decomposition that contradicts the structure
    expected at a general point means P landed on a special locus (for example
    a conic through part of Z), and a fresh P is drawn.  A supplied P is used
    as is and such a contradiction is raised.
    """
    if m_Z is None:
        m_Z = _m_of(Z, mode)
    if P is not None:
        return decompose(curve_CP(Z, P, m_Z, mode, max_resamples), Z, mode)
    attempt = 0
    while True:
        Q = general_point(Z, mode, attempt)
        try:
            rec = decompose(curve_CP(Z, Q, m_Z, mode, max_resamples), Z, mode)
        except (StructureViolation, UnexpectedKernelDim):
            if attempt >= max_resamples:
                raise
            attempt += 1
            continue
        rec.resamples = attempt
        return rec


def unexpected_in_degree(Z: PointConfig, P, t: int, mode: GenericMode | None = None) -> dict:
    """C_P(Z) together with r = t - m_Z - 1 free lines through P, for m_Z < t <= u_Z."""
    sp = compute_splitting(Z, mode)
    m, u = sp.a, sp.b - 1
    if not (m < t <= u):
        raise OutOfRange(f"degree {t} outside the unexpected range {m + 1}..{u}")
    rec = curve_CP(Z, P, m, mode)
    r = t - m - 1
    dim = len(_fat_kernel(Z, rec.P, t - 1, t))
    if dim != r + 1:
        raise StructureViolation(f"dim [I_(Z+(t-1)P)]_t = {dim}, predicted {r + 1}")
    return {"curve": rec, "free_lines": r, "dimension": dim, "predicted_dimension": r + 1}


def irreducibility_by_deletion(Z: PointConfig, mode: GenericMode | None = None) -> bool:
    """True iff m_(Z-Q) = m_Z for every Q in Z."""
    if len(Z) < 3:
        raise ValueError("the deletion test needs at least three points")
    m = _m_of(Z, mode)
    return all(_m_of(Z.remove(i), mode) == m for i in range(len(Z)))


# ---------------------------------------------------------------------------
# syzygies


def _binary_rows(forms: list[BinaryForm], m: int) -> tuple[list[list], int]:
    """Columns indexed by the coefficients of the multipliers (degree m each), rows by output coefficients."""
    f = forms[0].field
    deg = forms[0].degree + m
    ncols = len(forms) * (m + 1)
    rows = [[f.zero()] * ncols for _ in range(deg + 1)]
    for k, g in enumerate(forms):
        for i in range(m + 1):
            for e, c in enumerate(g.coeffs):
                rows[i + e][k * (m + 1) + i] = c
    return rows, ncols


def _lift_binary(g: BinaryForm, ell_coeffs) -> HomPoly:
    """The form in x_i, x_j restricting to g on the line, with (i, j) the kept coordinates of line_basis."""
    f = g.field
    k = max(idx for idx in range(3) if not f.is_zero(ell_coeffs[idx]))
    i, j = [idx for idx in range(3) if idx != k]
    terms = {}
    for e, c in enumerate(g.coeffs):
        if f.is_zero(c):
            continue
        mono = [0, 0, 0]
        mono[i], mono[j] = g.degree - e, e
        terms[tuple(mono)] = c
    return HomPoly(f, g.degree, terms)


def syzygy_min_degree(f: HomPoly, ell: HomPoly | None, m: int) -> SyzygyTriple | None:
    """A syzygy s0 f_x + s1 f_y + s2 f_z (+ s3 ell) = 0 with deg s_i = m, or None.

    With ``ell`` given the syzygy is taken in R/(ell): the partials are restricted to
    the line ell = 0 and s3 is recovered by exact division.  Without ``ell`` the
    syzygy is global, which reads off the splitting type only when char K does not
    divide deg f.
    """
    if ell is not None and ell.field != f.field:
        f = _lift_poly(f, ell.field)
    K = f.field
    (fx, fy, fz), _ = partials(f)
    if ell is None:
        if K.characteristic and f.degree % K.characteristic == 0:
            raise CharDividesDegree(f"char {K.characteristic} divides deg f = {f.degree}")
        basis = monomial_basis(m)
        out_basis = monomial_basis(m + f.degree - 1)
        oidx = {mono: i for i, mono in enumerate(out_basis)}
        nb = len(basis)
        rows = [[K.zero()] * (3 * nb) for _ in out_basis]
        for k, g in enumerate((fx, fy, fz)):
            for bi, mono in enumerate(basis):
                for gm, c in g.coeffs.items():
                    rows[oidx[(gm[0] + mono[0], gm[1] + mono[1], gm[2] + mono[2])]][k * nb + bi] = c
        ker = kernel_basis(Mat(K, rows, 3 * nb))
        if not ker:
            return None
        v = ker[0]
        s = tuple(HomPoly(K, m, {mono: v[k * nb + bi] for bi, mono in enumerate(basis)
                                 if not K.is_zero(v[k * nb + bi])}) for k in range(3))
        total = s[0] * fx + s[1] * fy + s[2] * fz
        if not total.is_zero():
            raise StructureViolation("global syzygy check failed")
        return SyzygyTriple(s)
    lc = [ell.coeffs.get(mono, K.zero()) for mono in monomial_basis(1)]
    restricted = [restrict_to_line(g, lc) for g in (fx, fy, fz)]
    rows, ncols = _binary_rows(restricted, m)
    ker = kernel_basis(Mat(K, rows, ncols))
    if not ker:
        return None
    v = ker[0]
    sbar = [BinaryForm(K, m, v[k * (m + 1):(k + 1) * (m + 1)]) for k in range(3)]
    s = tuple(_lift_binary(g, lc) for g in sbar)
    total = s[0] * fx + s[1] * fy + s[2] * fz
    q = divide_by_linear(total, ell)
    if q is None:
        raise StructureViolation("restricted syzygy does not lift modulo ell")
    return SyzygyTriple(s, ell, -q)


def least_syzygy_degree(f: HomPoly, ell: HomPoly | None, max_m: int | None = None) -> tuple[int, SyzygyTriple] | None:
    top = f.degree - 1 if max_m is None else max_m
    for m in range(0, top + 1):
        syz = syzygy_min_degree(f, ell, m)
        if syz is not None:
            return m, syz
    return None


def general_line(field: FieldSpec, mode: GenericMode | None = None) -> HomPoly:
    """A general linear form: s x + t y + z over small fields, random otherwise."""
    mode = (mode or GenericMode()).effective(field)
    if mode.is_symbolic:
        return HomPoly.linear(field.function_field(), symbolic_point(field).coords)
    rng = mode.rng()
    while True:
        c = [field.random(rng, mode.bound) for _ in range(3)]
        if not all(field.is_zero(x) for x in c):
            return HomPoly.linear(field, c)


def _dual_form(Z: PointConfig) -> HomPoly:
    return dual_lines(Z).f


def _check_char(K: FieldSpec, *ns: int):
    p = K.characteristic
    for n in ns:
        if p and n % p == 0:
            raise CharacteristicObstruction(f"characteristic {p} divides {n}")


def _lift_poly(g: HomPoly, K: FieldSpec) -> HomPoly:
    if g.field == K:
        return g
    return HomPoly(K, g.degree, {mono: K.from_base(c) for mono, c in g.coeffs.items()})


def _cross_forms(s: tuple[HomPoly, HomPoly, HomPoly]) -> tuple[HomPoly, HomPoly, HomPoly]:
    K = s[0].field
    x, y, z = (HomPoly.var(K, i) for i in range(3))
    return (y * s[2] - z * s[1], -(x * s[2] - z * s[0]), x * s[1] - y * s[0])


def _splits(h: BinaryForm) -> bool | None:
    K = h.field
    lo, hi = h.beta_order(), h.degree - h.alpha_order()
    core = list(h.coeffs[lo:hi + 1])
    if len(core) <= 2:
        return True
    import flint

    if isinstance(K, Rationals):
        poly = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in core])
    elif isinstance(K, PrimeField):
        poly = flint.nmod_poly([int(c) for c in core], K.p)
    else:
        return None
    _, factors = poly.factor()
    return all(g.degree() == 1 for g, _ in factors)


def parametrize(Z: PointConfig, P=None, syz: SyzygyTriple | None = None, rec: CurveRecord | None = None,
                mode: GenericMode | None = None) -> tuple[Parametrization, CurveRecord]:
    """Restrict t = X × s to the line dual to P, strip the gcd and check it parametrizes the core of C_P."""
    K = Z.field
    _check_char(K, len(Z))
    m = _m_of(Z, mode)
    if 2 * m == len(Z) - 1:
        raise OutOfRange("a_Z = b_Z: C_P is a pencil, not a single curve")
    if rec is None:
        rec = decomposed_curve(Z, P, m, mode)
    elif rec.core is None:
        rec = decompose(rec, Z, mode)
    P = rec.P
    L = P.field
    f = _lift_poly(_dual_form(Z), L)
    if syz is None or syz.degree != m or (syz.mod_ell is not None and not syz.mod_ell.is_proportional(
            HomPoly.linear(syz.mod_ell.field, P.coords))):
        syz = syzygy_min_degree(f, None, m) if K.characteristic == 0 or len(Z) % K.characteristic else None
        if syz is None:
            syz = syzygy_min_degree(f, HomPoly.linear(L, P.coords), m)
        if syz is None:
            raise StructureViolation(f"no syzygy of degree m_Z = {m}")
    s = tuple(_lift_poly(g, L) for g in syz.s)
    ts = _cross_forms(s)
    restricted = [restrict_to_line(g, P.coords) for g in ts]
    nonzero = [g for g in restricted if not g.is_zero()]
    if not nonzero:
        raise GcdDegreeMismatch("all three restricted forms vanish")
    h = nonzero[0]
    for g in nonzero[1:]:
        h = binary_gcd(h, g)
    h = h.monic()
    forms = tuple(g.divexact(h) if not g.is_zero() else BinaryForm(L, g.degree - h.degree) for g in restricted)
    if any(g is None for g in forms):
        raise GcdDegreeMismatch("gcd does not divide the restricted forms")
    n = h.degree
    if n != len(rec.peeled):
        raise GcdDegreeMismatch(f"deg h = {n} but {len(rec.peeled)} lines were peeled")
    comp = m + 1 - n
    if rec.core.degree != comp or rec.mult_core != m - n:
        raise StructureViolation(f"core degree {rec.core.degree}, multiplicity {rec.mult_core}; expected {comp}, {m - n}")
    from .polyring import compose

    if not compose(rec.core, forms).is_zero():
        raise StructureViolation("the core curve does not vanish on the parametrization")
    return Parametrization(forms, h, n, comp, _splits(h)), rec


def irreducible_by_global_syzygy(Z: PointConfig, mode: GenericMode | None = None) -> bool | None:
    """True when no dual line divides all of X × s for a global syzygy s of degree m_Z; None without one."""
    K = Z.field
    _check_char(K, len(Z))
    m = _m_of(Z, mode)
    A = dual_lines(Z)
    syz = syzygy_min_degree(A.f, None, m)
    if syz is None:
        return None
    ts = _cross_forms(syz.s)
    for ell in A.linear_forms():
        if all(g.is_zero() or divide_by_linear(g, ell) is not None for g in ts):
            return False
    return True


def _divides_mod(ellQ: HomPoly, g: HomPoly, ell: HomPoly | None) -> bool:
    if g.is_zero():
        return True
    if ell is None:
        return divide_by_linear(g, ellQ) is not None
    K = g.field
    lc = [ell.coeffs.get(mono, K.zero()) for mono in monomial_basis(1)]
    gb = restrict_to_line(g, lc)
    if gb.is_zero():
        return True
    return gb.divexact(restrict_to_line(ellQ, lc)) is not None


def mz_after_adding_dual(Z: PointConfig, Q, syz: SyzygyTriple | None = None, mode: GenericMode | None = None,
                         check: bool = True, m_Z: int | None = None) -> bool:
    """Whether m_(Z+Q) = m_Z, decided by ell_Q dividing a s0 + b s1 + c s2."""
    K = Z.field
    _check_char(K, len(Z), len(Z) + 1)
    Q = Q if isinstance(Q, ProjPoint) else ProjPoint(K, Q)
    if Q in Z:
        raise ValueError(f"{Q} already lies in Z")
    m = _m_of(Z, mode) if m_Z is None else m_Z
    if syz is None:
        f = _dual_form(Z)
        syz = syzygy_min_degree(f, None, m)
        if syz is None:
            syz = syzygy_min_degree(f, general_line(K, mode), m)
    SK = syz.s[0].field
    a, b, c = (SK.from_base(x) if SK != K else x for x in Q.coords)
    g = syz.s[0].scale(a) + syz.s[1].scale(b) + syz.s[2].scale(c)
    ellQ = HomPoly.linear(SK, (a, b, c))
    verdict = _divides_mod(ellQ, g, syz.mod_ell)
    if check:
        direct = _m_of(Z.add(Q), mode) == m
        if direct != verdict:
            raise OracleMismatch(f"divisibility says {verdict}, recomputation says {direct} for Q = {Q}")
    return verdict


def common_points(Z: PointConfig, mode: GenericMode | None = None, check: bool = False) -> list[ProjPoint]:
    """All Q outside Z over GF(p) with m_(Z+Q) = m_Z, by exhaustive search."""
    K = Z.field
    if not isinstance(K, PrimeField):
        raise UnsupportedField("common_points enumerates a finite plane; use GF(p)")
    _check_char(K, len(Z), len(Z) + 1)
    sp = compute_splitting(Z, mode)
    p = K.p
    plane = [(1, b, c) for b in range(p) for c in range(p)] + [(0, 1, c) for c in range(p)] + [(0, 0, 1)]
    candidates = [ProjPoint(K, q) for q in plane]
    candidates = [q for q in candidates if q not in Z]
    if sp.a == sp.b:
        return candidates
    syz = syzygy_min_degree(_dual_form(Z), None, sp.a)
    if syz is None:
        raise StructureViolation(f"no global syzygy of degree m_Z = {sp.a}")
    return [q for q in candidates if mz_after_adding_dual(Z, q, syz, mode, check=check, m_Z=sp.a)]
