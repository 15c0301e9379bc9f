"""t_Z, m_Z, u_Z, the splitting type and the unexpectedness decision.

The splitting type (a, b) of Z is read off the generic dimension ramp
D(j) = dim [I_{Z+jP}]_{j+1} = max(0, j-a+1) + max(0, j-b+1), with a + b = |Z| - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import CriteriaDisagree, RampViolation, StructureViolation
from .schemes import (
    DimCertificate,
    FatPointSweep,
    GenericMode,
    PointConfig,
    ProjPoint,
    hilbert_function,
    hilbert_table,
    ideal_basis,
    ideal_dim,
    max_collinear,
    sample_probe,
    spanned_lines,
    weakest,
)


def ramp(a: int, b: int, j: int) -> int:
    return max(0, j - a + 1) + max(0, j - b + 1)


def compute_tZ(Z: PointConfig) -> int:
    """Least j with dim [I_Z]_{j+1} > C(j+1, 2)."""
    j = 0
    while True:
        if ideal_dim(Z, j + 1) > comb(j + 1, 2):
            return j
        j += 1


@dataclass
class Splitting:
    a: int
    b: int
    ramp: dict[int, int]
    certificates: dict[int, DimCertificate]
    escalated: list[str] = dc_field(default_factory=list)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def certificate(self) -> DimCertificate:
        return weakest(self.certificates.values())


def compute_splitting(Z: PointConfig, mode: GenericMode | None = None) -> Splitting:
    """Splitting type (a_Z, b_Z) with the ramp table for 0 <= j <= b_Z + 1."""
    mode = mode or GenericMode()
    d = len(Z)
    if d < 2:
        raise ValueError("the splitting type needs at least two points")
    sweep = FatPointSweep(Z, mode)
    escalated = []
    if sweep.escalated:
        escalated.append(f"symbolic forced over {Z.field}")

    def sweep_values(getter):
        vals, certs = {}, {}
        j = 0
        a = None
        while True:
            v, c = getter(j)
            vals[j], certs[j] = v, c
            if a is None and v > 0:
                a = j
            if a is not None and j >= d - 1 - a + 1:
                return a, vals, certs
            j += 1
            if j > d + 1:
                raise RampViolation("no positive value in the degree sweep")

    def fits(a, vals):
        b = d - 1 - a
        return a <= b and all(vals[j] == ramp(a, b, j) for j in vals)

    a, vals, certs = sweep_values(lambda j: sweep.value(j, j + 1))
    if not fits(a, vals):
        if not sweep.mode.is_symbolic:
            escalated.append("probe values off the ramp; recomputed symbolically")

        def certified(j):
            v, c = sweep.value(j, j + 1)
            return (v, c) if c.level == "Certified" else sweep.value(j, j + 1, force_symbolic=True)

        a, vals, certs = sweep_values(certified)
        if not fits(a, vals):
            raise RampViolation(f"generic dimensions {vals} fit no splitting type")
    b = d - 1 - a
    for j, c in certs.items():
        if c.level == "MonteCarlo":
            certs[j] = DimCertificate("RampConsistent", c.witness)
    if vals[a] not in (1, 2) or (vals[a] == 2) != (a == b):
        raise RampViolation(f"value {vals[a]} at j=a={a} contradicts a={a}, b={b}")
    return Splitting(a, b, vals, certs, escalated)


@dataclass
class InvariantsReport:
    d: int
    hilbert: list[int]
    delta_h: list[int]
    t_Z: int
    m_Z: int
    u_Z: int
    splitting: tuple[int, int]
    ramp: dict[int, int]
    unexpected: bool
    unexpected_degrees: list[int]
    max_collinear: int
    hZ_at_tZ: int
    self_intersection: int
    criteria: dict[str, bool]
    certificates: dict[int, DimCertificate]
    escalated: list[str]

    @property
    def certificate(self) -> DimCertificate:
        return weakest(self.certificates.values())

    def to_json(self) -> dict:
        return {
            "d": str(self.d),
            "hilbert": [str(x) for x in self.hilbert],
            "delta_h": [str(x) for x in self.delta_h],
            "t_Z": str(self.t_Z),
            "m_Z": str(self.m_Z),
            "u_Z": str(self.u_Z),
            "splitting": [str(x) for x in self.splitting],
            "ramp": {str(j): str(v) for j, v in sorted(self.ramp.items())},
            "unexpected": self.unexpected,
            "unexpected_degrees": [str(x) for x in self.unexpected_degrees],
            "max_collinear": str(self.max_collinear),
            "hZ_at_tZ": str(self.hZ_at_tZ),
            "self_intersection": str(self.self_intersection),
            "criteria": dict(self.criteria),
            "certificate": self.certificate.level,
            "certificates": {str(j): c.to_json() for j, c in sorted(self.certificates.items())},
            "escalated": list(self.escalated),
        }


def unexpected_report(Z: PointConfig, mode: GenericMode | None = None) -> InvariantsReport:
    """All invariants of Z and the three-way unexpectedness decision."""
    d = len(Z)
    sp = compute_splitting(Z, mode)
    a, b = sp.pair
    m, u = a, b - 1
    t = compute_tZ(Z)
    h = hilbert_table(Z)
    h_t = hilbert_function(Z, t)
    mc = max_collinear(Z)
    crit = {
        "m_lt_t": m < t,
        "geometric": 2 * m + 2 < d and mc <= m + 1,
        "splitting_gap": a <= b - 2 and h_t == d,
    }
    if len(set(crit.values())) != 1:
        raise CriteriaDisagree(f"unexpectedness criteria disagree: {crit} (splitting {(a, b)}, t_Z={t})")
    if not (m <= t <= (d - 1) // 2) or u != d - m - 2:
        raise CriteriaDisagree(f"m_Z={m}, t_Z={t}, u_Z={u} violate m <= t <= (d-1)/2")
    unexpected = crit["m_lt_t"]
    if unexpected and not (m < t <= u):
        raise CriteriaDisagree("unexpected configuration without m_Z < t_Z <= u_Z")
    if h_t < d and unexpected:
        raise CriteriaDisagree("h_Z(t_Z) < |Z| yet reported unexpected")
    degrees = list(range(m + 1, u + 1)) if unexpected else []
    delta = [h[0]] + [h[i] - h[i - 1] for i in range(1, len(h))]
    return InvariantsReport(
        d=d, hilbert=h, delta_h=delta, t_Z=t, m_Z=m, u_Z=u, splitting=(a, b), ramp=sp.ramp,
        unexpected=unexpected, unexpected_degrees=degrees, max_collinear=mc, hZ_at_tZ=h_t,
        self_intersection=(m + 1) ** 2 - m * m - d, criteria=crit, certificates=sp.certificates,
        escalated=sp.escalated,
    )


def _ci_hilbert(e1: int, e2: int, j: int) -> int:
    def c2(n):
        return comb(n, 2) if n >= 2 else 0

    return c2(j + 2) - c2(j - e1 + 2) - c2(j - e2 + 2) + c2(j - e1 - e2 + 2)


def small_tZ_classify(Z: PointConfig, mode: GenericMode | None = None) -> dict:
    """Structure of Z when h_Z(t_Z) < |Z|: a conic complete intersection or a long line."""
    d = len(Z)
    t = compute_tZ(Z)
    if hilbert_function(Z, t) == d:
        return {"kind": "NotApplicable", "t_Z": t}
    result = None
    for L, idx in spanned_lines(Z).items():
        if len(idx) == d - t and d - t >= t + 2:
            result = {"kind": "Collinear", "t_Z": t, "line": L, "points_on_line": len(idx)}
            break
    if result is None and d == 2 * t + 2:
        conics = ideal_basis(Z, 2)
        if conics and all(hilbert_function(Z, j) == min(d, _ci_hilbert(2, t + 1, j)) for j in range(0, 2 * t + 3)):
            result = {"kind": "CI", "t_Z": t, "conic": conics[0], "degrees": (2, t + 1)}
    if result is None:
        raise StructureViolation("h_Z(t_Z) < |Z| but Z is neither a conic complete intersection nor has a long line")
    sp = compute_splitting(Z, mode)
    if sp.a != t or sp.ramp[sp.a] != 1:
        raise StructureViolation(f"expected m_Z = t_Z = {t} with a one-dimensional space, got {sp.pair}")
    result["m_Z"] = sp.a
    result["dim_at_m"] = sp.ramp[sp.a]
    return result


def add_point_predictions(Z: PointConfig, Q: ProjPoint | None = None, mode: GenericMode | None = None) -> dict:
    """Predicted and actual (t, m, splitting) for Z + Q; Q=None means a general point."""
    mode = mode or GenericMode()
    general = Q is None
    if general:
        Q = sample_probe(Z, GenericMode(seed=mode.seed), mode.rng(), avoid_lines=True)
    Q = Q if isinstance(Q, ProjPoint) else ProjPoint(Z.field, Q)
    d = len(Z)
    t = compute_tZ(Z)
    sp = compute_splitting(Z, mode)
    a, b = sp.pair
    Z2 = Z.add(Q)
    t2 = compute_tZ(Z2)
    sp2 = compute_splitting(Z2, mode)
    if a == b:
        m_pred = {a}
        split_pred = {(a, b + 1)}
    elif general:
        m_pred = {a + 1}
        split_pred = {(a + 1, b)}
    else:
        m_pred = {a, a + 1}
        split_pred = {(a + 1, b), (a, b + 1)}
    out = {
        "Q": Q,
        "general": general,
        "predicted_t": {t, t + 1},
        "predicted_m": m_pred,
        "predicted_splitting": split_pred,
        "actual_t": t2,
        "actual_m": sp2.a,
        "actual_splitting": sp2.pair,
        "d": d,
    }
    out["ok"] = t2 in out["predicted_t"] and sp2.a in m_pred and sp2.pair in split_pred
    if not out["ok"]:
        raise CriteriaDisagree(f"adding {Q}: prediction violated {out}")
    return out
