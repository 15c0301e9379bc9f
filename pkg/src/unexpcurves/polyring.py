"""The graded ring K[x, y, z] and binary forms in (alpha, beta).

Monomials are exponent triples ordered graded-lex with x > y > z.  A
``HomPoly`` stores raw coefficients (see ``exactfield``) in a dict keyed by
monomial; zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import exprparse
from .errors import FieldMismatch, ParseError, SingularTransform
from .exactfield import FieldSpec, Scalar

Monomial = tuple[int, int, int]
VARS = ("x", "y", "z")


@lru_cache(maxsize=None)
def monomial_basis(t: int) -> tuple[Monomial, ...]:
    """All monomials of degree t, graded-lex descending (x > y > z)."""
    if t < 0:
        return ()
    return tuple((a, b, t - a - b) for a in range(t, -1, -1) for b in range(t - a, -1, -1))


def monomial_index(t: int) -> dict[Monomial, int]:
    return _index(t)


@lru_cache(maxsize=None)
def _index(t: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(t))}


def _coords(P) -> tuple:
    return tuple(P.coords) if hasattr(P, "coords") else tuple(P)


class HomPoly:
    """Homogeneous polynomial of a fixed degree over a ``FieldSpec``."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: FieldSpec, degree: int, coeffs: dict | None = None):
        self.field = field
        self.degree = degree
        self.coeffs = {}
        if coeffs:
            for m, c in coeffs.items():
                if sum(m) != degree:
                    raise ValueError(f"monomial {m} has wrong degree for a form of degree {degree}")
                if not field.is_zero(c):
                    self.coeffs[m] = c

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_terms(cls, field: FieldSpec, degree: int, terms: dict) -> "HomPoly":
        return cls(field, degree, {m: field.coerce(c) for m, c in terms.items()})

    @classmethod
    def constant(cls, field: FieldSpec, c) -> "HomPoly":
        return cls(field, 0, {(0, 0, 0): field.coerce(c)})

    @classmethod
    def var(cls, field: FieldSpec, i: int) -> "HomPoly":
        m = [0, 0, 0]
        m[i] = 1
        return cls(field, 1, {tuple(m): field.one()})

    @classmethod
    def linear(cls, field: FieldSpec, coeffs: Sequence) -> "HomPoly":
        """The form c0*x + c1*y + c2*z from raw values or coercible numbers."""
        vals = [c if not isinstance(c, (int, Fraction, str, Scalar)) else field.coerce(c) for c in coeffs]
        return cls(field, 1, {(1, 0, 0): vals[0], (0, 1, 0): vals[1], (0, 0, 1): vals[2]})

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> "HomPoly":
        """Read text such as ``x^2*y - 3*z^3``; s and t are allowed over K(s, t)."""

        def ident(name):
            if name in VARS:
                return cls.var(field, VARS.index(name))
            return cls.constant(field, field.element(name))

        return exprparse.evaluate(text, lambda n: cls.constant(field, n), ident)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "HomPoly"):
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine {self.field} and {other.field}")

    def _lift(self, other):
        if isinstance(other, HomPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return HomPoly.constant(self.field, other)
        return None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ParseError("sum of forms of different degrees is not homogeneous")
        f = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = f.add(out[m], c) if m in out else c
            if f.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return HomPoly(f, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return HomPoly(f, self.degree, {m: f.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        f = self.field
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                v = f.mul(c1, c2)
                out[m] = f.add(out[m], v) if m in out else v
        return HomPoly(f, self.degree + other.degree, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None or other.degree != 0:
            return NotImplemented
        f = self.field
        inv = f.inv(other.coeffs.get((0, 0, 0), f.zero()))
        return self.scale(inv)

    def __pow__(self, n: int):
        result = HomPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "HomPoly":
        f = self.field
        return HomPoly(f, self.degree, {m: f.mul(c, v) for m, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    __hash__ = None

    # -- queries -------------------------------------------------------------
    def terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.coeffs.items(), key=lambda mc: mc[0], reverse=True)

    def leading_coefficient(self):
        return max(self.coeffs.items())[1]

    def monic(self) -> "HomPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading_coefficient()))

    def is_proportional(self, other: "HomPoly") -> bool:
        return self.monic() == other.monic()

    def evaluate(self, point) -> object:
        """Raw value at a coordinate triple (raw values) or a ``ProjPoint``."""
        f = self.field
        p = _coords(point)
        powers = [[f.one()] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                powers[i].append(f.mul(powers[i][-1], p[i]))
        acc = f.zero()
        for (a, b, c), v in self.coeffs.items():
            acc = f.add(acc, f.mul(v, f.mul(powers[0][a], f.mul(powers[1][b], powers[2][c]))))
        return acc

    def vanishes_at(self, point) -> bool:
        return self.field.is_zero(self.evaluate(point))

    def coefficient_vector(self) -> list:
        f = self.field
        return [self.coeffs.get(m, f.zero()) for m in monomial_basis(self.degree)]

    @classmethod
    def from_vector(cls, field: FieldSpec, degree: int, vec: Sequence) -> "HomPoly":
        return cls(field, degree, dict(zip(monomial_basis(degree), vec)))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"HomPoly({self.field}, {self.to_str()})"

    def to_str(self) -> str:
        if self.is_zero():
            return "0"
        f = self.field
        parts = []
        for m, c in self.terms():
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(VARS, m) if e > 0
            )
            text = f.format(c)
            negative = text.startswith("-") and not f.is_function_field
            if negative:
                text = text[1:]
            if f.is_function_field and ("+" in text or " - " in text):
                text = f"({text})"
            if mono:
                coef = "" if text == "1" else f"{text}*"
                term = coef + mono
            else:
                term = text
            parts.append(("-" if negative else "+", term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def partials(F: HomPoly) -> tuple[tuple[HomPoly, HomPoly, HomPoly], bool]:
    """Formal partial derivatives and the Euler flag.

    The flag is true when x*Fx + y*Fy + z*Fz = deg(F)*F holds with a nonzero
    factor deg(F), i.e. when F lies in the ideal of its partials through Euler's
    identity.  When char K divides deg F both sides vanish and the flag is false.
    """
    f = F.field
    out = []
    for i in range(3):
        d: dict = {}
        for m, c in F.coeffs.items():
            if m[i] == 0:
                continue
            e = list(m)
            e[i] -= 1
            d[tuple(e)] = f.mul(f.from_int(m[i]), c)
        out.append(HomPoly(f, F.degree - 1, d))
    euler = sum((HomPoly.var(f, i) * out[i] for i in range(3)), HomPoly(f, F.degree))
    p = f.characteristic
    nondegenerate = not (p and F.degree % p == 0)
    return (out[0], out[1], out[2]), nondegenerate and euler == F.scale(f.from_int(F.degree))


# ---------------------------------------------------------------------------
# coordinate changes


class ProjTransform:
    """Invertible 3x3 matrix acting on coordinates; raw entries."""

    __slots__ = ("field", "m")

    def __init__(self, field: FieldSpec, m: Sequence[Sequence]):
        self.field = field
        self.m = tuple(tuple(field.coerce(x) if isinstance(x, (int, Fraction, str, Scalar)) else x for x in row)
                       for row in m)
        if field.is_zero(self.det()):
            raise SingularTransform("transform has zero determinant")

    def det(self):
        f, m = self.field, self.m
        def minor(r1, r2, c1, c2):
            return f.sub(f.mul(m[r1][c1], m[r2][c2]), f.mul(m[r1][c2], m[r2][c1]))
        t0 = f.mul(m[0][0], minor(1, 2, 1, 2))
        t1 = f.mul(m[0][1], minor(1, 2, 0, 2))
        t2 = f.mul(m[0][2], minor(1, 2, 0, 1))
        return f.add(f.sub(t0, t1), t2)

    def inverse(self) -> "ProjTransform":
        f, m = self.field, self.m
        d = f.inv(self.det())
        cof = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != i]
                cols = [c for c in range(3) if c != j]
                v = f.sub(f.mul(m[rows[0]][cols[0]], m[rows[1]][cols[1]]),
                          f.mul(m[rows[0]][cols[1]], m[rows[1]][cols[0]]))
                if (i + j) % 2:
                    v = f.neg(v)
                cof[j][i] = f.mul(v, d)
        return ProjTransform(f, cof)

    def __matmul__(self, other: "ProjTransform") -> "ProjTransform":
        f = self.field
        out = [[f.zero()] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                acc = f.zero()
                for k in range(3):
                    acc = f.add(acc, f.mul(self.m[i][k], other.m[k][j]))
                out[i][j] = acc
        return ProjTransform(f, out)

    def apply_point(self, p) -> tuple:
        f = self.field
        p = _coords(p)
        return tuple(
            f.add(f.add(f.mul(row[0], p[0]), f.mul(row[1], p[1])), f.mul(row[2], p[2])) for row in self.m
        )

    @classmethod
    def identity(cls, field: FieldSpec) -> "ProjTransform":
        return cls(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def apply_transform(F: HomPoly, M: ProjTransform) -> HomPoly:
    """F(M·X): variable number r is replaced by the linear form in row r of M."""
    if not isinstance(M, ProjTransform):
        M = ProjTransform(F.field, M)
    f = F.field
    if M.field != f:
        raise FieldMismatch("transform and polynomial over different fields")
    forms = [HomPoly.linear(f, row) for row in M.m]
    powers = [[HomPoly.constant(f, 1)] for _ in range(3)]
    for i in range(3):
        for _ in range(F.degree):
            powers[i].append(powers[i][-1] * forms[i])
    out = HomPoly(f, F.degree)
    cache: dict = {}
    for (a, b, c), v in F.coeffs.items():
        key = (a, b)
        if key not in cache:
            cache[key] = powers[0][a] * powers[1][b]
        out = out + (cache[key] * powers[2][c]).scale(v)
    return out


def chart_at(field: FieldSpec, P) -> tuple[int, int, int, tuple]:
    """Indices (i, j, k) and P scaled so that P_k = 1, k the largest index with P_k != 0."""
    p = _coords(P)
    k = max(idx for idx in range(3) if not field.is_zero(p[idx]))
    inv = field.inv(p[k])
    p = tuple(field.mul(inv, x) for x in p)
    i, j = [idx for idx in range(3) if idx != k]
    return i, j, k, p


def origin_chart(field: FieldSpec, P) -> tuple[ProjTransform, ProjTransform]:
    """Transforms (S, T) with T·P = [0:0:1] and S = T^-1.

    In the new coordinates (u, v, w) = T·X one has u = x_i - p_i x_k,
    v = x_j - p_j x_k and w = x_k.  A form G in (u, v, w) corresponds to the form
    apply_transform(G, T) in X, and F in X corresponds to apply_transform(F, S).
    """
    i, j, k, p = chart_at(field, P)
    zero, one = field.zero(), field.one()
    T = [[zero] * 3 for _ in range(3)]
    S = [[zero] * 3 for _ in range(3)]
    T[0][i], T[0][k] = one, field.neg(p[i])
    T[1][j], T[1][k] = one, field.neg(p[j])
    T[2][k] = one
    S[i][0], S[i][2] = one, p[i]
    S[j][1], S[j][2] = one, p[j]
    S[k][2] = one
    return ProjTransform(field, S), ProjTransform(field, T)


def multiplicity_at(F: HomPoly, P) -> int:
    """Order of vanishing of F at P, read off after moving P to [0:0:1]."""
    if F.is_zero():
        raise ValueError("multiplicity of the zero form is undefined")
    S, _ = origin_chart(F.field, P)
    G = apply_transform(F, S)
    return min(a + b for (a, b, _c) in G.coeffs)


def divide_by_linear(F: HomPoly, ell: HomPoly) -> HomPoly | None:
    """Q with F = ell*Q when ell divides F, else None (exact synthetic division)."""
    if ell.degree != 1 or ell.is_zero():
        raise ValueError("divisor must be a nonzero linear form")
    f = F.field
    lin = [ell.coeffs.get(m, f.zero()) for m in monomial_basis(1)]
    v = max(i for i in range(3) if not f.is_zero(lin[i]))
    inv = f.inv(lin[v])
    rem = dict(F.coeffs)
    quot: dict = {}
    while True:
        cands = [m for m in rem if m[v] > 0]
        if not cands:
            break
        m = max(cands, key=lambda mm: (mm[v], mm))
        c = f.mul(rem[m], inv)
        q = list(m)
        q[v] -= 1
        q = tuple(q)
        quot[q] = f.add(quot[q], c) if q in quot else c
        for idx in range(3):
            if f.is_zero(lin[idx]):
                continue
            e = list(q)
            e[idx] += 1
            e = tuple(e)
            val = f.sub(rem.get(e, f.zero()), f.mul(c, lin[idx]))
            if f.is_zero(val):
                rem.pop(e, None)
            else:
                rem[e] = val
    if rem:
        return None
    Q = HomPoly(f, F.degree - 1, quot)
    return Q


# ---------------------------------------------------------------------------
# binary forms


class BinaryForm:
    """Form of a given degree in (alpha, beta); coeffs[i] multiplies alpha^(d-i) beta^i."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: FieldSpec, degree: int, coeffs: Sequence | None = None):
        self.field = field
        self.degree = degree
        if coeffs is None:
            coeffs = [field.zero()] * (degree + 1)
        if len(coeffs) != degree + 1:
            raise ValueError("binary form needs degree+1 coefficients")
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field: FieldSpec, coeffs: Sequence) -> "BinaryForm":
        return cls(field, len(coeffs) - 1, [field.coerce(c) for c in coeffs])

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("sum of binary forms of different degrees")
        f = self.field
        return BinaryForm(f, self.degree, [f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        f = self.field
        out = [f.zero()] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not f.is_zero(b):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return BinaryForm(f, self.degree + other.degree, out)

    def scale(self, c) -> "BinaryForm":
        f = self.field
        return BinaryForm(f, self.degree, [f.mul(c, x) for x in self.coeffs])

    def __pow__(self, n: int) -> "BinaryForm":
        result = BinaryForm(self.field, 0, [self.field.one()])
        for _ in range(n):
            result = result * self
        return result

    def monic(self) -> "BinaryForm":
        f = self.field
        lead = next((c for c in self.coeffs if not f.is_zero(c)), None)
        if lead is None:
            return self
        return self.scale(f.inv(lead))

    def evaluate(self, alpha, beta):
        f = self.field
        acc = f.zero()
        d = self.degree
        for i, c in enumerate(self.coeffs):
            acc = f.add(acc, f.mul(c, f.mul(f.pow(alpha, d - i), f.pow(beta, i))))
        return acc

    def divexact(self, other: "BinaryForm") -> "BinaryForm | None":
        """Quotient when ``other`` divides ``self``, else None."""
        f = self.field
        if other.is_zero():
            raise ValueError("division by the zero binary form")
        if self.is_zero():
            return BinaryForm(f, self.degree - other.degree)
        num = list(self.coeffs)
        top = max(i for i, c in enumerate(other.coeffs) if not f.is_zero(c))
        inv = f.inv(other.coeffs[top])
        qdeg = self.degree - other.degree
        if qdeg < 0:
            return None
        quot = [f.zero()] * (qdeg + 1)
        for i in range(len(num) - 1, top - 1, -1):
            c = num[i]
            if f.is_zero(c):
                continue
            shift = i - top
            if shift > qdeg:
                return None
            q = f.mul(c, inv)
            quot[shift] = q
            for j, g in enumerate(other.coeffs):
                if not f.is_zero(g):
                    num[j + shift] = f.sub(num[j + shift], f.mul(q, g))
        if any(not f.is_zero(c) for c in num):
            return None
        return BinaryForm(f, qdeg, quot)

    def beta_order(self) -> int:
        return min(i for i, c in enumerate(self.coeffs) if not self.field.is_zero(c))

    def alpha_order(self) -> int:
        return self.degree - max(i for i, c in enumerate(self.coeffs) if not self.field.is_zero(c))

    def __str__(self):
        f = self.field
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if f.is_zero(c):
                continue
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in (("a", d - i), ("b", i)) if e > 0)
            text = f.format(c)
            parts.append(mono if text == "1" and mono else (f"({text})*{mono}" if mono else text))
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _uni_gcd(f: FieldSpec, a: list, b: list) -> list:
    """Monic gcd of univariate polynomials given as low-to-high coefficient lists."""

    def trim(p):
        p = list(p)
        while p and f.is_zero(p[-1]):
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        r = list(a)
        inv = f.inv(b[-1])
        while len(r) >= len(b) and r:
            c = f.mul(r[-1], inv)
            shift = len(r) - len(b)
            for j, g in enumerate(b):
                r[j + shift] = f.sub(r[j + shift], f.mul(c, g))
            r = trim(r)
        a, b = b, r
    inv = f.inv(a[-1])
    return [f.mul(inv, c) for c in a]


def binary_gcd(g1: BinaryForm, g2: BinaryForm) -> BinaryForm:
    """Monic gcd: Euclid on the dehomogenized parts, powers of alpha and beta tracked apart."""
    f = g1.field
    if g1.is_zero() and g2.is_zero():
        raise ValueError("gcd of two zero forms")
    if g2.is_zero():
        return g1.monic()
    if g1.is_zero():
        return g2.monic()
    eb = min(g1.beta_order(), g2.beta_order())
    ea = min(g1.alpha_order(), g2.alpha_order())

    def core(g):
        lo, hi = g.beta_order(), g.degree - g.alpha_order()
        return list(g.coeffs[lo:hi + 1])

    u = _uni_gcd(f, core(g1), core(g2))
    deg = len(u) - 1 + ea + eb
    coeffs = [f.zero()] * eb + u + [f.zero()] * ea
    return BinaryForm(f, deg, coeffs).monic()


def line_basis(field: FieldSpec, P) -> tuple[tuple, tuple]:
    """Deterministic basis (B1, B2) of the plane {Q : P·Q = 0}.

    The coordinate of P with the largest index among its nonzero entries is
    dropped; the two remaining coordinates take the values (1, 0) and (0, 1).
    """
    p = _coords(P)
    k = max(idx for idx in range(3) if not field.is_zero(p[idx]))
    i, j = [idx for idx in range(3) if idx != k]
    inv = field.inv(p[k])
    b1 = [field.zero()] * 3
    b2 = [field.zero()] * 3
    b1[i], b1[k] = field.one(), field.neg(field.mul(p[i], inv))
    b2[j], b2[k] = field.one(), field.neg(field.mul(p[j], inv))
    return tuple(b1), tuple(b2)


def compose(F: HomPoly, phi: Sequence[BinaryForm]) -> BinaryForm:
    """F(phi0, phi1, phi2) for binary forms of a common degree."""
    f = F.field
    deg = phi[0].degree
    powers = [[BinaryForm(f, 0, [f.one()])] for _ in range(3)]
    for i in range(3):
        for _ in range(F.degree):
            powers[i].append(powers[i][-1] * phi[i])
    out = BinaryForm(f, deg * F.degree)
    for (a, b, c), v in F.coeffs.items():
        out = out + (powers[0][a] * powers[1][b] * powers[2][c]).scale(v)
    return out


def restrict_to_line(F: HomPoly, P) -> BinaryForm:
    """F(alpha*B1 + beta*B2) on the line dual to P, with (B1, B2) from ``line_basis``."""
    f = F.field
    b1, b2 = line_basis(f, P)
    phi = [BinaryForm(f, 1, [b1[i], b2[i]]) for i in range(3)]
    return compose(F, phi)


def product(forms: Iterable[HomPoly], field: FieldSpec) -> HomPoly:
    out = HomPoly.constant(field, 1)
    for g in forms:
        out = out * g
    return out


def multiples_rows(gens: Sequence[HomPoly], t: int) -> list[list]:
    """Coefficient rows (in ``monomial_basis(t)``) of m*g for every generator g and monomial m."""
    idx = monomial_index(t)
    ncols = len(idx)
    rows = []
    for g in gens:
        if g.degree > t or g.is_zero():
            continue
        zero = g.field.zero()
        items = list(g.coeffs.items())
        for m in monomial_basis(t - g.degree):
            row = [zero] * ncols
            for mono, c in items:
                row[idx[(mono[0] + m[0], mono[1] + m[1], mono[2] + m[2])]] = c
            rows.append(row)
    return rows


def span_dim(gens: Sequence[HomPoly], t: int, field: FieldSpec) -> int:
    """dim of the degree-t part of the ideal generated by ``gens``."""
    from .linalg import Mat, rank

    rows = multiples_rows(gens, t)
    if not rows:
        return 0
    return rank(Mat(field, rows, len(monomial_index(t))))
