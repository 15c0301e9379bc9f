"""Exact scalars over Q, GF(p) and the rational function field K(s, t).

Each coefficient domain is a ``FieldSpec``.  Internally the toolkit passes *raw*
values around (``Fraction`` for Q, ``int`` in ``range(p)`` for GF(p) and
``RatFunc`` for K(s, t)) together with the ``FieldSpec`` that owns them; the
``Scalar`` wrapper pairs a raw value with its field and refuses to mix fields.
Polynomial arithmetic in s, t is delegated to python-flint.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any

import flint

from . import exprparse
from .errors import DivisionByZero, FieldMismatch, ParseError, UnsupportedField


class FieldSpec:
    """Abstract coefficient domain; concrete kinds are the three subclasses."""

    characteristic: int = 0

    # -- raw arithmetic (overridden) ---------------------------------------
    def zero(self): raise NotImplementedError
    def one(self): raise NotImplementedError
    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def inv(self, a): raise NotImplementedError
    def is_zero(self, a) -> bool: raise NotImplementedError
    def from_fraction(self, q: Fraction): raise NotImplementedError
    def format(self, a) -> str: raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        return self.from_fraction(Fraction(n))

    def pow(self, a, n: int):
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # -- structure ---------------------------------------------------------
    @property
    def size(self) -> int | None:
        """Number of elements, or None for an infinite field."""
        return None

    @property
    def base(self) -> "FieldSpec":
        return self

    @property
    def is_function_field(self) -> bool:
        return False

    def function_field(self) -> "FunctionField":
        return FunctionField(self)

    def random(self, rng: random.Random, bound: int):
        raise UnsupportedField(f"no random sampling over {self}")

    # -- conversions -------------------------------------------------------
    def coerce(self, x) -> Any:
        """Turn ints, Fractions, strings and Scalars into a raw value of this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x.value
        if isinstance(x, bool):
            return self.from_int(int(x))
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatch(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str):
        value = exprparse.evaluate(text, self.element, self._ident)
        return value.value

    def _ident(self, name: str):
        raise ParseError(f"unknown symbol {name!r} for field {self}")

    def element(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))

    def eq(self, a, b) -> bool:
        return a == b


@dataclass(frozen=True)
class Rationals(FieldSpec):
    """The field Q; raw values are ``fractions.Fraction``."""

    characteristic = 0

    def __str__(self):
        return "Q"

    def zero(self): return Fraction(0)
    def one(self): return Fraction(1)
    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b
    def neg(self, a): return -a
    def is_zero(self, a): return a == 0
    def from_fraction(self, q): return Fraction(q)
    def from_int(self, n): return Fraction(n)
    def format(self, a): return str(a)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by 0 in Q")
        return Fraction(a) / b

    def random(self, rng, bound):
        return Fraction(rng.randint(-bound, bound))


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    """GF(p); raw values are ints in ``range(p)``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not flint.fmpz(self.p).is_prime():
            raise UnsupportedField(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def size(self):
        return self.p

    def __str__(self):
        return f"Fp:{self.p}"

    def zero(self): return 0
    def one(self): return 1 % self.p
    def add(self, a, b): return (a + b) % self.p
    def sub(self, a, b): return (a - b) % self.p
    def mul(self, a, b): return (a * b) % self.p
    def neg(self, a): return (-a) % self.p
    def is_zero(self, a): return a == 0
    def from_int(self, n): return n % self.p
    def format(self, a): return str(a)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise DivisionByZero(f"denominator {q.denominator} vanishes mod {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.p)

    def random(self, rng, bound):
        return rng.randrange(self.p)


class RatFunc:
    """Reduced fraction num/den of flint polynomials in s, t with monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"


@dataclass(frozen=True)
class FunctionField(FieldSpec):
    """K(s, t) over K = Q or GF(p); realizes the generic point [s:t:1]."""

    base_field: FieldSpec

    def __post_init__(self):
        if not isinstance(self.base_field, (Rationals, PrimeField)):
            raise UnsupportedField("function field base must be Q or GF(p)")

    @property
    def characteristic(self):
        return self.base_field.characteristic

    @property
    def base(self):
        return self.base_field

    @property
    def is_function_field(self):
        return True

    def function_field(self):
        return self

    def __str__(self):
        return f"{self.base_field}(s,t)"

    @cached_property
    def ctx(self):
        if isinstance(self.base_field, Rationals):
            return flint.fmpq_mpoly_ctx.get(("s", "t"), ordering="deglex")
        return flint.nmod_mpoly_ctx.get(("s", "t"), ordering="deglex", modulus=self.base_field.p)

    # -- polynomial helpers --------------------------------------------------
    def poly_const(self, c):
        """Constant polynomial from a raw base value."""
        if isinstance(self.base_field, Rationals):
            return self.ctx.from_dict({(0, 0): flint.fmpq(c.numerator, c.denominator)})
        return self.ctx.from_dict({(0, 0): int(c)})

    def _scale_inv(self, lc):
        if isinstance(self.base_field, Rationals):
            return 1 / lc
        return pow(int(lc), -1, self.base_field.p)

    def make(self, num, den=None) -> RatFunc:
        """Canonical fraction from flint polynomials."""
        if den is None:
            den = self.ctx.from_dict({(0, 0): 1})
        if den == 0:
            raise DivisionByZero("zero denominator in function field")
        if num == 0:
            return RatFunc(self.ctx.from_dict({}), self.ctx.from_dict({(0, 0): 1}))
        g = num.gcd(den)
        if g != 1:
            num = num / g
            den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            c = self._scale_inv(lc)
            num = num * c
            den = den * c
        return RatFunc(num, den)

    def gens(self):
        s, t = self.ctx.gens()
        return self.make(s), self.make(t)

    def _ident(self, name):
        if name == "s":
            return Scalar(self, self.gens()[0])
        if name == "t":
            return Scalar(self, self.gens()[1])
        return super()._ident(name)

    # -- raw arithmetic ------------------------------------------------------
    def zero(self): return self.make(self.ctx.from_dict({}))
    def one(self): return self.make(self.ctx.from_dict({(0, 0): 1}))

    def add(self, a, b):
        if a.den == b.den:
            return self.make(a.num + b.num, a.den)
        return self.make(a.num * b.den + b.num * a.den, a.den * b.den)

    def sub(self, a, b):
        if a.den == b.den:
            return self.make(a.num - b.num, a.den)
        return self.make(a.num * b.den - b.num * a.den, a.den * b.den)

    def mul(self, a, b):
        return self.make(a.num * b.num, a.den * b.den)

    def neg(self, a):
        return RatFunc(-a.num, a.den)

    def inv(self, a):
        if a.num == 0:
            raise DivisionByZero("inverse of 0 in function field")
        return self.make(a.den, a.num)

    def is_zero(self, a):
        return a.num == 0

    def from_fraction(self, q):
        return self.make(self.poly_const(self.base_field.from_fraction(q)))

    def from_base(self, c):
        return self.make(self.poly_const(c))

    def format(self, a):
        if a.den == 1:
            return str(a.num)
        return f"({a.num})/({a.den})"

    def specialize(self, a: RatFunc, s0, t0):
        """Evaluate at raw base values (s0, t0); DivisionByZero if the denominator vanishes."""
        num = _eval_poly(self, a.num, s0, t0)
        den = _eval_poly(self, a.den, s0, t0)
        return self.base_field.div(num, den)


def _eval_poly(field: FunctionField, poly, s0, t0):
    if isinstance(field.base_field, Rationals):
        v = poly(flint.fmpq(s0.numerator, s0.denominator), flint.fmpq(t0.numerator, t0.denominator))
        return Fraction(int(v.p), int(v.q))
    return int(poly(int(s0), int(t0))) % field.base_field.p


def eval_poly(field: FunctionField, poly, s0, t0):
    """Evaluate a flint polynomial of ``field`` at raw base values."""
    return _eval_poly(field, poly, s0, t0)


class Scalar:
    """An exact field element tagged with its ``FieldSpec``."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        if n < 0:
            return Scalar(self.field, self.field.pow(self.field.inv(self.value), -n))
        return Scalar(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.field.eq(self.value, other.value)
        if isinstance(other, (int, Fraction)):
            return self.field.eq(self.value, self.field.coerce(other))
        return NotImplemented

    def __hash__(self):
        return hash((str(self.field), self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"


QQ = Rationals()


def parse_field(literal: str) -> FieldSpec:
    """Parse "Q", "Fp:7", "Q(s,t)" or "Fp:2(s,t)"."""
    text = literal.replace(" ", "")
    function = text.endswith("(s,t)")
    if function:
        text = text[: -len("(s,t)")]
    if text == "Q":
        base: FieldSpec = QQ
    elif text.startswith("Fp:"):
        try:
            base = PrimeField(int(text[3:]))
        except ValueError as exc:
            raise ParseError(f"bad field literal {literal!r}") from exc
    else:
        raise ParseError(f"bad field literal {literal!r}")
    return FunctionField(base) if function else base


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact ``op`` in {add, sub, mul, div} on two scalars of the same field."""
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine {a.field} and {b.field}")
    fn = {"add": a.field.add, "sub": a.field.sub, "mul": a.field.mul, "div": a.field.div}[op]
    return Scalar(a.field, fn(a.value, b.value))


def random_scalar(field: FieldSpec, bound: int, rng: random.Random) -> Scalar:
    """Uniform integer in [-bound, bound] over Q, uniform residue over GF(p)."""
    return Scalar(field, field.random(rng, bound))
