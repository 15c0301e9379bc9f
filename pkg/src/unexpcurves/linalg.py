"""Exact dense linear algebra over every supported field.

Ranks over Q and GF(p) are delegated to flint's integer and modular matrices.
Over K(s, t) rows are cleared of denominators and the rank is found by
fraction-free (Bareiss) elimination on flint polynomials, after a cheap attempt
to certify full rank at a specialization of (s, t): rank can only drop under
specialization, so a full-rank specialization settles the generic rank.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

import flint

from .exactfield import FieldSpec, FunctionField, PrimeField, Rationals, Scalar, eval_poly


@dataclass
class Mat:
    """Dense matrix of raw field values (see ``exactfield``)."""

    field: FieldSpec
    rows: list[list] = dc_field(default_factory=list)
    ncols: int | None = None

    def __post_init__(self):
        if self.ncols is None:
            self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_scalars(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Mat":
        return cls(field, [[field.coerce(x) for x in row] for row in rows])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "Mat":
        return Mat(self.field, [list(col) for col in zip(*self.rows)] if self.rows else [],
                   self.nrows if self.rows else 0)

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.rows[i][j])

    def apply(self, vec: Sequence) -> list:
        f = self.field
        out = []
        for row in self.rows:
            acc = f.zero()
            for a, b in zip(row, vec):
                if not f.is_zero(a) and not f.is_zero(b):
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out


# ---------------------------------------------------------------------------
# generic fraction-free elimination


def bareiss_rank(rows: list[list], is_zero: Callable, exact_div: Callable) -> int:
    """Rank of a matrix over an integral domain by fraction-free elimination.

    Works on copies of ``rows``; ``exact_div(a, b)`` must return the exact
    quotient.  Pivoting takes the first nonzero entry in column order.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = None
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
        p = m[rank][c]
        prow = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[c]
            for k in range(c + 1, ncols):
                v = p * row[k] - a * prow[k]
                row[k] = v if prev is None else exact_div(v, prev)
            row[c] = a - a
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _int_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = math.lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _ff_poly_rows(field: FunctionField, rows):
    """Multiply each row by the lcm of its denominators to get polynomial rows."""
    out = []
    for row in rows:
        den = None
        for x in row:
            if x.num == 0 or x.den == 1:
                continue
            den = x.den if den is None else den * (x.den / den.gcd(x.den))
        if den is None:
            out.append([x.num for x in row])
        else:
            out.append([x.num * (den / x.den) for x in row])
    return out


def _specialized_rank(field: FunctionField, prows, s0, t0) -> int:
    vals = [[eval_poly(field, e, s0, t0) for e in row] for row in prows]
    return _base_rank(field.base_field, vals, len(prows[0]))


def _base_rank(field: FieldSpec, rows, ncols) -> int:
    if not rows or ncols == 0:
        return 0
    if isinstance(field, Rationals):
        return flint.fmpz_mat(_int_rows(rows)).rank()
    return flint.nmod_mat(rows, field.p).rank()


def _ff_rank(field: FunctionField, rows, ncols, specializations: int = 2) -> int:
    prows = _ff_poly_rows(field, rows)
    full = min(len(prows), ncols)
    rng = random.Random(0x5EED)
    base = field.base_field
    for _ in range(specializations):
        if isinstance(base, Rationals):
            s0, t0 = Fraction(rng.randint(-997, 997)), Fraction(rng.randint(-997, 997))
        else:
            s0, t0 = rng.randrange(base.p), rng.randrange(base.p)
        if _specialized_rank(field, prows, s0, t0) == full:
            return full
    return bareiss_rank(prows, lambda e: e == 0, lambda a, b: a / b)


def rank(M: Mat) -> int:
    """Exact rank of ``M``."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    f = M.field
    if isinstance(f, FunctionField):
        return _ff_rank(f, M.rows, M.ncols)
    return _base_rank(f, M.rows, M.ncols)


def specialization_rank(M: Mat, s0, t0) -> int:
    """Rank of a function-field matrix after substituting raw base values for (s, t)."""
    f = M.field
    assert isinstance(f, FunctionField)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return _specialized_rank(f, _ff_poly_rows(f, M.rows), s0, t0)


# ---------------------------------------------------------------------------
# reduced row echelon form and kernels


def rref(M: Mat) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    f = M.field
    if M.nrows == 0 or M.ncols == 0:
        return [], []
    if isinstance(f, Rationals):
        R, r = flint.fmpq_mat(_int_rows(M.rows)).rref()
        rows = [[Fraction(int(x.p), int(x.q)) for x in row] for row in R.tolist()[:r]]
    elif isinstance(f, PrimeField):
        R, r = flint.nmod_mat(M.rows, f.p).rref()
        rows = [[int(x) for x in row] for row in R.tolist()[:r]]
    else:
        rows = _gauss_jordan(f, M.rows, M.ncols)
    pivots = [next(j for j, x in enumerate(row) if not f.is_zero(x)) for row in rows]
    return rows, pivots


def _gauss_jordan(f: FieldSpec, rows, ncols):
    m = [list(r) for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not f.is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and not f.is_zero(m[i][c]):
                a = m[i][c]
                m[i] = [f.sub(x, f.mul(a, y)) for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return m[:r]


def kernel_basis(M: Mat) -> list[list]:
    """Basis of the right kernel read off the reduced row echelon form.

    Vector number k has a 1 in the k-th free column, zeros in the other free
    columns, and minus the echelon entries in the pivot columns.  Every vector
    is checked against ``M`` before it is returned.
    """
    f = M.field
    rows, pivots = rref(M)
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    basis = []
    for fc in free:
        v = [f.zero()] * M.ncols
        v[fc] = f.one()
        for row, pc in zip(rows, pivots):
            v[pc] = f.neg(row[fc])
        basis.append(v)
    for v in basis:
        if any(not f.is_zero(x) for x in M.apply(v)):
            raise AssertionError("kernel vector does not annihilate the matrix")
    return basis


def solve_in_span(M: Mat, vec: Sequence) -> bool:
    """Whether ``vec`` lies in the row space of ``M``."""
    return rank(Mat(M.field, M.rows + [list(vec)], M.ncols)) == rank(M)
