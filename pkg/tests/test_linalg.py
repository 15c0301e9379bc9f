import random
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from unexpcurves.exactfield import QQ, FunctionField, PrimeField
from unexpcurves.linalg import Mat, kernel_basis, rank, rref, solve_in_span, specialization_rank


def test_kernel_example_normalization():
    M = Mat.from_scalars(QQ, [[1, 1, 1]])
    assert kernel_basis(M) == [[-1, 1, 0], [-1, 0, 1]]


def test_symbolic_rank():
    K = FunctionField(QQ)
    s, t = K.gens()
    assert rank(Mat(K, [[s, t], [t, s]])) == 2
    assert rank(Mat(K, [[s, t], [K.mul(s, s), K.mul(s, t)]])) == 1


def test_specialization_drops_rank():
    K = FunctionField(QQ)
    s, t = K.gens()
    M = Mat(K, [[s, t], [t, s]])
    assert specialization_rank(M, Fraction(1), Fraction(1)) == 1


def test_rref_pivots():
    rows, piv = rref(Mat.from_scalars(QQ, [[0, 2, 4], [0, 1, 2], [1, 0, 0]]))
    assert piv == [0, 1]
    assert rows[1] == [0, 1, 2]


def test_solve_in_span():
    M = Mat.from_scalars(QQ, [[1, 2, 3]])
    assert solve_in_span(M, [Fraction(2), Fraction(4), Fraction(6)])
    assert not solve_in_span(M, [Fraction(1), Fraction(0), Fraction(0)])


def _matrix(draw_rows):
    return draw_rows


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_over_q_matches_sympy(rows):
    M = Mat.from_scalars(QQ, rows)
    assert rank(M) == sympy.Matrix(rows).rank()
    for v in kernel_basis(M):
        assert all(x == 0 for x in M.apply(v))
    assert len(kernel_basis(M)) == 5 - rank(M)


def _rank_mod_p(rows, p):
    m = [[x % p for x in r] for r in rows]
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] * inv
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=6))
def test_rank_mod_7_matches_elimination(rows):
    assert rank(Mat(PrimeField(7), rows)) == _rank_mod_p(rows, 7)


def test_function_field_rank_matches_sympy():
    rng = random.Random(3)
    K = FunctionField(QQ)
    s, t = K.gens()
    S, T = sympy.symbols("s t")
    for _ in range(10):
        entries = [[(rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
        if rng.random() < 0.5:
            entries[3] = [tuple(a + b for a, b in zip(entries[0][j], entries[1][j])) for j in range(4)]
        raw = [[K.add(K.add(K.mul(K.from_int(a), s), K.mul(K.from_int(b), t)), K.from_int(c)) for a, b, c in r]
               for r in entries]
        sym = sympy.Matrix([[a * S + b * T + c for a, b, c in r] for r in entries])
        assert rank(Mat(K, raw)) == sym.rank(simplify=True)
