import sympy
import pytest

from unexpcurves.exactfield import QQ, PrimeField

X, Y, Z_, S, T = sympy.symbols("x y z s t")


def to_sympy(F):
    """A HomPoly over Q, GF(p) or K(s,t) as a sympy expression (GF(p) values as integers)."""
    out = 0
    for (a, b, c), v in F.coeffs.items():
        out += sympy.sympify(F.field.format(v).replace("^", "**")) * X**a * Y**b * Z_**c
    return sympy.expand(out)


@pytest.fixture(params=[QQ, PrimeField(101)], ids=["Q", "GF101"])
def field(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
