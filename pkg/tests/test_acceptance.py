"""Acceptance suite: one PASS/FAIL line per criterion, printed as the criteria run.

Criteria 1-8 are gating.  Criterion 9 (Klein and Wiman arrangements) needs
coordinates that do not ship with the package; point UNEXPCURVES_KLEIN and
UNEXPCURVES_WIMAN at JSON files of line coefficients to run it.
"""

import os

import pytest

from unexpcurves.catalog import build
from unexpcurves.curves import irreducible_by_global_syzygy
from unexpcurves.exactfield import parse_field
from unexpcurves.invariants import unexpected_report
from unexpcurves.schemes import GenericMode, dual_points
from unexpcurves.verify import CRITERIA, run_criterion

from conftest import ACCEPTANCE_LINES


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    line = f"{status} criterion {result.criterion}: {result.title} ({result.seconds:.1f}s"
    if result.budget is not None:
        line += f", budget {result.budget:.0f}s"
    lines = [line + ")"]
    lines += [f"    {c.name}: expected {c.expected}, got {c.actual}" for c in result.checks if not c.passed]
    if result.error:
        lines.append(f"    error: {result.error}")
    _emit(lines)


def _emit(lines):
    print("\n" + "\n".join(lines))
    ACCEPTANCE_LINES.extend(lines)


@pytest.mark.parametrize("cid", [c for c, *_ in CRITERIA])
def test_criterion(cid):
    result = run_criterion(cid)
    _report(result)
    assert result.passed, result.error or [c.name for c in result.checks if not c.passed]


OPTIONAL = {
    "klein": ("UNEXPCURVES_KLEIN", 21, (9, 11), 10, [10]),
    "wiman": ("UNEXPCURVES_WIMAN", 45, (19, 25), 22, [20, 21, 22, 23, 24]),
}


@pytest.mark.parametrize("name", sorted(OPTIONAL))
def test_criterion_9_optional(name):
    var, d, splitting, t_Z, degrees = OPTIONAL[name]
    path = os.environ.get(var)
    if not path:
        _emit([f"SKIP criterion 9 ({name}): set {var} to a JSON file of line coordinates"])
        pytest.skip(f"{var} not set; coordinates are not shipped")
    field = parse_field(os.environ.get("UNEXPCURVES_FIELD", "Q"))
    A = build(name, {"file": path}, field)
    Z = dual_points(A)
    rep = unexpected_report(Z, GenericMode.probe())
    ok = (len(A) == d and rep.splitting == splitting and rep.t_Z == t_Z
          and rep.unexpected_degrees == degrees and irreducible_by_global_syzygy(Z) is True)
    _emit([f"{'PASS' if ok else 'FAIL'} criterion 9 ({name}): splitting {rep.splitting}, t_Z {rep.t_Z}, "
           f"unexpected degrees {rep.unexpected_degrees}"])
    assert ok


if __name__ == "__main__":
    import sys

    results = [run_criterion(c) for c, *_ in CRITERIA]
    for r in results:
        _report(r)
    sys.exit(0 if all(r.passed for r in results) else 1)
