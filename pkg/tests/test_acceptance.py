"""One test per acceptance criterion, each at its stated tolerance and runtime budget.

Besides the usual pytest verdicts, a PASS/FAIL line per criterion is printed in
the terminal summary (and to stdout, visible with ``-s``).
"""

import pytest

from nilgeom import verification as ver

from conftest import ACCEPTANCE_LINES

CRITERIA = [
    (1, "connection exactness", lambda: ver.suite_connection(budget=ver.BUDGETS["connection"])),
    (2, "geodesic conservation", lambda: ver.suite_geodesic(budget=ver.BUDGETS["geodesic"])),
    (3, "straight-line criterion", lambda: ver.suite_lines(budget=ver.BUDGETS["straight-lines"])),
    (4, "catalog minimality", lambda: ver.suite_catalog(budget=ver.BUDGETS["catalog"])),
    (5, "leading expansion coefficients",
     lambda: ver.suite_expansion(budget=ver.BUDGETS["expansion-coefficients"])),
    (6, "horizontally ruled classification", lambda: ver.suite_horizontal(budget=ver.BUDGETS["horizontal-rulings"])),
    (7, "helicoid limit rate", lambda: ver.suite_limit(budget=ver.BUDGETS["helicoid-limit"])),
    (8, "isometry suite", lambda: ver.suite_isometry(budget=ver.BUDGETS["isometry"])),
    (9, "closed forms vs finite differences", lambda: ver.suite_closed_forms(budget=ver.BUDGETS["closed-forms"])),
]


@pytest.mark.parametrize("number,title,suite", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, suite):
    report = suite()
    verdict = "PASS" if report.passed else "FAIL"
    line = f"criterion {number} ({title}): {verdict} [{report.seconds:.2f} s]"
    if not report.passed:
        line += " failing: " + ", ".join(report.failing())
    ACCEPTANCE_LINES.append(line)
    print(line)
    for detail in report.lines():
        print("  " + detail)
    for note in report.notes:
        print("  note: " + note)
    assert report.passed, "\n".join(report.lines())


def test_report_pass_flag_follows_checks():
    rep = ver.VerificationReport("demo")
    rep.below("a", 1.0, 2.0)
    assert rep.passed
    rep.within("b", 5.0, 0.0, 4.0)
    assert not rep.passed and rep.failing() == ["b"]
    assert rep.to_dict()["passed"] is False


def test_tampered_table_fails_compatibility():
    tables = {kind: ver.connection(kind) for kind in ver.KINDS}
    tables[ver.MetricKind.LORENTZIAN] = ver.tampered_table()
    report = ver.suite_connection(tables=tables)
    assert "connection-compatibility" in report.failing()
