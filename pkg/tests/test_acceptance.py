"""Acceptance suite: one test per criterion over the default window
|s|,|w| <= 30, q <= 40 (ring and Leibniz checks on |s|,|w| <= 12, q <= 16).

Every criterion is exact: the pinned tolerance is zero mismatches.  Each
test prints one "criterion N: PASS|FAIL ..." line (run with -s to see them
live; they are also in the captured output of failures).
"""

import pytest

from c2eff import checks
from c2eff.chart import chart_data
from c2eff.grading import Window
from c2eff.homotopy import DEFAULT_WINDOW, assemble_window, detected_chain, detected_product, extension_table
from c2eff.names import parse_name, show_basis
from c2eff.pages import basis_at, compute_e2, page_from_json, page_to_json

TOLERANCE = 0  # allowed mismatches, every criterion
RING_RADIUS, RING_Q = 12, 16


def verdict(n: int, title: str, reports: list, extra: list = ()) -> None:
    bad = sum(r.count for r in reports) + len(extra)
    status = "PASS" if bad <= TOLERANCE else "FAIL"
    print(f"criterion {n}: {status} {title}: {bad} mismatches (tolerance {TOLERANCE})")
    for r in reports:
        print("   ", r.line())
        for v in r.violations[:5]:
            print("      ", v)
    for v in list(extra)[:10]:
        print("      ", v)
    assert bad <= TOLERANCE, f"criterion {n} failed"


@pytest.fixture(scope="module")
def page():
    return compute_e2(DEFAULT_WINDOW)


@pytest.fixture(scope="module")
def table():
    return extension_table(DEFAULT_WINDOW)


@pytest.fixture(scope="module")
def assembled(page, table):
    return assemble_window(page, table)


@pytest.fixture(scope="module")
def e1_pairs():
    return checks.e1_pairs_report(RING_RADIUS, RING_Q)


def test_criterion_01_mod2_closed_form():
    verdict(1, "f2 region formula", [checks.f2_region_report(DEFAULT_WINDOW)])


def test_criterion_02_bockstein():
    verdict(2, "Bockstein E-infinity and d1 families", [checks.bockstein_report(DEFAULT_WINDOW, k_max=10)])


def test_criterion_03_ring_axioms(e1_pairs):
    comm, _ = e1_pairs
    box = Window.square(RING_RADIUS, RING_Q)
    verdict(3, "ring axioms", [
        checks.f2_ring_report(RING_RADIUS),
        checks.z2_ring_report(RING_RADIUS),
        comm,
        checks.e1_unit_report(box),
        checks.port_agreement_report(RING_RADIUS, RING_Q),
        checks.e1_associativity_report(RING_RADIUS, RING_Q),
        checks.e1_associativity_sample(RING_RADIUS, RING_Q),
    ])


def test_criterion_04_steenrod_bockstein():
    verdict(4, "Sq1 and Bockstein exactness", [checks.steenrod_report(DEFAULT_WINDOW)])


def test_criterion_05_differential(e1_pairs):
    _, leib = e1_pairs
    verdict(5, "d1 engine", [
        checks.d1_squared_report(DEFAULT_WINDOW),
        leib,
        checks.factorization_report(DEFAULT_WINDOW),
        checks.worked_example_report(),
    ])


def test_criterion_06_twisted_product():
    verdict(6, "(t h1)^2", [checks.twisted_square_report()])


def test_criterion_07_collapse(page):
    col, _ = checks.collapse_reports(page)
    verdict(7, "collapse certification", [col])


def test_criterion_08_vanishing_line(page):
    _, van = checks.collapse_reports(page)
    verdict(8, "E2 = 0 at coweight 3 mod 4, >= -1", [van])


def test_criterion_09_coweight0(page, table, assembled):
    unresolved = checks.unresolved_report({bd: g for bd, g in assembled.items() if bd.s == bd.w and -10 <= bd.s <= 16})
    verdict(9, "coweight 0 against the oracle", [checks.oracle_report(page, table, (-10, 16)), unresolved])


def test_criterion_10_periodicities(assembled):
    verdict(10, "tau4, v1^4 and beta periodicity",
            [checks.periodicity_report(k, DEFAULT_WINDOW, assembled) for k in ("tau4", "v14", "beta")])


def test_criterion_11_extensions(page, table):
    expected = [
        (("rho", "alpha"), "h1^3"),                      # rho alpha = eta^3
        (("eta", "alpha"), detected_chain(["rho", "rho", "rho", "beta"], table)),  # rho^3 beta = eta alpha
        (("alpha", "alpha"), "2*g/t^3 v^4"),             # alpha^2 = 4 beta
        (("omega", "rho"), "0"),
        (("omega", "eta"), "0"),
        (("omega", "beta"), "g/t^3 v^4"),
    ]
    extra = []
    for (x, y), want in expected:
        got = detected_product(x, y, table)
        if got != want:
            extra.append(f"{x}*{y} detected by {got}, expected {want}")
    if detected_chain(["eta", "eta", "eta"], table) != "h1^3":
        extra.append("eta^3 not detected by h1^3")
    if detected_chain(["rho", "rho", "rho", "beta"], table) != "g/t h1 v^2":
        extra.append("rho^3 beta not detected by g/t h1 v^2")
    verdict(11, "extension table and detected products", checks.extension_reports(page, table), extra)


def test_criterion_12_round_trips(page, table):
    extra = []
    text = page_to_json(page)
    if page_to_json(page_from_json(text)) != text:
        extra.append("E2 JSON export -> import -> export differs")
    n = 0
    for t in sorted(page.groups, key=lambda t: (t.s, t.q, t.w)):
        for b in basis_at(t):
            n += 1
            if parse_name(show_basis(b)) != b:
                extra.append(f"display/parse fails on {b}")
    for c in (0, 3):
        for which in ("e2", "homotopy"):
            data = chart_data(c, page, which, table)
            want = sum(len(g.generators) for t, g in page.nonzero() if t.s - t.w == c)
            if len(data.glyphs) != want:
                extra.append(f"coweight {c} {which} chart: {len(data.glyphs)} glyphs, {want} generators")
    if chart_data(3, page, "homotopy", table).glyphs:
        extra.append("coweight 3 E-infinity chart is not empty")
    print(f"    {n} basis elements round-tripped")
    verdict(12, "JSON, names and charts", [], extra)
