from hypothesis import given, settings, strategies as st

from c2eff.grading import TriDegree, Window
from c2eff.pages import (
    certify_window, collapse_report, compute_e2, d1_matrix, euler_violations, homology,
    homology_snf, page_from_json, page_to_json, tau4_stability_violations,
)

tri = st.builds(TriDegree, st.integers(-10, 10), st.integers(0, 14), st.integers(-10, 10))


def test_d1_matrix_examples():
    assert d1_matrix(TriDegree(0, 0, -2)).as_lists() == [[1]]
    assert d1_matrix(TriDegree(1, 1, 1)).is_zero()
    assert d1_matrix(TriDegree(4, 2, 2)).as_lists() == [[1]]


def test_homology_examples():
    g = homology(TriDegree(0, 0, -2))
    assert [(x.name, x.order) for x in g.generators] == [("2*t^2", None)]
    g = homology(TriDegree(1, 1, 1))
    assert [(x.name, x.order) for x in g.generators] == [("h1", 2)]


@settings(max_examples=200)
@given(tri)
def test_homology_routes_agree(t):
    assert sorted(homology(t).orders(), key=str) == sorted(homology_snf(t), key=str)


def test_certify_examples():
    _, flags = certify_window((0, 0), (0, 0), 10)
    assert [f.pattern for f in flags] == ["rho h1 tower"] and all(f.periodic for f in flags)
    _, flags = certify_window((1, 1), (4, 4), 10)
    assert flags == []
    _, flags = certify_window((0, 0), (0, 0), 0)
    assert len(flags) == 1


def test_vanishing_line(small_page):
    for t, g in small_page.groups.items():
        c = t.s - t.w
        if c % 4 == 3 and c >= -1:
            assert g.is_zero(), t


def test_collapse(small_page):
    rep = collapse_report(small_page)
    assert rep and not [e for e in rep if e.tag == "UNJUSTIFIED"]
    assert any(e.tag == "v14-linear" for e in rep if (e.source.s - e.source.w) % 4 == 1)
    assert collapse_report(compute_e2(Window.empty())) == []


def test_tau4_and_euler(small_page):
    assert tau4_stability_violations(small_page) == []
    assert euler_violations(small_page) == []


def test_json_round_trip():
    page = compute_e2(Window(-4, 4, -4, 4, 12))
    text = page_to_json(page)
    assert page_to_json(page_from_json(text)) == text
