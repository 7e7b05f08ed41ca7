from c2eff.grading import BiDegree
from c2eff.homotopy import (
    ExtensionRecord, assemble, class_from_name, compare_coweight0, detected_chain, detected_product,
    homotopy_to_json, assemble_window, periodicity_check, registry_violations, rho_record_check,
    seed_records, validate_extensions,
)
from c2eff.oracle import oracle_degree


def records(table):
    return {(r.kind, r.source_name, r.target_name) for r in table}


def test_seeds_and_propagation(small_table):
    assert ("rho", "g/t v^2", "h1^3") in records(seed_records())
    got = records(small_table)
    assert ("rho", "g/t h1 v^2", "h1^4") in got
    assert ("eta", "2*t^2", "r^3 v^2 + t^2 r h1^2") in got


def test_table_validates(small_page, small_table):
    assert validate_extensions(small_table, small_page) == []
    assert rho_record_check(small_table) == []
    assert registry_violations() == []


def test_bad_record_is_caught(small_page):
    r = seed_records()[0]
    bad = ExtensionRecord("eta", r.source, r.target)
    assert validate_extensions([bad], small_page)


def test_oracle_examples():
    assert oracle_degree(0).iso_type() == (2, ())
    assert oracle_degree(-1).iso_type() == (1, ())


def test_coweight0_matches_oracle(small_page, small_table):
    rows = compare_coweight0((-6, 10), small_page, small_table)
    assert rows and all(r.match and r.status == "resolved" for r in rows)
    assert compare_coweight0((1, 0), small_page, small_table) == []


def test_assemble_examples(small_page, small_table):
    assert assemble(0, 0, small_page, small_table).iso_type() == (2, ())
    assert assemble(1, 1, small_page, small_table).iso_type() == oracle_degree(1).iso_type()
    g = assemble(1, 0, small_page, small_table)
    assert g.status == "resolved" and any(n == "t h1" for n, _ in g.summands)


def test_detected_products(small_table):
    assert detected_product("rho", "alpha", small_table) == "h1^3"
    assert detected_product("eta", "alpha", small_table) == detected_chain(["rho", "rho", "rho", "beta"], small_table)
    assert detected_product("alpha", "alpha", small_table) == "2*g/t^3 v^4"
    assert detected_product("omega", "rho", small_table) == "0"
    assert detected_product("omega", "eta", small_table) == "0"
    assert detected_product("omega", "beta", small_table) == "g/t^3 v^4"


def test_periodicity_samples(small_page, small_table):
    asm = assemble_window(small_page, small_table)
    assert asm[BiDegree(2, 0)].iso_type() == asm[BiDegree(2, -4)].iso_type()
    assert asm[BiDegree(0, 0)].iso_type() == asm[BiDegree(8, 8)].iso_type()
    bad = {(v.source.s, v.source.w) for v in periodicity_check("tau4", small_page.window, asm)}
    assert (2, 4) not in bad


def test_homotopy_json_is_stable(small_page, small_table):
    asm = assemble_window(small_page, small_table)
    assert homotopy_to_json(asm, (0, 2)) == homotopy_to_json(asm, (0, 2))


def test_class_names_round_trip(small_table):
    for r in small_table:
        assert class_from_name(r.source_name).name == r.source_name
