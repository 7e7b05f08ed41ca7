from c2eff.chart import chart_data, emit_chart


def test_coweight0(small_page):
    d = chart_data(0, small_page, "e2")
    squares = [(g.s, g.q) for g in d.glyphs if g.square]
    assert (0, 0) in squares
    assert all(any(g.s == p and g.q == p and not g.square for g in d.glyphs) for p in range(1, 5))
    assert any(l.kind == "h1" for l in d.lines)


def test_coweight1_hidden_omega(small_page, small_table):
    d = chart_data(1, small_page, "homotopy", small_table)
    assert any(l.kind == "hidden-omega" and (l.a[:2], l.b[:2]) == ((1, 1), (1, 2)) for l in d.lines)


def test_empty_chart(small_page):
    assert "empty chart" in emit_chart(3, small_page, "e2", "text")
    svg = emit_chart(3, small_page, "e2", "svg")
    assert svg.startswith("<svg") and "legend" in svg and 'class="dot"' not in svg


def test_glyphs_match_groups(small_page):
    for c in (0, 1, 2, -4):
        d = chart_data(c, small_page, "e2")
        n = sum(len(g.generators) for t, g in small_page.nonzero() if t.s - t.w == c)
        assert len(d.glyphs) == n
