"""c2eff command line.

Exit status: 0 on success, 1 when a verification suite reports a
violation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .coeff_f2 import f2_enumerate
from .coeff_z2 import bockstein_einf, z2_closed_form
from .grading import Window

ORACLE_RANGE = (-10, 16)
CONFIG_KEYS = {"s_min", "s_max", "w_min", "w_max", "q_max", "oracle_s_min", "oracle_s_max", "output_dir"}


class UsageError(Exception):
    pass


def read_config(path: str) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"--config: cannot read {path}: {e.strerror}")
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"--config {path}:{n}: bad line {raw.strip()!r}")
        value = value.strip()
        if key != "output_dir":
            try:
                value = int(value)
            except ValueError:
                raise UsageError(f"--config {path}:{n}: {key} needs an integer")
        out[key] = value
    return out


def _window_from(args, default: Window) -> Window:
    conf = read_config(args.config) if args.config else {}
    b = {
        "s_min": default.s_min, "s_max": default.s_max,
        "w_min": default.w_min, "w_max": default.w_max, "q_max": default.q_max,
    }
    b.update({k: v for k, v in conf.items() if k in b})
    if args.s is not None:
        b["s_min"], b["s_max"] = -args.s, args.s
    if args.w is not None:
        b["w_min"], b["w_max"] = -args.w, args.w
    for k in b:
        v = getattr(args, k)
        if v is not None:
            b[k] = v
    if b["s_min"] > b["s_max"]:
        raise UsageError(f"--s-min {b['s_min']} exceeds --s-max {b['s_max']}")
    if b["w_min"] > b["w_max"]:
        raise UsageError(f"--w-min {b['w_min']} exceeds --w-max {b['w_max']}")
    if b["q_max"] < 0:
        raise UsageError(f"--q-max must be >= 0, got {b['q_max']}")
    args.conf = conf
    return Window(**b)


def _e2(window: Window):
    from .pages import compute_e2

    return compute_e2(window)


def _table(window: Window):
    from .homotopy import extension_table

    return extension_table(window)


def _say(args, text: str) -> None:
    print(text, file=args.out)


# --- subcommands -------------------------------------------------------------------


def cmd_coeff(args) -> int:
    from .names import show_f2, show_z2

    window = _window_from(args, Window.square(12))
    rows = []
    if args.ring == "f2":
        for d, m in f2_enumerate(window):
            rows.append({"s": d.s, "w": d.w, "name": show_f2(m), "order": "2"})
    else:
        einf = bockstein_einf(window)
        for d in window.bidegrees():
            g = einf.get(d)
            if g is not None:
                rows.append({"s": d.s, "w": d.w, "name": show_z2(g.generator), "order": z2_closed_form(d.s, d.w)})
    if args.json:
        _say(args, json.dumps({"ring": args.ring, "groups": rows}, indent=1, sort_keys=True))
    else:
        for r in rows:
            _say(args, f"({r['s']},{r['w']}) {r['order']:>2} {r['name']}")
    return 0


def cmd_e1(args) -> int:
    from .pages import e1_page, page_to_json

    page = e1_page(_window_from(args, Window.square(4, 8)))
    return _show_page(args, page, page_to_json)


def cmd_e2(args) -> int:
    from .pages import page_to_json

    page = _e2(_window_from(args, Window.square(8, 12)))
    return _show_page(args, page, page_to_json)


def _show_page(args, page, to_json) -> int:
    if args.json:
        args.out.write(to_json(page))
        return 0
    for t, g in page.nonzero():
        gens = ", ".join(f"{x.name}" + ("" if x.order is None else f" [{x.order}]") for x in g.generators)
        _say(args, f"({t.s},{t.q},{t.w}) {gens}")
    return 0


def cmd_homotopy(args) -> int:
    from .homotopy import assemble_window, homotopy_to_json

    window = _window_from(args, Window.square(12, 16))
    page = _e2(window)
    assembled = assemble_window(page, _table(window))
    lo = args.conf.get("oracle_s_min", ORACLE_RANGE[0])
    hi = args.conf.get("oracle_s_max", ORACLE_RANGE[1])
    if args.json:
        args.out.write(homotopy_to_json(assembled, (lo, hi)))
        return 0
    for bd in sorted(assembled, key=lambda d: (d.s - d.w, d.s)):
        g = assembled[bd]
        if g.summands or g.status != "resolved":
            parts = " + ".join(("Z" if o is None else f"Z/{o}") + f"<{n}>" for n, o in g.summands) or "0"
            _say(args, f"({bd.s},{bd.w}) {parts} [{g.status}]")
    return 0


def cmd_chart(args) -> int:
    from .chart import emit_chart

    window = _window_from(args, Window.square(16, 20))
    if args.page == "e1":
        from .pages import e1_page

        page = e1_page(window)
    else:
        page = _e2(window)
    table = _table(window) if args.page == "homotopy" else None
    args.out.write(emit_chart(args.coweight, page, args.page, args.format, table))
    if args.format == "text":
        args.out.write("\n")
    return 0


def _radius(window: Window, cap: int) -> int:
    return min(cap, max(abs(window.s_min), abs(window.s_max), abs(window.w_min), abs(window.w_max)))


def _suite_coeff(window: Window) -> list:
    return [
        checks.f2_region_report(window),
        checks.bockstein_report(window),
        checks.steenrod_report(window),
    ]


def _suite_ring(window: Window) -> list:
    r = _radius(window, checks.COEFF_RADIUS)
    q = min(checks.E1_Q, window.q_max)
    comm, _ = checks.e1_pairs_report(r, q)
    return [
        checks.f2_ring_report(r),
        checks.z2_ring_report(r),
        comm,
        checks.e1_unit_report(Window.square(r, q)),
        checks.port_agreement_report(r, q, samples=20_000),
        checks.e1_associativity_report(r, q),
        checks.twisted_square_report(),
    ]


def _suite_d1(window: Window) -> list:
    r = _radius(window, checks.E1_RADIUS)
    q = min(checks.E1_Q, window.q_max)
    _, leib = checks.e1_pairs_report(r, q)
    return [
        checks.d1_squared_report(window),
        leib,
        checks.factorization_report(window),
        checks.worked_example_report(),
    ]


def _suite_collapse(window: Window) -> list:
    page = _e2(window)
    return checks.collapse_reports(page) + [checks.tau4_e2_check(page)]


def _suite_periodicity(window: Window) -> list:
    from .homotopy import assemble_window

    page = _e2(window)
    table = _table(window)
    assembled = assemble_window(page, table)
    return checks.homotopy_reports(page, table, assembled)


SUITES = {
    "coeff": _suite_coeff,
    "ring": _suite_ring,
    "d1": _suite_d1,
    "collapse": _suite_collapse,
    "periodicity": _suite_periodicity,
}


def cmd_verify(args) -> int:
    window = _window_from(args, Window.square(6, 8))
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for n in names:
        reports.extend(SUITES[n](window))
    failed = 0
    for r in reports:
        _say(args, r.line())
        for v in r.violations:
            _say(args, f"  {v}")
        failed += not r.ok
    total = sum(r.count for r in reports)
    _say(args, f"{total} mismatches" + (f" in {failed} failed checks" if failed else ""))
    return 1 if failed else 0


def cmd_export(args) -> int:
    from .homotopy import assemble_window, homotopy_to_json
    from .pages import page_to_json

    window = _window_from(args, Window.square(12, 16))
    out = Path(args.path)
    if args.conf.get("output_dir") and not out.is_absolute():
        out = Path(args.conf["output_dir"]) / out
    out.mkdir(parents=True, exist_ok=True)
    page = _e2(window)
    (out / "e2.json").write_text(page_to_json(page))
    assembled = assemble_window(page, _table(window))
    lo = args.conf.get("oracle_s_min", ORACLE_RANGE[0])
    hi = args.conf.get("oracle_s_max", ORACLE_RANGE[1])
    (out / "homotopy.json").write_text(homotopy_to_json(assembled, (lo, hi)))
    _say(args, f"wrote {out / 'e2.json'} and {out / 'homotopy.json'}")
    return 0


# --- argument parsing ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("window")
    g.add_argument("--s", type=int, help="symmetric stem radius")
    g.add_argument("--w", type=int, help="symmetric weight radius")
    for name in ("s-min", "s-max", "w-min", "w-max", "q-max"):
        g.add_argument(f"--{name}", type=int, dest=name.replace("-", "_"))
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--json", action="store_true")

    p = _Parser(prog="c2eff", description="C2-effective spectral sequence for connective real K-theory")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    c = sub.add_parser("coeff", parents=[common], help="coefficient ring groups")
    c.add_argument("--ring", choices=("f2", "z2"), default="f2")
    c.set_defaults(func=cmd_coeff)
    sub.add_parser("e1", parents=[common], help="E1 page").set_defaults(func=cmd_e1)
    sub.add_parser("e2", parents=[common], help="E2 = E-infinity page").set_defaults(func=cmd_e2)
    sub.add_parser("homotopy", parents=[common], help="assembled homotopy groups").set_defaults(func=cmd_homotopy)
    c = sub.add_parser("chart", parents=[common], help="chart of one coweight line")
    c.add_argument("--coweight", type=int, required=True)
    c.add_argument("--page", choices=("e1", "e2", "homotopy"), default="e2")
    c.add_argument("--format", choices=("svg", "text"), default="svg")
    c.set_defaults(func=cmd_chart)
    c = sub.add_parser("verify", parents=[common], help="run verification suites")
    c.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    c.set_defaults(func=cmd_verify)
    c = sub.add_parser("export", parents=[common], help="write E2 and homotopy JSON")
    c.add_argument("path")
    c.set_defaults(func=cmd_export)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        args.out = out
        return args.func(args)
    except UsageError as e:
        print(f"c2eff: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
