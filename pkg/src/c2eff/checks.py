"""Verification suites shared by the command line and the tests.

Every check returns a Report; no violations means the property holds on
the stated range.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from . import coeff_f2 as f2
from . import coeff_z2 as z2
from .coeff_f2 import NC, PC
from .coeff_z2 import NCEven, RhoTau, TauEven
from .e1 import (
    TAU_H1,
    UNIT,
    E1Element,
    HPart,
    ZPart,
    _basis_product,
    alternative_factorizations,
    e1_d1,
    e1_enumerate,
    leibniz_d1,
)
from .grading import BiDegree, TriDegree, Window

COEFF_RADIUS = 12
E1_RADIUS = 12
E1_Q = 16
LIMIT = 20  # violations kept per check


@dataclass
class Report:
    name: str
    violations: list[str] = field(default_factory=list)
    checked: int = 0
    note: str = ""
    count: int = 0  # all violations, including those not kept

    @property
    def ok(self) -> bool:
        return self.count == 0

    def add(self, text: str) -> None:
        self.count += 1
        if len(self.violations) < LIMIT:
            self.violations.append(text)
        elif len(self.violations) == LIMIT:
            self.violations.append("...")

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL"
        extra = f" ({self.note})" if self.note else ""
        return f"{self.name}: {status}, {self.count} mismatches, {self.checked} checked{extra}"


# --- coefficient rings -----------------------------------------------------------


def f2_region_report(window: Window) -> Report:
    """f2_group_at against the degree formulas of the two cones, enumerated
    independently: PC(a,b) at (-b, -a-b) and NC(i,j) at (i, i+j+1)."""
    rep = Report("f2 region formula")
    found: dict[BiDegree, list] = {}
    lo = min(window.s_min, window.w_min, 0)
    hi = max(window.s_max, window.w_max, 0)
    span = hi - lo + 2
    for a in range(span):
        for b in range(span):
            d = BiDegree(-b, -a - b)
            if window.contains(d.s, d.w):
                found.setdefault(d, []).append(PC(a, b))
    for i in range(span):
        for j in range(1, span + 1):
            d = BiDegree(i, i + j + 1)
            if window.contains(d.s, d.w):
                found.setdefault(d, []).append(NC(i, j))
    for bd in window.bidegrees():
        rep.checked += 1
        got = f2.f2_group_at(bd.s, bd.w)
        expect = found.get(bd, [])
        region = (bd.s <= 0 and bd.w <= bd.s) or (bd.s >= 0 and bd.w >= bd.s + 2)
        if len(expect) > 1:
            rep.add(f"({bd.s},{bd.w}): {len(expect)} monomials")
        elif (got is None) != (not expect) or (expect and got != expect[0]):
            rep.add(f"({bd.s},{bd.w}): f2_group_at={got} enumeration={expect}")
        elif region != (got is not None):
            rep.add(f"({bd.s},{bd.w}): region formula disagrees")
    return rep


def bockstein_report(window: Window, k_max: int = 10) -> Report:
    rep = Report("bockstein closed form")
    for m in z2.z2_verify_closed_form(window):
        rep.add(m)
    rep.checked = sum(1 for _ in window.bidegrees())
    for k in range(1, k_max + 1):
        # d1(tau^(2k-1)) = t rho tau^(2k-2) and d1(g/(rho tau^(2k-1))) = t g/tau^(2k)
        for src, tgt in ((PC(2 * k - 1, 0), PC(2 * k - 2, 1)), (NC(1, 2 * k - 1), NC(0, 2 * k))):
            got = z2.bockstein_d1(z2.BocksteinClass(src, 0))
            rep.checked += 1
            if got != z2.BocksteinClass(tgt, 1):
                rep.add(f"k={k}: d1({src}) = {got}, expected t {tgt}")
    return rep


def _f2_basis(radius: int) -> list:
    return [x for _, x in f2.f2_enumerate(Window.square(radius))]


def _z2_basis(radius: int) -> list:
    return [z for _, z in z2.z2_enumerate(Window.square(radius))]


def f2_ring_report(radius: int = COEFF_RADIUS) -> Report:
    rep = Report("f2 ring axioms")
    basis = _f2_basis(radius)
    mul = f2.mono_mul
    one = f2.ONE
    for x in basis:
        if mul(one, x) != x or mul(x, one) != x:
            rep.add(f"unit fails on {x}")
        for y in basis:
            xy = mul(x, y)
            if xy != mul(y, x):
                rep.add(f"{x} {y} do not commute")
            for z in basis:
                rep.checked += 1
                left = None if xy is None else mul(xy, z)
                yz = mul(y, z)
                right = None if yz is None else mul(x, yz)
                if left != right:
                    rep.add(f"({x} {y}) {z} = {left} but {x} ({y} {z}) = {right}")
    return rep


def z2_ring_report(radius: int = COEFF_RADIUS) -> Report:
    rep = Report("z2 ring axioms")
    basis = _z2_basis(radius)
    mul = z2.z2_multiply
    el = z2.Z2Element.of
    one = el(TauEven(0))
    for x in basis:
        X = el(x)
        if mul(one, X) != X:
            rep.add(f"unit fails on {x}")
        for y in basis:
            Y = el(y)
            XY = mul(X, Y)
            if XY != mul(Y, X):
                rep.add(f"{x} {y} do not commute")
            for z in basis:
                rep.checked += 1
                Z = el(z)
                if mul(XY, Z) != mul(X, mul(Y, Z)):
                    rep.add(f"associativity fails on {x}, {y}, {z}")
    return rep


def steenrod_report(window: Window) -> Report:
    """Sq1 Sq1 = 0, the derivation rule on every pair whose product degree
    is in the window, reduce . delta = Sq1, delta . reduce = 0."""
    rep = Report("Sq1 and Bockstein exactness")
    basis = [x for _, x in f2.f2_enumerate(window)]

    def sq(x):
        return f2.f2_sq1_element(x)

    for x in basis:
        rep.checked += 1
        if not sq(f2.f2_sq1(x)).is_zero():
            rep.add(f"Sq1 Sq1 {x} != 0")
        if z2.z2_reduce(z2.z2_integral_bockstein(x)) != f2.f2_sq1(x):
            rep.add(f"reduce delta {x} != Sq1 {x}")
        for y in basis:
            d = x.degree + y.degree
            if not window.contains(d.s, d.w):
                continue
            rep.checked += 1
            xy = f2.f2_multiply(x, y)
            lhs = sq(xy)
            a = f2.f2_sq1(x) * f2.F2Element.of(y)
            b = f2.F2Element.of(x) * f2.f2_sq1(y)
            rhs = f2.F2Element(list(a.terms) + list(b.terms))
            if lhs != rhs:
                rep.add(f"Sq1({x} {y}) = {lhs} but the rule gives {rhs}")
    for _, z in z2.z2_enumerate(window):
        rep.checked += 1
        if not z2.z2_integral_bockstein_element(z2.z2_reduce(z2.Z2Element.of(z))).is_zero():
            rep.add(f"delta reduce {z} != 0")
    return rep


# --- the E1 algebra and d1 -------------------------------------------------------------


_raw_product = _basis_product.__wrapped__


def _mul_into(out: dict, x: dict, y: dict, sign: int = 1) -> None:
    for a, c in x.items():
        for b, d in y.items():
            for u, e in _raw_product(a, b):
                out[u] = out.get(u, 0) + sign * c * d * e


def _e1_blocks(radius: int, q_max: int) -> dict[TriDegree, list]:
    out = {}
    for s in range(-radius, radius + 1):
        for w in range(-radius, radius + 1):
            for q in range(q_max + 1):
                b = e1_enumerate(TriDegree(s, q, w))
                if b:
                    out[TriDegree(s, q, w)] = b
    return out


def _in_box(t: TriDegree, radius: int, q_max: int) -> bool:
    return abs(t.s) <= radius and abs(t.w) <= radius and t.q <= q_max


def d1_squared_report(window: Window) -> Report:
    rep = Report("d1 squared")
    for t in window.tridegrees():
        for b in e1_enumerate(t):
            rep.checked += 1
            if not e1_d1(e1_d1(b)).is_zero():
                rep.add(f"d1 d1 {b} != 0")
    return rep


def e1_pairs_report(radius: int = E1_RADIUS, q_max: int = E1_Q) -> tuple[Report, Report]:
    """Commutativity and the Leibniz rule on every ordered pair of basis
    elements in the box whose product degree is also in the box."""
    comm = Report("e1 commutativity")
    leib = Report("leibniz")
    blocks = _e1_blocks(radius, q_max)
    d1 = {}
    for bs in blocks.values():
        for b in bs:
            d1[b] = e1_d1(b).coeffs
    items = sorted(blocks.items(), key=lambda kv: (kv[0].s, kv[0].q, kv[0].w))
    for ta, xs in items:
        for tb, ys in items:
            tc = ta + tb
            if not _in_box(tc, radius, q_max):
                continue
            for x in xs:
                dx = d1[x]
                for y in ys:
                    leib.checked += 1
                    xy = _raw_product(x, y)
                    if (ta.s, ta.q, ta.w) <= (tb.s, tb.q, tb.w):
                        comm.checked += 1
                        if E1Element(dict(xy)) != E1Element(dict(_raw_product(y, x))):
                            comm.add(f"{x} {y} do not commute")
                    dy = d1[y]
                    if not xy and not dx and not dy:
                        continue
                    lhs: dict = {}
                    for u, c in xy:
                        du = d1.get(u)
                        if du is None:
                            du = e1_d1(u).coeffs
                        for v, e in du.items():
                            lhs[v] = lhs.get(v, 0) + c * e
                    rhs: dict = {}
                    _mul_into(rhs, dx, {y: 1})
                    _mul_into(rhs, {x: 1}, dy)
                    if E1Element(lhs) != E1Element(rhs):
                        leib.add(f"d1({x} {y}) breaks the Leibniz rule")
    return comm, leib


def e1_unit_report(window: Window) -> Report:
    rep = Report("e1 unit")
    one = E1Element.of(UNIT)
    for t in window.tridegrees():
        for b in e1_enumerate(t):
            rep.checked += 1
            x = E1Element.of(b)
            if one * x != x or x * one != x:
                rep.add(f"unit fails on {b}")
    return rep


def port_agreement_report(radius: int = E1_RADIUS, q_max: int = E1_Q, samples: int = 200_000, seed: int = 0) -> Report:
    """The compiled product against _basis_product: every pair in the box with
    product in the box, plus sampled pairs whose first factor lies in the
    doubled box (where the partial products of a triple can land)."""
    from . import fastmul

    rep = Report("compiled product agreement")
    blocks = _e1_blocks(radius, q_max)
    basis, starts, degs, _ = fastmul.pack_blocks(blocks, radius, q_max)
    elems = [fastmul.decode(r) for r in basis]
    for a in range(len(degs)):
        terms, coefs, counts = fastmul.block_products(basis, starts, degs, a, radius, q_max)
        n = 0
        da = degs[a]
        for b in range(len(degs)):
            db = degs[b]
            s, q, w = da[0] + db[0], da[1] + db[1], da[2] + db[2]
            if not (q <= q_max and -radius <= s <= radius and -radius <= w <= radius):
                continue
            for i in range(starts[a], starts[a + 1]):
                for j in range(starts[b], starts[b + 1]):
                    got = sorted((tuple(int(v) for v in terms[n, r]), int(coefs[n, r])) for r in range(counts[n]))
                    want = sorted((fastmul.encode(u), c) for u, c in _raw_product(elems[i], elems[j]))
                    n += 1
                    rep.checked += 1
                    if got != want:
                        rep.add(f"{elems[i]} * {elems[j]}: compiled {got}, reference {want}")
    wide = [b for bs in _e1_blocks(2 * radius, q_max).values() for b in bs]
    box = [b for bs in blocks.values() for b in bs]
    rng = random.Random(seed)
    done = 0
    while done < samples:
        x, y = rng.choice(wide), rng.choice(box)
        if not _in_box(x.tridegree + y.tridegree, radius, q_max):
            continue
        done += 1
        rep.checked += 1
        if E1Element(fastmul.product_terms(x, y)) != E1Element(dict(_raw_product(x, y))):
            rep.add(f"{x} * {y}: compiled and reference products differ")
    rep.note = f"all box pairs, {samples} sampled wide pairs"
    return rep


def e1_associativity_report(radius: int = E1_RADIUS, q_max: int = E1_Q) -> Report:
    """Every basis triple with total degree in the box, run on the compiled
    product (see port_agreement_report for its tie to the reference)."""
    from . import fastmul

    rep = Report("e1 associativity")
    blocks = _e1_blocks(radius, q_max)
    basis, starts, degs, first = fastmul.pack_blocks(blocks, radius, q_max)
    checked, fails, nfail = fastmul.associativity_scan(basis, starts, degs, first, radius, q_max, LIMIT)
    rep.checked = int(checked)
    for i, j, k in fails:
        x, y, z = (fastmul.decode(basis[n]) for n in (i, j, k))
        rep.add(f"({x} {y}) {z} != {x} ({y} {z})")
    rep.count = int(nfail)
    return rep


def e1_associativity_sample(radius: int = E1_RADIUS, q_max: int = E1_Q, samples: int = 20_000, seed: int = 0) -> Report:
    """Random triples on the reference product (no compiled code)."""
    rep = Report("e1 associativity (reference, sampled)")
    full = [b for bs in _e1_blocks(radius, q_max).values() for b in bs]
    rng = random.Random(seed)
    while rep.checked < samples:
        x, y, z = rng.choice(full), rng.choice(full), rng.choice(full)
        if not _in_box(x.tridegree + y.tridegree + z.tridegree, radius, q_max):
            continue
        rep.checked += 1
        left: dict = {}
        _mul_into(left, dict(_raw_product(x, y)), {z: 1})
        right: dict = {}
        _mul_into(right, {x: 1}, dict(_raw_product(y, z)))
        if E1Element(left) != E1Element(right):
            rep.add(f"({x} {y}) {z} != {x} ({y} {z})")
    return rep


def factorization_report(window: Window) -> Report:
    rep = Report("factorization independence")
    for t in window.tridegrees():
        for b in e1_enumerate(t):
            if not (isinstance(b, HPart) and isinstance(b.c, NC)):
                continue
            ref = e1_d1(b)
            for f in alternative_factorizations(b):
                rep.checked += 1
                if leibniz_d1(f) != ref:
                    rep.add(f"{b}: factorization {f} gives a different d1")
    return rep


def worked_example_report() -> Report:
    """d1(g/(r^i t^(4k+1)) h1) = g/(r^(i-2) t^(4k+2)) h1^2 + g/(r^(i-4) t^(4k+4)) v^2."""
    rep = Report("worked d1 example")
    for i, k in product((4, 5, 6, 7), (0, 1)):
        rep.checked += 1
        got = e1_d1(HPart(NC(i, 4 * k + 1), 1, 0))
        want = E1Element.of(HPart(NC(i - 2, 4 * k + 2), 2, 0)) + E1Element.of(ZPart(NCEven(i - 4, 2 * k + 2), 1))
        if got != want:
            rep.add(f"(i,k)=({i},{k}): got {got}")
    return rep


def twisted_square_report() -> Report:
    rep = Report("twisted square", checked=1)
    x = E1Element.of(TAU_H1)
    want = E1Element.of(HPart(PC(2, 0), 2, 0)) + E1Element.of(ZPart(RhoTau(2, 0), 1))
    if x * x != want:
        rep.add(f"(t h1)^2 = {x * x}")
    return rep


# --- pages and homotopy ----------------------------------------------------------


def collapse_reports(page) -> list[Report]:
    from .pages import collapse_report

    col = Report("collapse certification")
    for e in collapse_report(page):
        col.checked += 1
        if e.tag == "UNJUSTIFIED":
            col.add(f"d{e.r} on {e.generator} at ({e.source.s},{e.source.q},{e.source.w}) not excluded")
    van = Report("vanishing line")
    for t, g in page.groups.items():
        c = t.s - t.w
        if c % 4 == 3 and c >= -1:
            van.checked += 1
            if not g.is_zero():
                van.add(f"E2 nonzero at ({t.s},{t.q},{t.w})")
    return [col, van]


def tau4_e2_check(page) -> Report:
    from .pages import tau4_stability_violations

    rep = Report("tau4 on E2 outside the band", checked=len(page.groups))
    for v in tau4_stability_violations(page):
        rep.add(v)
    return rep


def extension_reports(page, table) -> list[Report]:
    from .homotopy import registry_violations, rho_record_check, validate_extensions

    rep = Report("extension table", checked=len(table))
    for v in registry_violations() + validate_extensions(table, page) + rho_record_check(table):
        rep.add(v)
    return [rep]


def oracle_report(page, table, s_range=(-10, 16)) -> Report:
    from .homotopy import compare_coweight0

    rep = Report("coweight 0 against the oracle")
    for c in compare_coweight0(s_range, page, table):
        rep.checked += 1
        if not c.match or c.status != "resolved":
            rep.add(f"s={c.s}: assembled {c.assembled} [{c.status}], oracle {c.oracle}")
    return rep


def unresolved_report(assembled: dict) -> Report:
    rep = Report("unresolved columns", checked=len(assembled))
    for bd, g in sorted(assembled.items(), key=lambda kv: (kv[0].s, kv[0].w)):
        if g.status != "resolved":
            rep.add(f"({bd.s},{bd.w}) {g.status}: {'; '.join(g.unresolved)}")
    return rep


def periodicity_report(kind: str, window: Window, assembled: dict) -> Report:
    from .homotopy import periodicity_check

    rep = Report(f"{kind} periodicity")
    rep.checked = len(assembled)
    for v in periodicity_check(kind, window, assembled):
        rep.add(f"({v.source.s},{v.source.w}) -> ({v.target.s},{v.target.w}) expected {v.expected}: "
                f"{v.source_type} vs {v.target_type}")
    return rep


def homotopy_reports(page, table, assembled) -> list[Report]:
    out = extension_reports(page, table)
    out.append(unresolved_report(assembled))
    if page.window.contains(-10, -10) and page.window.contains(16, 16):
        out.append(oracle_report(page, table))
    out.extend(periodicity_report(k, page.window, assembled) for k in ("tau4", "v14", "beta"))
    return out
