"""Homotopy groups from E-infinity: named elements, hidden extensions,
additive assembly along rho h1-chains, periodicity and the coweight-0 check.

A class at E-infinity is a pair (tridegree, coordinates on the E2
generators there).  Products of classes are computed on representatives in
E1; hidden products come from the extension table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Union

from .coeff_f2 import NC, PC
from .coeff_z2 import NCEven, RhoTau, TauEven, ThetaOdd
from .e1 import H1, RHO, TAU_H1, TAU_SQ, UNIT, E1Basis, E1Element, HPart, ZPart, e1_multiply, e1_product
from .grading import BiDegree, TriDegree, Window
from .linalg import iso_type, reduce_presentation
from .names import parse_element
from .oracle import oracle_degree
from .pages import (
    Page,
    UncertifiedWindow,
    column_max_q,
    divisible_by,
    homology,
    is_certified,
    preimage,
    _stable_level,
)

DEFAULT_WINDOW = Window(-30, 30, -30, 30, 40)


# --- classes ---------------------------------------------------------------------


@dataclass(frozen=True)
class EClass:
    """An E-infinity class: coordinates on the E2 generators at ``t``."""

    t: TriDegree
    coords: tuple

    def is_zero(self) -> bool:
        orders = homology(self.t).orders()
        return all((c if o is None else c % o) == 0 for c, o in zip(self.coords, orders))

    def rep(self) -> E1Element:
        out = E1Element()
        for g, c in zip(homology(self.t).generators, self.coords):
            if c:
                out = out + c * g.rep
        return out

    @property
    def name(self) -> str:
        gens = homology(self.t).generators
        terms = []
        for g, c in zip(gens, self.coords):
            if not c:
                continue
            if c == 1:
                terms.append(g.name)
            else:
                terms.append(f"{c}*({g.name})" if " + " in g.name else f"{c}*{g.name}")
        return " + ".join(terms) or "0"

    def __add__(self, other: "EClass") -> "EClass":
        if other.t != self.t:
            raise ValueError("classes in different tridegrees")
        return EClass(self.t, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "EClass":
        return EClass(self.t, tuple(-c for c in self.coords))


def class_of(x: E1Element) -> Optional[EClass]:
    """The E-infinity class of a d1-cycle (None for the zero element)."""
    if x.is_zero():
        return None
    (t,) = x.tridegrees()
    return EClass(t, tuple(homology(t).coordinates(x)))


def generator_class(t: TriDegree, j: int) -> EClass:
    n = len(homology(t))
    return EClass(t, tuple(1 if i == j else 0 for i in range(n)))


def nonzero_class(x: E1Element) -> Optional[EClass]:
    c = class_of(x)
    return None if c is None or c.is_zero() else c


def class_from_name(text: str) -> EClass:
    c = class_of(parse_element(text))
    if c is None:
        raise ValueError(f"{text!r} is zero")
    return c


# --- named elements --------------------------------------------------------------


@dataclass(frozen=True)
class NamedElement:
    name: str
    bidegree: BiDegree
    filtration: int
    detector: E1Basis
    coefficient: int = 1
    relations: tuple = ()

    def detector_element(self) -> E1Element:
        return E1Element.of(self.detector, self.coefficient)

    def detector_class(self) -> EClass:
        c = class_of(self.detector_element())
        assert c is not None
        return c


V1_4 = ZPart(TauEven(0), 2)
TAU_4 = ZPart(TauEven(2), 0)

REGISTRY: dict[str, NamedElement] = {
    e.name: e
    for e in [
        NamedElement("eta", BiDegree(1, 1), 1, H1, relations=("omega eta = 0",)),
        NamedElement("rho", BiDegree(-1, -1), 0, RHO, relations=("omega rho = 0",)),
        NamedElement("omega", BiDegree(0, 0), 0, UNIT, 2, ("omega = rho eta + 2", "omega rho = 0", "omega eta = 0")),
        NamedElement("tau4", BiDegree(0, -4), 0, TAU_4),
        NamedElement("v14", BiDegree(8, 4), 4, V1_4, relations=("v14 rho^4 = eta^4 tau4",)),
        NamedElement("alpha", BiDegree(4, 4), 2, ZPart(ThetaOdd(1), 1), relations=("rho alpha = eta^3", "alpha^2 = 4 beta")),
        NamedElement("beta", BiDegree(8, 8), 3, HPart(NC(3, 1), 1, 1), relations=("tau4 beta = v14", "rho^3 beta = eta alpha")),
    ]
}

# homotopy products fixed by the defining relations (value: list of factors
# whose detected product is the answer, or [] for zero)
_RELATION_VALUES: dict[frozenset, list[str]] = {
    frozenset(["omega", "rho"]): [],
    frozenset(["omega", "eta"]): [],
    frozenset(["rho", "alpha"]): ["eta", "eta", "eta"],
}


def registry_violations() -> list[str]:
    out = []
    for e in REGISTRY.values():
        t = e.detector.tridegree
        if t.bidegree() != e.bidegree or t.q != e.filtration:
            out.append(f"{e.name}: detector at {t}, declared {e.bidegree} filtration {e.filtration}")
        c = class_of(e.detector_element())
        if c is None or c.is_zero():
            out.append(f"{e.name}: detector is zero at E-infinity")
    return out


# --- extension records -------------------------------------------------------

KINDS = ("rho", "eta", "tau4", "omega")
_KIND_ELEMENT = {"rho": "rho", "eta": "eta", "tau4": "tau4", "omega": "omega"}


def kind_element(kind: str) -> NamedElement:
    return REGISTRY[_KIND_ELEMENT[kind]]


@dataclass(frozen=True)
class ExtensionRecord:
    kind: str
    source: EClass
    target: EClass
    seed: bool = False

    @property
    def source_name(self) -> str:
        return self.source.name

    @property
    def target_name(self) -> str:
        return self.target.name

    def __str__(self) -> str:
        return f"{self.kind}: {self.source_name} {self.source.t} -> {self.target_name} {self.target.t}"


def _cls(x: E1Element) -> EClass:
    c = class_of(x)
    assert c is not None and not c.is_zero(), x
    return c


def _seed_specs() -> list[tuple[str, E1Element, E1Element]]:
    e = E1Element.of
    tau_h1_sq = e1_product([e(TAU_H1), e(TAU_H1)])
    return [
        ("rho", e(ZPart(ThetaOdd(1), 1)), e(HPart(PC(0, 0), 3, 0))),
        ("rho", e(ZPart(TauEven(0), 1), 2), e1_product([tau_h1_sq, e(H1)])),
        ("eta", e(TAU_SQ, 2), e1_multiply(e(RHO), tau_h1_sq)),
        ("eta", e(ZPart(TauEven(1), 1), 2), e(ZPart(RhoTau(3, 0), 2))),
        ("tau4", e(HPart(NC(1, 1), 1, 0)), tau_h1_sq),
        ("tau4", e(ZPart(NCEven(1, 1), 0)), e(TAU_H1)),
        ("omega", e(TAU_H1), e(HPart(PC(1, 1), 2, 0))),
        ("omega", e(HPart(NC(1, 1), 1, 0)), e(HPart(NC(0, 1), 2, 0))),
        ("omega", e(HPart(NC(3, 1), 1, 1)), e(ZPart(ThetaOdd(2), 2))),
    ]


def seed_records() -> list[ExtensionRecord]:
    return [ExtensionRecord(k, _cls(a), _cls(b), True) for k, a, b in _seed_specs()]


def _times(factor: E1Basis):
    f = E1Element.of(factor)

    def op(x: EClass) -> Optional[EClass]:
        return nonzero_class(e1_multiply(f, x.rep()))

    return op


def _tau_inverse4(x: EClass) -> Optional[EClass]:
    """The class whose tau^4-multiple is x, where tau^4 is injective on E2."""
    src = x.t + TriDegree(0, 0, 4)
    coords = preimage(src, E1Element.of(TAU_4), list(x.coords))
    if coords is None:
        return None
    c = EClass(src, tuple(coords))
    return None if c.is_zero() else c


_OPS = {
    "tau4": _times(TAU_4),
    "tau-4": _tau_inverse4,
    "v14": _times(V1_4),
    "h1": _times(H1),
    "tauh1": _times(TAU_H1),
}


# how each kind of extension propagates
PROPAGATION = {
    "rho": ("tau4", "v14", "h1"),
    "eta": ("tau4", "v14"),
    "tau4": ("v14",),
    # omega (x y) = (omega x) y for y detected by tau h1
    "omega": ("tau4", "tau-4", "v14", "tauh1"),
}


_OP_SHIFT = {"tau4": TriDegree(0, 0, -4), "tau-4": TriDegree(0, 0, 4), "v14": TriDegree(8, 4, 4), "h1": TriDegree(1, 1, 1), "tauh1": TriDegree(1, 1, 0)}


def _shifted(t: TriDegree, opname: str) -> TriDegree:
    return t + _OP_SHIFT[opname]


def _in_range(t: TriDegree, window: Window) -> bool:
    if not window.contains(t.s, t.w):
        return False
    top = column_max_q(t.s, t.w)
    if top is None:
        top = max(_stable_level(t.s, t.w), window.q_max) + 2
    return t.q <= top


def _forced_omega(r: ExtensionRecord, window: Window) -> list[ExtensionRecord]:
    """omega records forced by r through tau h1.

    If u = x tau h1 at E-infinity and omega u is detected by z, then
    (omega x) tau eta = omega (x tau eta) is nonzero, so omega x is nonzero and
    sits above x.  When the finite column of x holds a single class y above x,
    omega x is detected by y.
    """
    if r.kind != "omega":
        return []
    t = r.source.t + TriDegree(-1, -1, 0)
    if not window.contains(t.s, t.w) or t.q < 0:
        return []
    top = column_max_q(t.s, t.w)
    if top is None:
        return []
    out = []
    for j in range(len(homology(t).generators)):
        x = generator_class(t, j)
        u = _OPS["tauh1"](x)
        if u is None or not (u + (-r.source)).is_zero():
            continue
        above = [(q, k) for q in range(t.q + 1, top + 1) for k in range(len(homology(TriDegree(t.s, q, t.w)).generators))]
        if len(above) != 1:
            continue
        q, k = above[0]
        if homology(TriDegree(t.s, q, t.w)).generators[k].order != 2:
            continue
        out.append(ExtensionRecord("omega", x, generator_class(TriDegree(t.s, q, t.w), k)))
    return out


@lru_cache(maxsize=None)
def extension_table(window: Window = DEFAULT_WINDOW) -> tuple[ExtensionRecord, ...]:
    """Seed records closed under propagation inside the window."""
    seen: dict[tuple, ExtensionRecord] = {}
    queue = []
    for r in seed_records():
        key = (r.kind, r.source, r.target)
        seen[key] = r
        queue.append(r)
    while queue:
        r = queue.pop()
        for rec in _forced_omega(r, window):
            key = (rec.kind, rec.source, rec.target)
            if key not in seen and not any(k[0] == "omega" and k[1] == rec.source for k in seen):
                seen[key] = rec
                queue.append(rec)
        for opname in PROPAGATION[r.kind]:
            op = _OPS[opname]
            if not (_in_range(_shifted(r.source.t, opname), window) and _in_range(_shifted(r.target.t, opname), window)):
                continue
            ca, cb = op(r.source), op(r.target)
            if ca is None or cb is None:
                continue
            key = (r.kind, ca, cb)
            if key in seen:
                continue
            rec = ExtensionRecord(r.kind, ca, cb)
            seen[key] = rec
            queue.append(rec)
    return tuple(sorted(seen.values(), key=lambda r: (KINDS.index(r.kind), r.source.t, r.source.coords, r.target.coords)))


def validate_extensions(table: Iterable[ExtensionRecord], einf: Optional[Page] = None) -> list[str]:
    """Degree, existence and annihilation conditions of each record."""
    out = []
    for r in table:
        elt = kind_element(r.kind)
        shift = elt.detector.tridegree
        ds, dw = r.target.t.s - r.source.t.s, r.target.t.w - r.source.t.w
        if (ds, dw) != (shift.s, shift.w):
            out.append(f"{r}: degree shift ({ds},{dw}) != {elt.bidegree}")
        if r.target.t.q <= r.source.t.q + elt.filtration:
            out.append(f"{r}: target filtration not above {r.source.t.q} + {elt.filtration}")
        if r.source.is_zero() or r.target.is_zero():
            out.append(f"{r}: endpoint is zero at E-infinity")
            continue
        if einf is not None:
            bad = [c.t for c in (r.source, r.target)
                   if einf.window.contains(c.t.s, c.t.w) and c.t.q > einf.q_top(c.t.s, c.t.w)]
            if bad:
                out.append(f"{r}: endpoint above the computed range")
        prod = nonzero_class(e1_multiply(elt.detector_element(), r.source.rep()))
        if prod is not None:
            out.append(f"{r}: source times {elt.name} is {prod.name} at E-infinity, not zero")
    return out


@lru_cache(maxsize=None)
def _records_by_source(table: tuple) -> dict:
    out: dict = {}
    for r in table:
        out.setdefault((r.kind, r.source.t), []).append(r)
    return out


@lru_cache(maxsize=None)
def _records_by_target(table: tuple) -> dict:
    out: dict = {}
    for r in table:
        out.setdefault((r.kind, r.target.t), []).append(r)
    return out


# --- filtered elements ------------------------------------------------------------


class Filtered:
    """A homotopy element known through its class in each filtration; only the
    leading (lowest filtration) nonzero class is meaningful."""

    def __init__(self, parts: Optional[dict] = None) -> None:
        self.parts: dict[int, EClass] = {}
        for q, c in (parts or {}).items():
            if not c.is_zero():
                self.parts[q] = c

    @classmethod
    def of(cls, c: Optional[EClass]) -> "Filtered":
        return cls({c.t.q: c} if c is not None else {})

    def leading(self) -> Optional[EClass]:
        if not self.parts:
            return None
        return self.parts[min(self.parts)]

    def __add__(self, other: "Filtered") -> "Filtered":
        a, b = self.leading(), other.leading()
        if a is None:
            return other
        if b is None:
            return self
        if a.t.q < b.t.q:
            return self
        if b.t.q < a.t.q:
            return other
        return Filtered.of(a + b)

    def __neg__(self) -> "Filtered":
        lead = self.leading()
        return Filtered.of(-lead) if lead is not None else Filtered()


UNKNOWN = None


def _hidden(kind: str, x: EClass, table: tuple) -> Optional[Filtered]:
    """Value of a hidden extension on x, if x is a sum of record sources."""
    recs = _records_by_source(table).get((kind, x.t), [])
    if not recs:
        return None
    for k in range(1, min(len(recs), 4) + 1):
        for subset in combinations(recs, k):
            total = subset[0].source
            for r in subset[1:]:
                total = total + r.source
            if (total + (-x)).is_zero():
                val = Filtered()
                for r in subset:
                    val = val + Filtered.of(r.target)
                return val
    return None


def act(kind: str, x: EClass, table: tuple) -> Filtered:
    """Leading term of (named element of ``kind``) times a lift of x: the
    E-infinity product if nonzero, else a hidden extension, else zero."""
    elt = kind_element(kind)
    prod = nonzero_class(e1_multiply(elt.detector_element(), x.rep()))
    if prod is not None:
        return Filtered.of(prod)
    hidden = _hidden(kind, x, table)
    return hidden if hidden is not None else Filtered()


def act_filtered(kind: str, x: Filtered, table: tuple) -> Filtered:
    lead = x.leading()
    return act(kind, lead, table) if lead is not None else Filtered()


# --- assembly -------------------------------------------------------------------


@dataclass
class HomotopyGroup:
    bidegree: BiDegree
    summands: list[tuple[str, Optional[int]]]
    status: str
    unresolved: list[str] = field(default_factory=list)

    def orders(self) -> list[Optional[int]]:
        return [o for _, o in self.summands]

    def iso_type(self) -> tuple:
        return iso_type(self.orders())

    def is_zero(self) -> bool:
        return not self.summands

    def to_dict(self) -> dict:
        return {
            "s": self.bidegree.s,
            "w": self.bidegree.w,
            "summands": [{"name": n, "order": "Z2" if o is None else f"2^{o.bit_length() - 1}"} for n, o in self.summands],
            "status": self.status,
        }


def _omega_annihilated(x: EClass, table: tuple) -> bool:
    t = x.t
    j = x.coords.index(1) if list(x.coords).count(1) == 1 and sum(map(abs, x.coords)) == 1 else None
    if j is not None:
        if divisible_by(t, j, E1Element.of(H1)) or divisible_by(t, j, E1Element.of(RHO)):
            return True
    for kind in ("rho", "eta"):
        for r in _records_by_target(table).get((kind, t), []):
            if (r.target + (-x)).is_zero():
                return True
    return False


def _check_window(page: Page, s: int, w: int) -> None:
    if not page.window.contains(s, w):
        raise UncertifiedWindow(f"({s},{w}) is outside the window")
    if not is_certified(page.flags.values()):
        raise UncertifiedWindow("window is not certified")


def assemble(s: int, w: int, einf: Page, table: Optional[tuple] = None) -> HomotopyGroup:
    """The 2-complete homotopy group at (s, w).

    Generators are lifts of the E-infinity generators of the column.  For an
    order-2 class x, 2x = omega x - rho eta x; omega x is zero when x is eta-
    or rho-divisible (omega eta = omega rho = 0), or given by a hidden omega
    extension.  Classes covered by neither make the column unresolved.  The
    top classes of an infinite rho h1-tower stay free (the tower is Z_2).
    """
    _check_window(einf, s, w)
    if table is None:
        table = extension_table(einf.window)
    top = einf.q_top(s, w)
    tower = einf.has_tower(s, w)
    gens: list[EClass] = []
    for q, grp in einf.column(s, w):
        for j in range(len(grp)):
            gens.append(generator_class(TriDegree(s, q, w), j))
    index = {(g.t.q, g.coords.index(1)): i for i, g in enumerate(gens)}
    rels = []
    unresolved = []
    for i, x in enumerate(gens):
        j = x.coords.index(1)
        if homology(x.t).generators[j].order is None:
            continue
        if tower and x.t.q == top:
            continue
        rho_eta = act_filtered("eta", act("rho", x, table), table)
        if rho_eta.leading() is None:
            rho_eta = act_filtered("rho", act("eta", x, table), table)
        omega = _hidden("omega", x, table)
        if omega is None:
            if not _omega_annihilated(x, table):
                unresolved.append(f"{x.name} at {x.t}")
            omega = Filtered()
        lead = (omega + (-rho_eta)).leading()
        rel = {i: 2}
        if lead is not None:
            if lead.t.bidegree() != BiDegree(s, w):
                raise AssertionError(f"2x left the column at {x.t}")
            for k, c in enumerate(lead.coords):
                if c:
                    key = (lead.t.q, k)
                    if key not in index:
                        raise AssertionError(f"relation for {x.name} leaves the computed column")
                    rel[index[key]] = rel.get(index[key], 0) - c
        rels.append(rel)
    pres = reduce_presentation(len(gens), rels)
    summands = _name_summands(gens, pres)
    status = "unresolved-extensions" if unresolved else "resolved"
    return HomotopyGroup(BiDegree(s, w), summands, status, unresolved)


def _name_summands(gens: list[EClass], pres) -> list[tuple[str, Optional[int]]]:
    orders = _orders_in_coordinate_order(pres)
    if not orders:
        return []
    # a summand is named by the lowest-filtration generator with a unit
    # coordinate on it
    names: list[Optional[str]] = [None] * len(orders)
    for i, g in enumerate(gens):
        coords = pres.coordinates({i: 1})
        for k, (c, o) in enumerate(coords):
            if names[k] is None and c % 2:
                names[k] = g.name
    return [(n or "?", o) for n, o in zip(names, orders)]


def _orders_in_coordinate_order(pres) -> list[Optional[int]]:
    coords = pres.coordinates({})
    return [o for _, o in coords]


# --- periodicity --------------------------------------------------------------

PERIODICITY_SHIFT = {"tau4": (0, -4), "v14": (8, 4), "beta": (8, 8)}


@dataclass(frozen=True)
class PeriodicityViolation:
    kind: str
    source: BiDegree
    target: BiDegree
    expected: str
    source_type: tuple
    target_type: tuple


def _injective_compatible(a: tuple, b: tuple) -> bool:
    """A group of type a can embed in one of type b (2-locally)."""
    if a[0] > b[0]:
        return False
    ta, tb = sorted(a[1], reverse=True), sorted(b[1], reverse=True)
    # every torsion summand of a needs a distinct summand of b at least as big
    # (free summands of b absorb anything)
    spare_free = b[0] - a[0]
    i = 0
    for o in ta:
        if i < len(tb) and tb[i] >= o:
            i += 1
        elif spare_free:
            spare_free -= 1
        else:
            return False
    return True


def periodicity_check(kind: str, window: Window, assembled: dict) -> list[PeriodicityViolation]:
    ds, dw = PERIODICITY_SHIFT[kind]
    out = []
    for bd in window.bidegrees():
        tgt = BiDegree(bd.s + ds, bd.w + dw)
        if not window.contains(tgt.s, tgt.w):
            continue
        a, b = assembled[bd].iso_type(), assembled[tgt].iso_type()
        c = bd.s - bd.w
        if kind == "beta" or c not in (-4, -5):
            expected, ok = "bijective", a == b
        elif c == -4:
            expected, ok = "injective", _injective_compatible(a, b)
        else:
            # the target has coweight -1, where everything vanishes
            expected, ok = "zero", b == (0, ())
        if not ok:
            out.append(PeriodicityViolation(kind, bd, tgt, expected, a, b))
    return out


# --- detected products -------------------------------------------------------


Factor = Union[NamedElement, str, EClass]


def _as_class(x: Factor) -> tuple[Optional[str], Optional[EClass]]:
    if isinstance(x, NamedElement):
        return x.name, x.detector_class()
    if isinstance(x, EClass):
        return None, x
    if x in REGISTRY:
        return x, REGISTRY[x].detector_class()
    return None, class_from_name(x)


def detected_product(x: Factor, y: Factor, table: Optional[tuple] = None) -> str:
    """E-infinity name detecting the product, "0", or "unresolved"."""
    if table is None:
        table = extension_table()
    nx, cx = _as_class(x)
    ny, cy = _as_class(y)
    prod = nonzero_class(e1_multiply(cx.rep(), cy.rep()))
    if prod is not None:
        return prod.name
    if nx and ny and frozenset([nx, ny]) in _RELATION_VALUES:
        factors = _RELATION_VALUES[frozenset([nx, ny])]
        if not factors:
            return "0"
        val = nonzero_class(e1_product([REGISTRY[f].detector_element() for f in factors]))
        return val.name if val is not None else "unresolved"
    for name, other in ((nx, cy), (ny, cx)):
        kind = {"rho": "rho", "eta": "eta", "tau4": "tau4", "omega": "omega"}.get(name or "")
        if kind:
            hidden = _hidden(kind, other, table)
            if hidden is not None and hidden.leading() is not None:
                return hidden.leading().name
    return "unresolved"


def detected_chain(factors: Iterable[Factor], table: Optional[tuple] = None) -> str:
    """detected_product folded left over the factors."""
    factors = list(factors)
    acc: Factor = factors[0]
    for f in factors[1:]:
        name = detected_product(acc, f, table)
        if name in ("0", "unresolved"):
            return name
        acc = class_from_name(name)
    return _as_class(acc)[1].name


# --- coweight-0 comparison -------------------------------------------------------


@dataclass(frozen=True)
class OracleComparison:
    s: int
    assembled: tuple
    oracle: tuple
    status: str

    @property
    def match(self) -> bool:
        return self.assembled == self.oracle


def compare_coweight0(s_range: tuple[int, int], einf: Page, table: Optional[tuple] = None) -> list[OracleComparison]:
    out = []
    for s in range(s_range[0], s_range[1] + 1):
        g = assemble(s, s, einf, table)
        out.append(OracleComparison(s, g.iso_type(), oracle_degree(s).iso_type(), g.status))
    return out


def assemble_window(einf: Page, table: Optional[tuple] = None) -> dict[BiDegree, HomotopyGroup]:
    return {bd: assemble(bd.s, bd.w, einf, table) for bd in einf.window.bidegrees()}


def rho_record_check(table: Iterable[ExtensionRecord]) -> list[str]:
    """Structural form of the underlying-map lemma: a rho record says its
    target is rho-divisible, so the target must sit in the same coweight as
    the source, one stem lower, in the column the divisor lives in."""
    out = []
    for r in table:
        if r.kind != "rho":
            continue
        a, b = r.source.t, r.target.t
        if (a.s - a.w) != (b.s - b.w) or b.s != a.s - 1:
            out.append(f"{r}: target not in the rho-shifted column")
        elif r.target.is_zero():
            out.append(f"{r}: target vanishes")
    return out


def homotopy_to_dict(assembled: dict, oracle_range: Optional[tuple[int, int]] = None) -> dict:
    groups = [assembled[bd].to_dict() for bd in sorted(assembled, key=lambda b: (b.s, b.w))]
    out: dict = {"groups": groups}
    if oracle_range is not None:
        out["oracle"] = [
            {"s": s, "summands": [{"order": "Z2" if o is None else f"2^{o.bit_length() - 1}"} for o in oracle_degree(s).orders()]}
            for s in range(oracle_range[0], oracle_range[1] + 1)
        ]
    return out


def homotopy_to_json(assembled: dict, oracle_range: Optional[tuple[int, int]] = None) -> str:
    return json.dumps(homotopy_to_dict(assembled, oracle_range), sort_keys=True, indent=1) + "\n"
