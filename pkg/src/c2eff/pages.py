"""Page turning: d1 matrices, E2 homology, window certification and the
collapse report.

Every E1 group is Z^a + F2^b (ZPart summands of integral type are free,
everything else has order 2), and every d1 value is 2-torsion.  So the
homology at a tridegree splits as L + V where L is the lattice of Z-parts
of cycles (of full rank a) and V is (F2-cycles with zero Z-part) modulo
boundaries.  ``homology`` builds this decomposition with explicit
representatives; ``homology_snf`` is the generic Smith-normal-form route
used to cross-check the order tags.
"""

from __future__ import annotations

import json

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .coeff_f2 import NC, PC
from .coeff_z2 import NCEven, RhoTau, TauEven
from .e1 import H1, RHO, UNIT, E1Basis, E1Element, HPart, ZPart, e1_d1, e1_enumerate, e1_multiply
from .grading import D1_SHIFT, BiDegree, TriDegree, Window
from .linalg import (
    Matrix,
    bits,
    cokernel_orders,
    f2_kernel,
    f2_reduce,
    integer_kernel,
    iso_type,
    lattice_basis,
    matmul,
    smith_normal_form,
    solve_in_lattice,
    transpose,
    two_adic_valuation,
)
from .names import show_basis

RHO_H1 = E1Element.of(HPart(PC(0, 1), 1, 0))
RHO_E1 = E1Element.of(RHO)
H1_E1 = E1Element.of(H1)


class UncertifiedWindow(RuntimeError):
    pass


@lru_cache(maxsize=None)
def basis_at(t: TriDegree) -> tuple[E1Basis, ...]:
    return tuple(e1_enumerate(t))


@dataclass(frozen=True)
class D1Matrix:
    """Matrix of d1 from the basis at ``source`` to the basis at source + (-1, 1, 0).

    ``rows[i][j]`` is the coefficient of target basis i in d1(source basis j).
    """

    source: TriDegree
    source_basis: tuple
    target_basis: tuple
    rows: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.target_basis), len(self.source_basis))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def as_lists(self) -> Matrix:
        return [list(r) for r in self.rows]


@lru_cache(maxsize=None)
def d1_matrix(t: TriDegree) -> D1Matrix:
    src = basis_at(t)
    tgt = basis_at(t + D1_SHIFT)
    index = {b: i for i, b in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for j, b in enumerate(src):
        for b2, c in e1_d1(b).items():
            if b2.order is None:
                raise AssertionError(f"d1({b}) has a free component {b2}")
            rows[index[b2]][j] = c % 2
    return D1Matrix(t, src, tgt, tuple(tuple(r) for r in rows))


# --- homology ---------------------------------------------------------------


@dataclass
class Generator:
    name: str
    order: Optional[int]  # None means Z2
    rep: E1Element

    @property
    def order_label(self) -> str:
        return "Z2" if self.order is None else str(self.order)


@dataclass
class GradedGroup:
    """E2 at one tridegree.

    ``presentation`` has one row per generator and one column per relation;
    here it is diagonal with entry 2 on the order-2 generators.
    """

    tridegree: TriDegree
    basis: tuple
    generators: list[Generator]
    presentation: Matrix
    _z_index: list[int] = field(default_factory=list, repr=False)
    _lifts: list = field(default_factory=list, repr=False)
    _doubled: list[int] = field(default_factory=list, repr=False)
    _quotient: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def orders(self) -> list[Optional[int]]:
        return [g.order for g in self.generators]

    def iso_type(self) -> tuple:
        return iso_type(self.orders())

    def snf_orders(self) -> list[Optional[int]]:
        return cokernel_orders(self.presentation, len(self.generators))

    def vector(self, x: E1Element) -> list[int]:
        idx = {b: i for i, b in enumerate(self.basis)}
        v = [0] * len(self.basis)
        for b, c in x.items():
            if b not in idx:
                raise ValueError(f"{b} is not in tridegree {self.tridegree}")
            v[idx[b]] = c
        return v

    def coordinates(self, x: E1Element) -> list[int]:
        """Coordinates of a d1-cycle x on the generators (torsion ones mod 2).

        Raises ValueError if x is not a cycle.
        """
        v = self.vector(x)
        if any(c % 2 for c in _f2_apply(self.tridegree, v)):
            raise ValueError("not a d1-cycle")
        n_free = len(self._lifts) + len(self._doubled)
        coords = [0] * len(self.generators)
        u = [v[i] for i in self._z_index]
        residual = list(v)
        for k, (pivot, lift_vec) in enumerate(self._lifts):
            ck = u[pivot]
            coords[k] = ck
            if ck:
                for i in range(len(v)):
                    residual[i] -= ck * lift_vec[i]
        for k, zi in enumerate(self._doubled):
            bi = self._z_index[zi]
            if residual[bi] % 2:
                raise AssertionError("Z-part of a cycle left the cycle lattice")
            d = residual[bi] // 2
            coords[len(self._lifts) + k] = d
            residual[bi] = 0
        if any(residual[i] for i in self._z_index):
            raise AssertionError("Z-part not fully reduced")
        vec = 0
        for i, c in enumerate(residual):
            if c % 2:
                vec |= 1 << i
        vec, combo = _reduce_tracked(vec, self._quotient)
        if vec:
            raise AssertionError("F2 residual is not a cycle")
        for k in bits(combo):
            coords[n_free + k] = 1
        return coords

    def is_boundary(self, x: E1Element) -> bool:
        return not any(self.coordinates(x))


def _reduce_tracked(vec: int, pivots: dict) -> tuple[int, int]:
    combo = 0
    while vec:
        top = vec.bit_length() - 1
        entry = pivots.get(top)
        if entry is None:
            break
        pv, pc = entry
        vec ^= pv
        combo ^= pc
    return vec, combo


def _f2_apply(t: TriDegree, v: list[int]) -> list[int]:
    m = d1_matrix(t)
    return [sum(r[j] * v[j] for j in range(len(v))) % 2 for r in m.rows]


def _columns_as_bits(m: D1Matrix) -> list[int]:
    cols = []
    for j in range(len(m.source_basis)):
        vec = 0
        for i, r in enumerate(m.rows):
            if r[j] % 2:
                vec |= 1 << i
        cols.append(vec)
    return cols


def _element_from_vector(basis: tuple, v: list[int]) -> E1Element:
    return E1Element({b: c for b, c in zip(basis, v) if c})


def _name(basis: tuple, v: list[int]) -> str:
    terms = []
    for b, c in zip(basis, v):
        if not c:
            continue
        terms.append(show_basis(b) if c == 1 else f"{c}*{show_basis(b)}")
    return " + ".join(terms)


@lru_cache(maxsize=None)
def homology(t: TriDegree) -> GradedGroup:
    """E2 at t (structured route)."""
    basis = basis_at(t)
    n = len(basis)
    out_m = d1_matrix(t)
    in_m = d1_matrix(t - D1_SHIFT)
    z_index = [i for i, b in enumerate(basis) if b.order is None]
    z_set = set(z_index)
    z_mask = sum(1 << i for i in z_index)

    kernel = f2_kernel(_columns_as_bits(out_m), n)
    # split the F2 kernel: vectors with zero Z-part span V, the rest project onto S
    pivots: dict[int, int] = {}
    for vec in kernel:
        _insert_low(vec, pivots, z_mask)
    v_basis = [vec for vec in pivots.values() if not vec & z_mask]
    s_basis = [vec for vec in pivots.values() if vec & z_mask]
    # reduce the S part to echelon form on its Z-coordinates (pivot = lowest Z bit)
    s_rows = _echelon_on_mask(s_basis, z_mask)

    v_pivots: dict[int, int] = {}
    for vec in v_basis:
        _insert_high(vec, v_pivots)

    gens: list[Generator] = []
    lifts = []
    pivot_positions = set()
    for vec in sorted(s_rows, key=lambda x: _low_bit(x & z_mask)):
        pos = _low_bit(vec & z_mask)
        pivot_positions.add(pos)
        # canonical F2 tail: reduce against V
        tail = f2_reduce(vec & ~z_mask, v_pivots)
        full = (vec & z_mask) | tail
        v = [(full >> i) & 1 for i in range(n)]
        lifts.append((z_index.index(pos), v))
        gens.append(Generator(_name(basis, v), None, _element_from_vector(basis, v)))
    doubled = []
    for k, i in enumerate(z_index):
        if i in pivot_positions:
            continue
        v = [0] * n
        v[i] = 2
        doubled.append(k)
        gens.append(Generator("2*" + show_basis(basis[i]), None, E1Element.of(basis[i], 2)))

    # boundaries
    image: dict[int, tuple[int, int]] = {}
    for vec in _columns_as_bits(in_m):
        if vec & z_mask:
            raise AssertionError(f"d1 into {t} hits a free summand")
        _insert_tracked(vec, 0, image)
    # complement of the image inside V, preferring single basis vectors
    dim_v = len(v_basis)
    dim_i = len(image)
    candidates = []
    for i in range(n):
        if i in z_set:
            continue
        e = 1 << i
        if f2_reduce(e, v_pivots) == 0:
            candidates.append(e)
    candidates += v_basis
    chosen = []
    combined = dict(image)
    for c in candidates:
        if len(chosen) == dim_v - dim_i:
            break
        if _insert_tracked(c, 1 << len(chosen), combined):
            chosen.append(c)
    if len(chosen) != dim_v - dim_i:
        raise AssertionError("failed to complete a basis of the quotient")
    for c in chosen:
        v = [(c >> i) & 1 for i in range(n)]
        gens.append(Generator(_name(basis, v), 2, _element_from_vector(basis, v)))

    presentation = [[0] * len(chosen) for _ in gens]
    n_free = len(gens) - len(chosen)
    for k in range(len(chosen)):
        presentation[n_free + k][k] = 2
    return GradedGroup(t, basis, gens, presentation, z_index, lifts, doubled, combined)


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _insert_high(vec: int, pivots: dict[int, int]) -> bool:
    vec = f2_reduce(vec, pivots)
    if not vec:
        return False
    pivots[vec.bit_length() - 1] = vec
    return True


def _insert_tracked(vec: int, combo: int, pivots: dict) -> bool:
    vec, c2 = _reduce_tracked(vec, pivots)
    combo ^= c2
    if not vec:
        return False
    pivots[vec.bit_length() - 1] = (vec, combo)
    return True


def _insert_low(vec: int, pivots: dict[int, int], z_mask: int) -> None:
    """Echelon insertion preferring pivots on Z-coordinates.

    The key of a vector is its highest Z bit if it has one, else its highest
    bit offset below every Z key (so Z-free vectors never absorb Z-ones).
    """
    def key(x: int) -> tuple:
        zx = x & z_mask
        return ("z", zx.bit_length() - 1) if zx else ("f", x.bit_length() - 1)

    while vec:
        k = key(vec)
        row = pivots.get(k)
        if row is None:
            pivots[k] = vec
            return
        vec ^= row


def _echelon_on_mask(rows: list[int], mask: int) -> list[int]:
    """Reduced echelon form of ``rows`` restricted to the bits of ``mask``
    (pivot = lowest masked bit); full vectors are carried along."""
    rows = list(rows)
    out: list[int] = []
    while rows:
        rows.sort(key=lambda x: _low_bit(x & mask))
        r = rows.pop(0)
        if not r & mask:
            continue
        p = _low_bit(r & mask)
        rows = [x ^ r if (x >> p) & 1 else x for x in rows]
        out = [x ^ r if (x >> p) & 1 else x for x in out]
        out.append(r)
    return out


def homology_snf(t: TriDegree) -> list[Optional[int]]:
    """E2 order tags at t via a generic integer presentation and SNF."""
    basis = basis_at(t)
    n = len(basis)
    if n == 0:
        return []
    out_m = d1_matrix(t).as_lists()
    tgt = d1_matrix(t).target_basis
    # cycles: x with d1(x) in the torsion relations of the target
    tor_t = [i for i, b in enumerate(tgt) if b.order is not None]
    if tgt:
        big = [row + [2 if i == k else 0 for k in tor_t] for i, row in enumerate(out_m)]
        ker = integer_kernel(big, n + len(tor_t))
        spanning = [v[:n] for v in ker]
    else:
        spanning = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cyc = lattice_basis(spanning, n)
    r = len(cyc[0]) if cyc and cyc[0] else 0
    if r == 0:
        return []
    rels = []
    in_m = d1_matrix(t - D1_SHIFT)
    for col in transpose(in_m.as_lists(), len(in_m.source_basis)):
        rels.append(col)
    for i, b in enumerate(basis):
        if b.order is not None:
            v = [0] * n
            v[i] = b.order
            rels.append(v)
    rel_cols = []
    for x in rels:
        c = solve_in_lattice(cyc, x)
        if c is None:
            raise AssertionError(f"relation {x} is not a cycle at {t}")
        rel_cols.append(c)
    return cokernel_orders(transpose(rel_cols, r) if rel_cols else [], r)


# --- products on E2 ------------------------------------------------------------


def multiply_class(x: E1Element, y: E1Element) -> E1Element:
    return e1_multiply(x, y)


def rho_power(n: int) -> E1Element:
    return E1Element.of(ZPart(RhoTau(n, 0), 0)) if n else E1Element.of(UNIT)


def product_coordinates(g: Generator, t: TriDegree, factor: E1Element) -> list[int]:
    """Coordinates of factor * g.rep in E2 at its tridegree."""
    prod = e1_multiply(factor, g.rep)
    if prod.is_zero():
        return []
    (t2,) = prod.tridegrees()
    return homology(t2).coordinates(prod)


@lru_cache(maxsize=None)
def multiplication_map(t: TriDegree, factor: E1Element) -> tuple[TriDegree, tuple]:
    """Matrix (columns = source generators) of multiplication by the d1-cycle
    ``factor`` from E2 at t to E2 at t + |factor|."""
    (shift,) = factor.tridegrees()
    t2 = t + shift
    target = homology(t2)
    cols = []
    for g in homology(t).generators:
        prod = e1_multiply(factor, g.rep)
        cols.append(tuple(target.coordinates(prod)) if not prod.is_zero() else (0,) * len(target))
    return t2, tuple(cols)


def _normalize(vec: Iterable[int], orders: list[Optional[int]]) -> list[int]:
    return [c if o is None else c % o for c, o in zip(vec, orders)]


def _kernel_in_source(cols: tuple, src: list[Optional[int]], tgt: list[Optional[int]]) -> list[list[int]]:
    """Integer vectors c (over the source generators) whose image vanishes."""
    n = len(src)
    tor = [i for i, o in enumerate(tgt) if o is not None]
    rows = []
    for i in range(len(tgt)):
        rows.append([cols[j][i] for j in range(n)] + [tgt[i] if i == k else 0 for k in tor])
    if not rows:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return [v[:n] for v in integer_kernel(rows, n + len(tor))]


def _is_zero_class(vec: Iterable[int], orders: list[Optional[int]]) -> bool:
    return not any(_normalize(vec, orders))


def _in_image(cols: tuple, y: list[int], tgt: list[Optional[int]]) -> bool:
    n = len(tgt)
    span = [list(c) for c in cols] + [[o if i == k else 0 for i in range(n)] for k, o in enumerate(tgt) if o is not None]
    basis = lattice_basis(span, n)
    return solve_in_lattice(basis, y) is not None


def kills(t: TriDegree, j: int, factor: E1Element) -> bool:
    """factor * (generator j at t) = 0 in E2."""
    t2, cols = multiplication_map(t, factor)
    return _is_zero_class(cols[j], homology(t2).orders())


def injective_on(t: TriDegree, factor: E1Element, torsion_only: bool = False) -> bool:
    """Multiplication by factor is injective on E2 at t (on its 2-torsion
    subgroup if ``torsion_only``)."""
    src = homology(t).orders()
    t2, cols = multiplication_map(t, factor)
    keep = [j for j, o in enumerate(src) if o is not None or not torsion_only]
    sub_src = [src[j] for j in keep]
    sub_cols = tuple(cols[j] for j in keep)
    return all(_is_zero_class(v, sub_src) for v in _kernel_in_source(sub_cols, sub_src, homology(t2).orders()))


def image_is_zero(t: TriDegree, factor: E1Element) -> bool:
    t2, cols = multiplication_map(t, factor)
    orders = homology(t2).orders()
    return all(_is_zero_class(c, orders) for c in cols)


def divisible_by(t: TriDegree, j: int, factor: E1Element) -> bool:
    """Generator j at t lies in factor * E2 at t - |factor|."""
    (shift,) = factor.tridegrees()
    src = t - shift
    target = homology(t)
    y = [1 if i == j else 0 for i in range(len(target))]
    if homology(src).is_zero():
        return False
    _, cols = multiplication_map(src, factor)
    return _in_image(cols, y, target.orders())


# --- window certification -----------------------------------------------------


@dataclass(frozen=True)
class TowerFlag:
    """A bidegree with E1 classes above the window's q_max.

    ``q_top`` is the filtration up to which the column is computed
    explicitly; above it E1 is the rho h1-translate of the level below.
    ``pattern`` is "rho h1 tower" (infinite) or "finite".
    """

    bidegree: BiDegree
    pattern: str
    q_top: int
    periodic: bool


def _stable_level(s: int, w: int) -> int:
    # above this q only positive-cone h1-classes with rho and h1 exponents
    # both >= 1 remain (ZParts need q <= max(s/2, c), NC classes q <= s)
    c = s - w
    return max(0, s, c + 1) + 1


def column_max_q(s: int, w: int) -> Optional[int]:
    """Largest q carrying an E1 class at (s, w), or None if infinite."""
    if s - w >= 0:
        return None
    top = -1
    for q in range(0, max(s, 0) + 2):
        if basis_at(TriDegree(s, q, w)):
            top = q
    return top


def _is_rho_h1_shift(s: int, q: int, w: int) -> bool:
    lower = basis_at(TriDegree(s, q - 1, w))
    upper = basis_at(TriDegree(s, q, w))
    if any(not (isinstance(b, HPart) and isinstance(b.c, PC)) for b in upper):
        return False
    shifted = {HPart(PC(b.c.a, b.c.b + 1), b.p + 1, b.m) for b in lower if isinstance(b, HPart)}
    return len(lower) == len(upper) and shifted == set(upper)


def certify_window(s_range: tuple[int, int], w_range: tuple[int, int], q_max: int) -> tuple[Window, list[TowerFlag]]:
    window = Window(s_range[0], s_range[1], w_range[0], w_range[1], q_max)
    flags = []
    for bd in window.bidegrees():
        s, w = bd.s, bd.w
        top = column_max_q(s, w)
        if top is None:
            q0 = max(_stable_level(s, w), q_max)
            # two consecutive periods of the tower (the period is 1)
            ok = all(_is_rho_h1_shift(s, q, w) for q in (q0, q0 + 1, q0 + 2))
            flags.append(TowerFlag(bd, "rho h1 tower", q0 + 2, ok))
        elif top > q_max:
            flags.append(TowerFlag(bd, "finite", top, True))
    return window, flags


def is_certified(flags: Iterable[TowerFlag]) -> bool:
    return all(f.periodic for f in flags)


# --- pages ---------------------------------------------------------------------


@dataclass
class Page:
    r: int
    window: Window
    groups: dict[TriDegree, GradedGroup]
    differentials: dict[TriDegree, D1Matrix]
    flags: dict[BiDegree, TowerFlag] = field(default_factory=dict)

    def q_top(self, s: int, w: int) -> int:
        f = self.flags.get(BiDegree(s, w))
        return max(self.window.q_max, f.q_top) if f else self.window.q_max

    def has_tower(self, s: int, w: int) -> bool:
        f = self.flags.get(BiDegree(s, w))
        return f is not None and f.pattern == "rho h1 tower"

    def group(self, t: TriDegree) -> GradedGroup:
        g = self.groups.get(t)
        if g is None:
            g = homology(t)
        return g

    def column(self, s: int, w: int, q_max: Optional[int] = None) -> Iterator[tuple[int, GradedGroup]]:
        top = self.q_top(s, w) if q_max is None else q_max
        for q in range(top + 1):
            g = self.group(TriDegree(s, q, w))
            if not g.is_zero():
                yield q, g

    def nonzero(self) -> Iterator[tuple[TriDegree, GradedGroup]]:
        for t in sorted(self.groups, key=lambda t: (t.s, t.w, t.q)):
            g = self.groups[t]
            if not g.is_zero():
                yield t, g


def e1_page(window: Window) -> Page:
    """The E1 page over the window, each basis element a generator."""
    groups = {}
    diffs = {}
    for t in window.tridegrees():
        basis = basis_at(t)
        gens = [Generator(show_basis(b), b.order, E1Element.of(b)) for b in basis]
        pres = [[0] * sum(1 for b in basis if b.order) for _ in basis]
        k = 0
        for i, b in enumerate(basis):
            if b.order:
                pres[i][k] = b.order
                k += 1
        groups[t] = GradedGroup(t, basis, gens, pres)
        diffs[t] = d1_matrix(t)
    return Page(1, window, groups, diffs)


def compute_e2(window: Window, flags: Optional[list[TowerFlag]] = None) -> Page:
    if flags is None:
        _, flags = certify_window((window.s_min, window.s_max), (window.w_min, window.w_max), window.q_max)
    bad = [f for f in flags if not f.periodic]
    if bad:
        raise UncertifiedWindow(f"tower pattern not periodic at {[f.bidegree for f in bad[:5]]}")
    flag_map = {f.bidegree: f for f in flags}
    page = Page(2, window, {}, {}, flag_map)
    for bd in window.bidegrees():
        for q in range(page.q_top(bd.s, bd.w) + 1):
            t = TriDegree(bd.s, q, bd.w)
            if not basis_at(t):
                continue
            page.groups[t] = homology(t)
            page.differentials[t] = d1_matrix(t)
    return page


def d1_composites_vanish(t: TriDegree) -> bool:
    a = d1_matrix(t).as_lists()
    b = d1_matrix(t + D1_SHIFT).as_lists()
    if not a or not b:
        return True
    prod = matmul(b, a, inner=len(a))
    return all(x % 2 == 0 for row in prod for x in row)


# --- collapse ------------------------------------------------------------------


@dataclass(frozen=True)
class CollapseEntry:
    source: TriDegree
    generator: str
    r: int
    tag: str


RHO_SEARCH = 24  # largest power of rho tried by the rho-tower arguments


def _rho_torsion_argument(t: TriDegree, j: int, target: TriDegree, torsion: bool) -> bool:
    # rho^n x = 0 but rho^n is injective on the target: d_r(x) = 0
    for n in range(1, RHO_SEARCH + 1):
        f = rho_power(n)
        if kills(t, j, f):
            return injective_on(target, f, torsion_only=torsion)
    return False


def _rho_divisible_argument(t: TriDegree, j: int, target: TriDegree) -> bool:
    # x is rho^n-divisible but nothing in the target is: d_r(x) = 0
    for n in range(1, RHO_SEARCH + 1):
        f = rho_power(n)
        above = target + TriDegree(n, 0, n)
        if homology(above).is_zero() or image_is_zero(above, f):
            return divisible_by(t, j, f)
        if not divisible_by(t, j, f):
            return False
    return False


def _column_top(page: Page, s: int, w: int) -> int:
    if page.window.contains(s, w):
        return page.q_top(s, w)
    top = column_max_q(s, w)
    return max(_stable_level(s, w), page.window.q_max) + 2 if top is None else top


def _targets(page: Page, t: TriDegree) -> Iterator[tuple[int, TriDegree]]:
    s, q, w = t.s, t.q, t.w
    top = _column_top(page, s - 1, w)
    for r in range(2, top - q + 1):
        t2 = TriDegree(s - 1, q + r, w)
        if not homology(t2).is_zero():
            yield r, t2


def _has_targets(page: Page, t: TriDegree) -> bool:
    return next(_targets(page, t), None) is not None


def _v14_argument(page: Page, t: TriDegree, g: Generator) -> bool:
    """g = x v1^4j with x a negative-cone class that has no possible targets;
    v1^4 is a permanent cycle, so d_r(g) = d_r(x) v1^4j = 0."""
    if (t.s - t.w) % 4 != 1:
        return False
    terms = list(g.rep.items())
    if len(terms) != 1:
        return False
    b, c = terms[0]
    negative = isinstance(b.z, NCEven) if isinstance(b, ZPart) else isinstance(b.c, NC)
    if not negative:
        return False
    for j in range(1, b.m // 2 + 1):
        x = E1Element.of(replace(b, m=b.m - 2 * j), c)
        t0 = t - TriDegree(8 * j, 4 * j, 4 * j)
        if e1_d1(x).is_zero() and e1_multiply(x, E1Element.of(ZPart(UNIT.z, 2 * j))) == g.rep:
            if not _has_targets(page, t0):
                return True
    return False


def collapse_report(page: Page) -> list[CollapseEntry]:
    """Every (E2 generator, r >= 2) whose d_r target group is nonzero, with the
    argument showing d_r vanishes on it."""
    out = []
    for t, grp in page.nonzero():
        if not page.window.contains(t.s - 1, t.w):
            continue
        targets = list(_targets(page, t))
        if not targets:
            continue
        for j, g in enumerate(grp.generators):
            for r, t2 in targets:
                torsion = g.order is not None
                if _rho_torsion_argument(t, j, t2, torsion) or _rho_divisible_argument(t, j, t2):
                    tag = "rho-tower"
                elif _v14_argument(page, t, g):
                    tag = "v14-linear"
                else:
                    tag = "UNJUSTIFIED"
                out.append(CollapseEntry(t, g.name, r, tag))
    return out


# --- invariants ------------------------------------------------------------------


def next_page_trivial(page: Page) -> Page:
    """Turn the page with all d_r = 0: each group is the cokernel of its own
    presentation again."""
    groups = {}
    for t, g in page.groups.items():
        orders = cokernel_orders(g.presentation, len(g.generators))
        if iso_type(orders) != g.iso_type():
            raise AssertionError(f"presentation at {t} disagrees with its order tags")
        groups[t] = g
    return Page(page.r + 1, page.window, groups, {}, dict(page.flags))


TAU4 = E1Element.of(ZPart(TauEven(2), 0))


@dataclass(frozen=True)
class Tau4Entry:
    source: TriDegree
    injective: bool
    surjective: bool


def in_tau4_band(s: int, w: int) -> bool:
    """Where tau^4 may fail to be bijective on E2 although it is on homotopy:
    the tau^-4-torsion negative cone in coweight 0 mod 4, and the v1^4-translates
    of the sources of hidden tau^4 extensions (coweights 1, 2 mod 4)."""
    c = s - w
    if c >= 0 and c % 4 == 0:
        return True
    return c >= -3 and c % 4 in (1, 2) and 5 <= s - 2 * c <= 8


def tau4_e2_report(page: Page) -> list[Tau4Entry]:
    """Multiplication by tau^4 from E2 at (s,q,w) to (s,q,w-4), wherever it
    fails to be bijective (both columns computed)."""
    out = []
    win = page.window
    for bd in win.bidegrees():
        s, w = bd.s, bd.w
        if not win.contains(s, w - 4):
            continue
        for q in range(min(page.q_top(s, w), page.q_top(s, w - 4)) + 1):
            t = TriDegree(s, q, w)
            t2 = TriDegree(s, q, w - 4)
            a, b = page.group(t), page.group(t2)
            if a.is_zero() and b.is_zero():
                continue
            inj = a.is_zero() or injective_on(t, TAU4)
            sur = b.is_zero() or (not a.is_zero() and all(divisible_by(t2, j, TAU4) for j in range(len(b))))
            if not (inj and sur):
                out.append(Tau4Entry(t, inj, sur))
    return out


def tau4_stability_violations(page: Page) -> list[str]:
    """Entries of tau4_e2_report outside the expected pattern: bijective away
    from coweights -5, -4 and the cone band, injective at -4, onto at -5."""
    out = []
    for e in tau4_e2_report(page):
        c = e.source.s - e.source.w
        if in_tau4_band(e.source.s, e.source.w):
            continue
        if c == -4 and e.injective:
            continue
        if c == -5 and e.surjective:
            continue
        out.append(f"{e.source}: injective={e.injective} surjective={e.surjective}")
    return out


def euler_violations(page: Page) -> list[str]:
    """Euler characteristic along each d1-line (s+q and w fixed) that lies
    inside the computed range.

    With b_q the number of order-2 summands of E1, t_q that of E2 and e_q the
    number of free E2 generators of the form 2*x (free classes whose
    generator supports d1), the alternating sums satisfy
    sum (-1)^q b_q + sum (-1)^q e_q = sum (-1)^q t_q.
    """
    out = []
    win = page.window
    if win.is_empty():
        return out
    lines: dict[tuple[int, int], list[TriDegree]] = {}
    for bd in win.bidegrees():
        for q in range(page.q_top(bd.s, bd.w) + 1):
            lines.setdefault((bd.s + q, bd.w), []).append(TriDegree(bd.s, q, bd.w))
    for (n, w), pts in sorted(lines.items()):
        if not _line_complete(n, w, set(pts)):
            continue
        lhs = rhs = 0
        for t in pts:
            sign = (-1) ** t.q
            g = page.group(t)
            lhs += sign * (sum(1 for b in basis_at(t) if b.order is not None) + len(g._doubled))
            rhs += sign * sum(1 for o in g.orders() if o is not None)
        if lhs != rhs:
            out.append(f"line s+q={n}, w={w}: {lhs} != {rhs}")
    return out


def _line_complete(n: int, w: int, present: set) -> bool:
    q = 0
    while True:
        s = n - q
        if s < 0 and s < w and q > 1:
            # below the vanishing region of every column
            return True
        t = TriDegree(s, q, w)
        if t not in present and basis_at(t):
            return False
        q += 1


# --- JSON ------------------------------------------------------------------------

SCHEMA_VERSION = 1


def json_order(order: Optional[int]) -> str:
    return "Z2" if order is None else f"2^{two_adic_valuation(order)}"


def parse_json_order(label: str) -> Optional[int]:
    if label == "Z2":
        return None
    if not label.startswith("2^"):
        raise ValueError(f"bad order label {label!r}")
    return 2 ** int(label[2:])


def page_to_dict(page: Page) -> dict:
    groups = []
    for t, g in page.nonzero():
        groups.append({
            "s": t.s, "q": t.q, "w": t.w,
            "gens": [{"name": x.name, "order": json_order(x.order)} for x in g.generators],
        })
    diffs = []
    for t in sorted(page.differentials, key=lambda t: (t.s, t.w, t.q)):
        m = page.differentials[t]
        if m.is_zero():
            continue
        diffs.append({"s": t.s, "q": t.q, "w": t.w, "matrix": m.as_lists()})
    win = page.window
    return {
        "schema_version": SCHEMA_VERSION,
        "page": page.r,
        "window": {"s_min": win.s_min, "s_max": win.s_max, "w_min": win.w_min,
                   "w_max": win.w_max, "q_max": win.q_max},
        "groups": groups,
        "differentials": diffs,
    }


def page_to_json(page: Page) -> str:
    return json.dumps(page_to_dict(page), indent=1, sort_keys=True) + "\n"


def page_from_json(text: str) -> Page:
    from .names import parse_element

    data = json.loads(text)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
    win = Window(**data["window"])
    groups = {}
    for item in data["groups"]:
        t = TriDegree(item["s"], item["q"], item["w"])
        gens = [Generator(x["name"], parse_json_order(x["order"]), parse_element(x["name"])) for x in item["gens"]]
        tors = [i for i, x in enumerate(gens) if x.order is not None]
        pres = [[gens[i].order if i == k else 0 for k in tors] for i in range(len(gens))]
        groups[t] = GradedGroup(t, basis_at(t), gens, pres)
    diffs = {}
    for item in data["differentials"]:
        t = TriDegree(item["s"], item["q"], item["w"])
        m = item["matrix"]
        diffs[t] = D1Matrix(t, basis_at(t), basis_at(t + D1_SHIFT), tuple(tuple(r) for r in m))
    return Page(data["page"], win, groups, diffs)


def preimage(t: TriDegree, factor: E1Element, y: list[int]) -> Optional[list[int]]:
    """E2 coordinates at t of the unique class x with factor * x = y, or None
    when there is no such class or multiplication is not injective at t."""
    if homology(t).is_zero() or not injective_on(t, factor):
        return None
    t2, cols = multiplication_map(t, factor)
    tgt = homology(t2).orders()
    n = len(cols)
    tor = [k for k, o in enumerate(tgt) if o is not None]
    # solve sum c_j cols[j] + sum 2 e_k = y over the integers
    span = [list(c) for c in cols] + [[tgt[k] if i == k else 0 for i in range(len(tgt))] for k in tor]
    mat = [[span[j][i] for j in range(len(span))] for i in range(len(tgt))]
    sol = _solve_integer(mat, y, len(span))
    if sol is None:
        return None
    return _normalize(sol[:n], homology(t).orders())


def _solve_integer(mat: Matrix, y: list[int], n_cols: int) -> Optional[list[int]]:
    if not mat:
        return [0] * n_cols
    sf = smith_normal_form(mat, n_cols)
    uy = [sum(sf.U[i][k] * y[k] for k in range(len(y))) for i in range(len(y))]
    z = [0] * n_cols
    for i, v in enumerate(uy):
        d = sf.diagonal[i] if i < len(sf.diagonal) else 0
        if d:
            if v % d:
                return None
            z[i] = v // d
        elif v:
            return None
    return [sum(sf.V[j][k] * z[k] for k in range(n_cols)) for j in range(n_cols)]
