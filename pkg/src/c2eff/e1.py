"""The tri-graded E1-page: basis, twisted multiplication and the d1 differential.

Additively E1 = HZ2[v^2] + HF2[h1, v^2]{h1}: a basis element is either
``HPart(c, p, m)`` = c h1^p v^(2m) with c a mod-2 coefficient and p >= 1,
or ``ZPart(z, m)`` = z v^(2m) with z an integral coefficient generator.

The product of two h1-classes carries the extra term coming from the
connecting map eta^2 -> sqrt(alpha):

    a h1 . b h1 = ab h1^2 + delta(a Sq1 b) v^2

and d1 is *defined* by factoring a basis element into atoms with known d1
and applying the Leibniz rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

from . import coeff_f2 as f2
from . import coeff_z2 as z2
from .coeff_f2 import NC, PC, F2Monomial
from .coeff_z2 import NCEven, RhoTau, TauEven, ThetaOdd, Z2Generator
from .grading import D1_SHIFT, TriDegree


@dataclass(frozen=True)
class HPart:
    c: F2Monomial
    p: int
    m: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.m < 0:
            raise ValueError(f"HPart needs p >= 1, m >= 0, got p={self.p}, m={self.m}")

    @property
    def tridegree(self) -> TriDegree:
        d = self.c.degree
        return TriDegree(d.s + self.p + 4 * self.m, self.p + 2 * self.m, d.w + self.p + 2 * self.m)

    @property
    def order(self) -> Optional[int]:
        return 2


@dataclass(frozen=True)
class ZPart:
    z: Z2Generator
    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"ZPart needs m >= 0, got {self.m}")

    @property
    def tridegree(self) -> TriDegree:
        d = self.z.degree
        return TriDegree(d.s + 4 * self.m, 2 * self.m, d.w + 2 * self.m)

    @property
    def order(self) -> Optional[int]:
        return z2.order_of(self.z)


E1Basis = Union[HPart, ZPart]


def basis_key(b: E1Basis) -> tuple:
    if isinstance(b, ZPart):
        return (b.tridegree.q, 0, b.m, z2.generator_key(b.z))
    return (b.tridegree.q, 1, b.m, b.p, f2.monomial_key(b.c))


def is_torsion(b: E1Basis) -> bool:
    return b.order is not None


class E1Element:
    """Integer combination of E1 basis elements (torsion coefficients mod 2)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict] = None) -> None:
        norm = {}
        for b, c in (coeffs or {}).items():
            if b.order is not None:
                c %= b.order
            if c:
                norm[b] = c
        self.coeffs = norm

    @classmethod
    def of(cls, b: E1Basis, c: int = 1) -> "E1Element":
        return cls({b: c})

    @classmethod
    def zero(cls) -> "E1Element":
        return cls()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def items(self) -> Iterator[tuple[E1Basis, int]]:
        for b in sorted(self.coeffs, key=basis_key):
            yield b, self.coeffs[b]

    def tridegrees(self) -> set[TriDegree]:
        return {b.tridegree for b in self.coeffs}

    def __eq__(self, other: object) -> bool:
        if isinstance(other, E1Element):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "E1Element") -> "E1Element":
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out.get(b, 0) + c
        return E1Element(out)

    def __neg__(self) -> "E1Element":
        return E1Element({b: -c for b, c in self.coeffs.items()})

    def __sub__(self, other: "E1Element") -> "E1Element":
        return self + (-other)

    def __rmul__(self, k: int) -> "E1Element":
        return E1Element({b: k * c for b, c in self.coeffs.items()})

    def __mul__(self, other: "E1Element") -> "E1Element":
        return e1_multiply(self, other)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "E1Element(0)"
        return "E1Element(" + " + ".join(f"{c}*{b!r}" for b, c in self.items()) + ")"


# --- additive structure ------------------------------------------------------


def e1_enumerate(t: TriDegree) -> list[E1Basis]:
    """All basis elements in tridegree t, in matrix-index order."""
    out: list[E1Basis] = []
    if t.q < 0:
        return out
    for m in range(t.q // 2 + 1):
        p = t.q - 2 * m
        if p >= 1:
            c = f2.f2_group_at(t.s - p - 4 * m, t.w - p - 2 * m)
            if c is not None:
                out.append(HPart(c, p, m))
    if t.q % 2 == 0:
        m = t.q // 2
        z = z2.z2_generator_at(t.s - 4 * m, t.w - 2 * m)
        if z is not None:
            out.append(ZPart(z, m))
    out.sort(key=basis_key)
    return out


# --- multiplication ---------------------------------------------------------


@lru_cache(maxsize=None)
def _basis_product(x: E1Basis, y: E1Basis) -> tuple[tuple[E1Basis, int], ...]:
    if isinstance(x, ZPart) and isinstance(y, ZPart):
        p = z2._gen_product(x.z, y.z)
        return () if p is None else ((ZPart(p[1], x.m + y.m), p[0]),)
    if isinstance(x, ZPart) or isinstance(y, ZPart):
        zp, hp = (x, y) if isinstance(x, ZPart) else (y, x)
        c = f2.mono_mul(z2.reduce_generator(zp.z), hp.c)
        return () if c is None else ((HPart(c, hp.p, zp.m + hp.m), 1),)
    a, b = x.c, y.c
    m = x.m + y.m
    out: list[tuple[E1Basis, int]] = []
    c = f2.mono_mul(a, b)
    if c is not None:
        out.append((HPart(c, x.p + y.p, m), 1))
    if x.p == 1 and y.p == 1:
        sb = f2.mono_sq1(b)
        ab = None if sb is None else f2.mono_mul(a, sb)
        g = None if ab is None else z2.bockstein_generator(ab)
        if g is not None:
            out.append((ZPart(g, m + 1), 1))
    else:
        sa, sb = f2.mono_sq1(a), f2.mono_sq1(b)
        if sa is not None and sb is not None:
            c = f2.mono_mul(sa, sb)
            if c is not None:
                out.append((HPart(c, x.p + y.p - 2, m + 1), 1))
    return tuple(out)


def e1_multiply(x: E1Element, y: E1Element) -> E1Element:
    out: dict = {}
    for b1, c1 in x.coeffs.items():
        for b2, c2 in y.coeffs.items():
            for b, c in _basis_product(b1, b2):
                out[b] = out.get(b, 0) + c * c1 * c2
    return E1Element(out)


def e1_product(factors: Iterable[E1Element]) -> E1Element:
    out = E1Element.of(UNIT)
    for f in factors:
        out = e1_multiply(out, f)
    return out


UNIT = ZPart(TauEven(0), 0)
H1 = HPart(PC(0, 0), 1, 0)
TAU_H1 = HPart(PC(1, 0), 1, 0)
RHO = ZPart(RhoTau(1, 0), 0)
TAU_SQ = ZPart(TauEven(1), 0)
V1_SQ = ZPart(TauEven(0), 1)


# --- atoms and d1 -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Atom:
    """A multiplicative generator used by the Leibniz engine.

    ``kind`` is one of "Rho", "TauSq", "Z", "TauH1", "H1", "V1Sq"; ``z`` is
    set only for kind "Z" (a ThetaOdd or NCEven coefficient at q = 0).
    """

    kind: str
    z: Optional[Z2Generator] = None

    @property
    def element(self) -> E1Basis:
        if self.kind == "Z":
            return ZPart(self.z, 0)
        return _ATOM_ELEMENTS[self.kind]

    def d1(self) -> E1Element:
        if self.kind == "TauSq":
            return E1Element.of(HPart(PC(1, 2), 1, 0))
        if self.kind == "V1Sq":
            return E1Element.of(HPart(PC(1, 0), 3, 0))
        if self.kind == "Z" and isinstance(self.z, NCEven):
            if self.z.m % 2 == 1 and self.z.i >= 2:
                return E1Element.of(HPart(NC(self.z.i - 2, 2 * self.z.m + 1), 1, 0))
        return E1Element.zero()

    def __repr__(self) -> str:
        return f"Z({self.z!r})" if self.kind == "Z" else self.kind


_ATOM_ELEMENTS = {"Rho": RHO, "TauSq": TAU_SQ, "TauH1": TAU_H1, "H1": H1, "V1Sq": V1_SQ}
_ATOM_ORDER = {"Rho": 0, "TauSq": 1, "Z": 2, "TauH1": 3, "H1": 4, "V1Sq": 5}

RHO_ATOM = Atom("Rho")
TAU_SQ_ATOM = Atom("TauSq")
TAU_H1_ATOM = Atom("TauH1")
H1_ATOM = Atom("H1")
V1_SQ_ATOM = Atom("V1Sq")


def e1_factorize(b: E1Basis) -> list[Atom]:
    if isinstance(b, HPart):
        c = b.c
        if isinstance(c, PC):
            e = c.a % 2
            return ([RHO_ATOM] * c.b + [TAU_SQ_ATOM] * (c.a // 2) + [TAU_H1_ATOM] * e
                    + [H1_ATOM] * (b.p - e) + [V1_SQ_ATOM] * b.m)
        if c.j % 2 == 0:
            return [Atom("Z", NCEven(c.i, c.j // 2))] + [H1_ATOM] * b.p + [V1_SQ_ATOM] * b.m
        # NC(i, j) t = NC(i, j - 1), so NC(i, j) h1 = NC(i, j + 1) . t h1
        lift = NCEven(c.i, (c.j + 1) // 2)
        return [Atom("Z", lift), TAU_H1_ATOM] + [H1_ATOM] * (b.p - 1) + [V1_SQ_ATOM] * b.m
    z = b.z
    if isinstance(z, TauEven):
        head = [TAU_SQ_ATOM] * z.k
    elif isinstance(z, RhoTau):
        head = [RHO_ATOM] * z.b + [TAU_SQ_ATOM] * z.a
    else:
        head = [Atom("Z", z)]
    return head + [V1_SQ_ATOM] * b.m


def _canonical(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    return tuple(sorted(atoms, key=lambda a: (_ATOM_ORDER[a.kind], a)))


@lru_cache(maxsize=None)
def atoms_product(atoms: tuple[Atom, ...]) -> E1Element:
    """Left-to-right product of a canonically ordered atom tuple."""
    if not atoms:
        return E1Element.of(UNIT)
    return e1_multiply(atoms_product(atoms[:-1]), E1Element.of(atoms[-1].element))


def leibniz_d1(atoms: Iterable[Atom]) -> E1Element:
    """d1 of a product of atoms by the Leibniz rule.

    All d1 values are 2-torsion, so signs play no role and an atom occurring
    an even number of times contributes nothing.  Rho and H1 are cycles, and
    even powers of TauSq and V1Sq are cycles, so those factors are split off
    and multiplied back in after the sum over the remaining atoms.
    """
    atoms = _canonical(atoms)
    core: list[Atom] = []
    cycles: list[Atom] = []
    counts: dict[str, int] = {}
    for a in atoms:
        if a.kind in _CYCLE_KINDS:
            cycles.append(a)
        elif a.kind in _PAIRED_KINDS:
            counts[a.kind] = counts.get(a.kind, 0) + 1
        else:
            core.append(a)
    for kind, e in counts.items():
        atom = Atom(kind)
        core.extend([atom] * (e % 2))
        cycles.extend([atom] * (e - e % 2))
    out = _core_d1(_canonical(core))
    if cycles and out:
        out = e1_multiply(out, atoms_product(_canonical(cycles)))
    return out


_CYCLE_KINDS = ("Rho", "H1")
_PAIRED_KINDS = ("TauSq", "V1Sq")


@lru_cache(maxsize=None)
def _core_d1(atoms: tuple[Atom, ...]) -> E1Element:
    counts: dict[Atom, int] = {}
    for a in atoms:
        counts[a] = counts.get(a, 0) + 1
    out = E1Element.zero()
    for a, e in counts.items():
        if e % 2 == 0:
            continue
        da = a.d1()
        if da.is_zero():
            continue
        rest = list(atoms)
        rest.remove(a)
        out = out + e1_multiply(da, atoms_product(tuple(rest)))
    return out


@lru_cache(maxsize=None)
def _basis_d1(b: E1Basis) -> E1Element:
    return leibniz_d1(e1_factorize(b))


def e1_d1(x: Union[E1Basis, E1Element]) -> E1Element:
    if isinstance(x, (HPart, ZPart)):
        return _basis_d1(x)
    out: dict = {}
    for b, c in x.coeffs.items():
        for b2, c2 in _basis_d1(b).coeffs.items():
            out[b2] = out.get(b2, 0) + c * c2
    return E1Element(out)


def alternative_factorizations(b: HPart) -> list[list[Atom]]:
    """Other atom decompositions of an NC-coefficient h1-class.

    NC(i, j) = NC(i, j + 2) . tau^2, giving a route through TauSq; when
    i = 0 and j is even, NC(0, j) = NC(0, j + 1) . tau lifts through a
    ThetaOdd atom and TauH1.
    """
    c = b.c
    if not isinstance(c, NC):
        return []
    tail_v = [V1_SQ_ATOM] * b.m
    out = []
    if c.j % 2 == 0:
        out.append([Atom("Z", NCEven(c.i, c.j // 2 + 1)), TAU_SQ_ATOM] + [H1_ATOM] * b.p + tail_v)
        if c.i == 0:
            out.append([Atom("Z", ThetaOdd(c.j // 2 + 1)), TAU_H1_ATOM] + [H1_ATOM] * (b.p - 1) + tail_v)
    else:
        lift = NCEven(c.i, (c.j + 3) // 2)
        out.append([Atom("Z", lift), TAU_SQ_ATOM, TAU_H1_ATOM] + [H1_ATOM] * (b.p - 1) + tail_v)
    return out


def d1_target(t: TriDegree) -> TriDegree:
    return t + D1_SHIFT
