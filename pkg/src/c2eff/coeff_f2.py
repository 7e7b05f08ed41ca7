"""The RO(C2)-graded coefficient ring of the mod-2 Eilenberg-MacLane spectrum.

Additively the ring is F2 in the bidegrees (s, w) with s <= 0, w <= s (the
positive cone, monomials t^a r^b) and s >= 0, w >= s + 2 (the negative
cone, monomials g/(r^i t^j)), and zero elsewhere.  Here ``t`` stands for
tau at (0, -1) and ``r`` for rho at (-1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .grading import BiDegree, Window


@dataclass(frozen=True, order=True)
class PC:
    """Positive cone monomial tau^a rho^b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise ValueError(f"PC exponents must be >= 0, got ({self.a}, {self.b})")

    @property
    def degree(self) -> BiDegree:
        return BiDegree(-self.b, -self.a - self.b)


@dataclass(frozen=True, order=True)
class NC:
    """Negative cone monomial gamma / (rho^i tau^j)."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i < 0 or self.j < 1:
            raise ValueError(f"NC needs i >= 0 and j >= 1, got ({self.i}, {self.j})")

    @property
    def degree(self) -> BiDegree:
        return BiDegree(self.i, self.i + self.j + 1)


F2Monomial = Union[PC, NC]


def monomial_key(x: F2Monomial) -> tuple:
    # PC sorts before NC; within a cone by exponents.
    if isinstance(x, PC):
        return (0, x.a, x.b)
    return (1, x.i, x.j)


class F2Element:
    """A formal F2-linear combination of monomials of one common bidegree."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[F2Monomial] = ()) -> None:
        acc: set = set()
        for t in terms:
            acc ^= {t}
        degrees = {t.degree for t in acc}
        if len(degrees) > 1:
            raise ValueError(f"mixed bidegrees in F2Element: {sorted(degrees)}")
        self.terms = frozenset(acc)

    @classmethod
    def zero(cls) -> "F2Element":
        return cls()

    @classmethod
    def of(cls, x: Optional[F2Monomial]) -> "F2Element":
        return cls() if x is None else cls((x,))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[F2Monomial]:
        return iter(sorted(self.terms, key=monomial_key))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, F2Element):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other: "F2Element") -> "F2Element":
        return F2Element(self.terms ^ other.terms)

    def __mul__(self, other: "F2Element") -> "F2Element":
        out: list = []
        for x in self.terms:
            for y in other.terms:
                out.extend(f2_multiply(x, y).terms)
        return F2Element(out)

    def __repr__(self) -> str:
        if not self.terms:
            return "F2Element(0)"
        return "F2Element(" + " + ".join(map(repr, self)) + ")"


def f2_group_at(s: int, w: int) -> Optional[F2Monomial]:
    """Return the basis monomial at (s, w), or None if the group is zero."""
    if s <= 0 and w <= s:
        b = -s
        return PC(-w - b, b)
    if s >= 0 and w >= s + 2:
        return NC(s, w - s - 1)
    return None


def mono_mul(x: F2Monomial, y: F2Monomial) -> Optional[F2Monomial]:
    """Product of two basis monomials (the ring has at most one per degree)."""
    if isinstance(x, NC):
        if isinstance(y, NC):
            return None
        x, y = y, x
    if isinstance(y, PC):
        return PC(x.a + y.a, x.b + y.b)
    i, j = y.i - x.b, y.j - x.a
    if i >= 0 and j >= 1:
        return NC(i, j)
    return None


def mono_sq1(x: F2Monomial) -> Optional[F2Monomial]:
    if isinstance(x, PC):
        return PC(x.a - 1, x.b + 1) if x.a % 2 == 1 else None
    if x.j % 2 == 1 and x.i >= 1:
        return NC(x.i - 1, x.j + 1)
    return None


def f2_multiply(x: F2Monomial, y: F2Monomial) -> F2Element:
    return F2Element.of(mono_mul(x, y))


def f2_sq1(x: F2Monomial) -> F2Element:
    """The first Steenrod square, of degree (-1, 0)."""
    return F2Element.of(mono_sq1(x))


def f2_sq1_element(x: F2Element) -> F2Element:
    out: list = []
    for t in x.terms:
        out.extend(f2_sq1(t).terms)
    return F2Element(out)


def f2_enumerate(window: Window) -> list[tuple[BiDegree, F2Monomial]]:
    """All basis monomials with degree in the window, sorted by (s, w)."""
    out = []
    for bd in window.bidegrees():
        x = f2_group_at(bd.s, bd.w)
        if x is not None:
            out.append((bd, x))
    return out


ONE = PC(0, 0)
TAU = PC(1, 0)
RHO = PC(0, 1)
