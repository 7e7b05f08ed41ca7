"""The RO(C2)-graded coefficient ring of the 2-complete integral
Eilenberg-MacLane spectrum.

The additive structure is recovered from the mod-2 ring by running the
2-Bockstein spectral sequence (``bockstein_einf``); the ring structure is
the generator table in ``z2_multiply``.  Coefficients are plain Python
integers; 2-adic completion never matters for the finite checks done here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from .coeff_f2 import NC, PC, F2Element, F2Monomial, f2_group_at, f2_sq1
from .grading import BiDegree, Window


@dataclass(frozen=True, order=True)
class TauEven:
    """tau^(2k), generating a Z_2 at (0, -2k)."""

    k: int

    @property
    def degree(self) -> BiDegree:
        return BiDegree(0, -2 * self.k)


@dataclass(frozen=True, order=True)
class ThetaOdd:
    """gamma / tau^(2m-1), generating a Z_2 at (0, 2m)."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"ThetaOdd needs m >= 1, got {self.m}")

    @property
    def degree(self) -> BiDegree:
        return BiDegree(0, 2 * self.m)


@dataclass(frozen=True, order=True)
class RhoTau:
    """rho^b tau^(2a), of order 2."""

    b: int
    a: int

    def __post_init__(self) -> None:
        if self.b < 1 or self.a < 0:
            raise ValueError(f"RhoTau needs b >= 1, a >= 0, got ({self.b}, {self.a})")

    @property
    def degree(self) -> BiDegree:
        return BiDegree(-self.b, -2 * self.a - self.b)


@dataclass(frozen=True, order=True)
class NCEven:
    """gamma / (rho^i tau^(2m)), of order 2."""

    i: int
    m: int

    def __post_init__(self) -> None:
        if self.i < 0 or self.m < 1:
            raise ValueError(f"NCEven needs i >= 0, m >= 1, got ({self.i}, {self.m})")

    @property
    def degree(self) -> BiDegree:
        return BiDegree(self.i, self.i + 2 * self.m + 1)


Z2Generator = Union[TauEven, ThetaOdd, RhoTau, NCEven]

ONE = TauEven(0)

_KIND_RANK = {TauEven: 0, RhoTau: 1, ThetaOdd: 2, NCEven: 3}


def generator_key(z: Z2Generator) -> tuple:
    return (_KIND_RANK[type(z)],) + tuple(vars(z).values())


def is_free(z: Z2Generator) -> bool:
    """True for the Z_2 summands, False for the order-2 ones."""
    return isinstance(z, (TauEven, ThetaOdd))


def order_of(z: Z2Generator) -> Optional[int]:
    return None if is_free(z) else 2


class Z2Element:
    """Integer combination of generators sharing a bidegree; coefficients on
    order-2 generators are kept reduced mod 2."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict] = None) -> None:
        norm = {}
        for g, c in (coeffs or {}).items():
            if not is_free(g):
                c %= 2
            if c:
                norm[g] = c
        if len({g.degree for g in norm}) > 1:
            raise ValueError(f"mixed bidegrees in Z2Element: {norm}")
        self.coeffs = norm

    @classmethod
    def of(cls, g: Z2Generator, c: int = 1) -> "Z2Element":
        return cls({g: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def items(self) -> Iterator[tuple[Z2Generator, int]]:
        for g in sorted(self.coeffs, key=generator_key):
            yield g, self.coeffs[g]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Z2Element):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "Z2Element") -> "Z2Element":
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return Z2Element(out)

    def __rmul__(self, k: int) -> "Z2Element":
        return Z2Element({g: k * c for g, c in self.coeffs.items()})

    def __mul__(self, other: "Z2Element") -> "Z2Element":
        return z2_multiply(self, other)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Z2Element(0)"
        return "Z2Element(" + " + ".join(f"{c}*{g!r}" for g, c in self.items()) + ")"


# --- the Bockstein spectral sequence --------------------------------------


@dataclass(frozen=True)
class BocksteinClass:
    monomial: F2Monomial
    t_power: int = 0

    @property
    def degree(self) -> BiDegree:
        return self.monomial.degree


def bockstein_d1(x: BocksteinClass) -> Optional[BocksteinClass]:
    """d1(x t^n) = Sq^1(x) t^(n+1); None when it vanishes."""
    y = f2_sq1(x.monomial)
    if y.is_zero():
        return None
    (m,) = y
    return BocksteinClass(m, x.t_power + 1)


class WindowTooSmall(RuntimeError):
    pass


@dataclass(frozen=True)
class BocksteinGroup:
    """E-infinity of the Bockstein spectral sequence at one bidegree."""

    degree: BiDegree
    order: Optional[int]  # None = Z_2, 2 = F_2
    generator: Optional[Z2Generator]  # None if the survivor has no integral name
    survivors: tuple[int, ...]  # t-powers at which the class survives


def generator_from_monomial(x: F2Monomial) -> Z2Generator:
    """Name of the integral class detected by ``x`` in Bockstein filtration 0."""
    if isinstance(x, PC):
        if x.a % 2:
            raise ValueError(f"{x} has odd tau exponent; not a Bockstein survivor")
        return TauEven(x.a // 2) if x.b == 0 else RhoTau(x.b, x.a // 2)
    if x.j % 2:
        if x.i:
            raise ValueError(f"{x} is not a Bockstein survivor")
        return ThetaOdd((x.j + 1) // 2)
    return NCEven(x.i, x.j // 2)


def bockstein_column(
    s: int,
    w: int,
    d1: Callable[[BocksteinClass], Optional[BocksteinClass]] = bockstein_d1,
    t_max: int = 3,
) -> Optional[BocksteinGroup]:
    """Kernel mod image at (s, w) for t-powers 0..t_max, then classified."""
    x = f2_group_at(s, w)
    if x is None:
        return None
    source = f2_group_at(s + 1, w)
    survivors = []
    for n in range(t_max + 1):
        if d1(BocksteinClass(x, n)) is not None:
            continue
        hit = False
        if n >= 1 and source is not None:
            y = d1(BocksteinClass(source, n - 1))
            hit = y is not None and y.monomial == x and y.t_power == n
        if not hit:
            survivors.append(n)
    if not survivors:
        return None
    if survivors == [0]:
        order = 2
    elif survivors == list(range(t_max + 1)):
        order = None
    else:
        raise WindowTooSmall(f"undecided t-tower at ({s}, {w}): survivors {survivors}")
    try:
        gen: Optional[Z2Generator] = generator_from_monomial(x)
    except ValueError:
        gen = None
    return BocksteinGroup(BiDegree(s, w), order, gen, tuple(survivors))


def bockstein_einf(
    window: Window,
    d1: Callable[[BocksteinClass], Optional[BocksteinClass]] = bockstein_d1,
) -> dict[BiDegree, BocksteinGroup]:
    out = {}
    for bd in window.bidegrees():
        g = bockstein_column(bd.s, bd.w, d1)
        if g is not None:
            out[bd] = g
    return out


def z2_closed_form(s: int, w: int) -> Optional[str]:
    """Order label from the region description: "Z2", "2" or None."""
    if s == 0 and w % 2 == 0:
        return "Z2"
    if s <= -1 and w <= s and (s - w) % 2 == 0:
        return "2"
    if s >= 0 and w >= s + 3 and (w - s - 3) % 2 == 0:
        return "2"
    return None


def z2_generator_at(s: int, w: int) -> Optional[Z2Generator]:
    """Closed-form lookup of the generator at (s, w)."""
    if s == 0 and w % 2 == 0:
        return TauEven(-w // 2) if w <= 0 else ThetaOdd(w // 2)
    if s <= -1 and w <= s and (s - w) % 2 == 0:
        return RhoTau(-s, (s - w) // 2)
    if s >= 0 and w >= s + 3 and (w - s - 3) % 2 == 0:
        return NCEven(s, (w - s - 1) // 2)
    return None


def z2_verify_closed_form(
    window: Window,
    d1: Callable[[BocksteinClass], Optional[BocksteinClass]] = bockstein_d1,
) -> list[str]:
    """Mismatches between the Bockstein computation and the closed form."""
    einf = bockstein_einf(window, d1)
    mismatches = []
    for bd in window.bidegrees():
        expected = z2_closed_form(bd.s, bd.w)
        g = einf.get(bd)
        got = None if g is None else ("Z2" if g.order is None else "2")
        if got != expected:
            mismatches.append(f"({bd.s},{bd.w}): bockstein={got} closed_form={expected}")
        elif g is not None and g.generator != z2_generator_at(bd.s, bd.w):
            mismatches.append(f"({bd.s},{bd.w}): generator {g.generator} != closed form")
    return mismatches


# --- multiplication --------------------------------------------------------


def _gen_product(x: Z2Generator, y: Z2Generator) -> Optional[tuple[int, Z2Generator]]:
    rank = _KIND_RANK
    if rank[type(x)] > rank[type(y)]:
        x, y = y, x
    if isinstance(x, TauEven):
        k = x.k
        if isinstance(y, TauEven):
            return 1, TauEven(k + y.k)
        if isinstance(y, ThetaOdd):
            return (1, ThetaOdd(y.m - k)) if k < y.m else (2, TauEven(k - y.m))
        if isinstance(y, RhoTau):
            return 1, RhoTau(y.b, y.a + k)
        return (1, NCEven(y.i, y.m - k)) if k < y.m else None
    if isinstance(x, RhoTau):
        if isinstance(y, RhoTau):
            return 1, RhoTau(x.b + y.b, x.a + y.a)
        if isinstance(y, ThetaOdd):
            return None
        if y.i >= x.b and y.m > x.a:
            return 1, NCEven(y.i - x.b, y.m - x.a)
        return None
    if isinstance(x, ThetaOdd) and isinstance(y, ThetaOdd):
        return 2, ThetaOdd(x.m + y.m)
    return None


def z2_multiply_generators(x: Z2Generator, y: Z2Generator) -> Z2Element:
    p = _gen_product(x, y)
    return Z2Element() if p is None else Z2Element.of(p[1], p[0])


def z2_multiply(x: Z2Element, y: Z2Element) -> Z2Element:
    out: dict = {}
    for g, c in x.coeffs.items():
        for h, d in y.coeffs.items():
            p = _gen_product(g, h)
            if p is not None:
                out[p[1]] = out.get(p[1], 0) + c * d * p[0]
    return Z2Element(out)


# --- reduction and the integral Bockstein ----------------------------------


def reduce_generator(z: Z2Generator) -> F2Monomial:
    if isinstance(z, TauEven):
        return PC(2 * z.k, 0)
    if isinstance(z, ThetaOdd):
        return NC(0, 2 * z.m - 1)
    if isinstance(z, RhoTau):
        return PC(2 * z.a, z.b)
    return NC(z.i, 2 * z.m)


def z2_reduce(x: Z2Element) -> F2Element:
    return F2Element(reduce_generator(g) for g, c in x.coeffs.items() if c % 2)


def bockstein_generator(x: F2Monomial) -> Optional[Z2Generator]:
    if isinstance(x, PC):
        return RhoTau(x.b + 1, (x.a - 1) // 2) if x.a % 2 else None
    if x.j % 2 and x.i >= 1:
        return NCEven(x.i - 1, (x.j + 1) // 2)
    return None


def z2_integral_bockstein(x: F2Monomial) -> Z2Element:
    """The connecting map from mod-2 to integral coefficients, degree (-1, 0)."""
    g = bockstein_generator(x)
    return Z2Element() if g is None else Z2Element.of(g)


def z2_integral_bockstein_element(x: F2Element) -> Z2Element:
    out = Z2Element()
    for m in x.terms:
        out = out + z2_integral_bockstein(m)
    return out


def underlying_image(z: Z2Generator) -> int:
    """Degree of the non-equivariant underlying map on the s = 0 row."""
    if isinstance(z, TauEven):
        return 1
    if isinstance(z, ThetaOdd):
        return 2
    return 0


def z2_enumerate(window: Window) -> list[tuple[BiDegree, Z2Generator]]:
    out = []
    for bd in window.bidegrees():
        z = z2_generator_at(bd.s, bd.w)
        if z is not None:
            out.append((bd, z))
    return out

