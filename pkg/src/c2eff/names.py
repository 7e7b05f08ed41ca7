"""Display and parsing of coefficient monomials, generators and E1 basis names.

Grammar (ASCII; ``t`` = tau, ``r`` = rho, ``g`` = gamma, ``v`` = v_1):

    mod-2 positive cone     t^a r^b          ("1" for the unit)
    negative cone           g/(r^i t^j)      (g/t^j when i = 0)
    integral generators     t^2k, g/t^(2m-1), r^b t^2a, g/(r^i t^2m)
    E1 basis                <coef> h1^p v^2m   or   <integral coef> v^2m

Exponents equal to 1 are elided everywhere, zero exponents are dropped.
"""

from __future__ import annotations

from typing import Optional, Union

from .coeff_f2 import NC, PC, F2Monomial
from .coeff_z2 import NCEven, RhoTau, TauEven, ThetaOdd, Z2Generator
from .e1 import E1Basis, E1Element, HPart, ZPart


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _pow(sym: str, e: int) -> str:
    if e == 0:
        return ""
    return sym if e == 1 else f"{sym}^{e}"


def _join(*parts: str) -> str:
    return " ".join(p for p in parts if p)


def _nc(i: int, j: int) -> str:
    den = _join(_pow("r", i), _pow("t", j))
    return f"g/({den})" if i and j else f"g/{den}"


def show_f2(x: F2Monomial) -> str:
    if isinstance(x, PC):
        return _join(_pow("t", x.a), _pow("r", x.b)) or "1"
    return _nc(x.i, x.j)


def show_z2(z: Z2Generator) -> str:
    if isinstance(z, TauEven):
        return _pow("t", 2 * z.k) or "1"
    if isinstance(z, ThetaOdd):
        return _nc(0, 2 * z.m - 1)
    if isinstance(z, RhoTau):
        return _join(_pow("r", z.b), _pow("t", 2 * z.a))
    return _nc(z.i, 2 * z.m)


def show_basis(b: E1Basis) -> str:
    v = _pow("v", 2 * b.m)
    if isinstance(b, HPart):
        c = show_f2(b.c)
        return _join("" if c == "1" else c, _pow("h1", b.p), v)
    c = show_z2(b.z)
    if c == "1" and v:
        return v
    return _join(c, v)


def show_element(x: E1Element) -> str:
    if x.is_zero():
        return "0"
    terms = []
    for b, c in x.items():
        name = show_basis(b)
        if c == 1:
            terms.append(name)
        elif name == "1":
            terms.append(str(c))
        else:
            terms.append(f"{c}*{name}")
    return " + ".join(terms)


# --- parsing -------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.eat(s):
            raise self.error(f"expected {s!r}")

    def spaces(self) -> None:
        while self.peek(" "):
            self.pos += 1

    def done(self) -> bool:
        return self.pos >= len(self.text)

    def integer(self) -> int:
        start = self.pos
        paren = self.eat("(")
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start + paren:self.pos]
        if not digits:
            raise self.error("expected exponent")
        if paren:
            self.expect(")")
        return int(digits)

    def exponent(self) -> int:
        return self.integer() if self.eat("^") else 1


def _factors(sc: _Scanner, inside_parens: bool) -> dict[str, int]:
    """Sequence of t/r powers; returns exponents by symbol."""
    exps = {"t": 0, "r": 0}
    seen = False
    while True:
        if inside_parens:
            sc.spaces()
        sym = next((s for s in ("t", "r") if sc.peek(s) and not sc.peek("h1")), None)
        if sym is None:
            break
        if exps[sym]:
            raise sc.error(f"repeated factor {sym!r}")
        sc.pos += 1
        exps[sym] = sc.exponent()
        seen = True
        if not inside_parens:
            # stop unless another t/r factor follows after one space
            save = sc.pos
            sc.spaces()
            if not (sc.peek("t") or sc.peek("r")):
                sc.pos = save
                break
    if not seen:
        raise sc.error("expected 't' or 'r'")
    return exps


def _coefficient(sc: _Scanner) -> tuple[str, int, int]:
    """Returns ("pc", a, b) for t^a r^b or ("nc", i, j) for g/(r^i t^j)."""
    if sc.eat("g/"):
        if sc.eat("("):
            exps = _factors(sc, True)
            sc.spaces()
            sc.expect(")")
        else:
            exps = _factors(sc, False)
        if exps["t"] < 1:
            raise sc.error("negative cone needs a t in the denominator")
        return ("nc", exps["r"], exps["t"])
    if sc.eat("1"):
        return ("pc", 0, 0)
    exps = _factors(sc, False)
    return ("pc", exps["t"], exps["r"])


def _to_f2(kind: str, x: int, y: int) -> F2Monomial:
    return PC(x, y) if kind == "pc" else NC(x, y)


def _to_z2(sc: _Scanner, kind: str, x: int, y: int) -> Z2Generator:
    if kind == "pc":
        a, b = x, y
        if a % 2:
            raise sc.error("odd tau power is not an integral generator")
        return TauEven(a // 2) if b == 0 else RhoTau(b, a // 2)
    i, j = x, y
    if j % 2 == 0:
        return NCEven(i, j // 2)
    if i == 0:
        return ThetaOdd((j + 1) // 2)
    raise sc.error("g/(r^i t^j) with i > 0 and j odd is not an integral generator")


def parse_f2(text: str) -> F2Monomial:
    sc = _Scanner(text)
    kind, x, y = _coefficient(sc)
    if not sc.done():
        raise sc.error("trailing input")
    return _to_f2(kind, x, y)


def parse_z2(text: str) -> Z2Generator:
    sc = _Scanner(text)
    kind, x, y = _coefficient(sc)
    if not sc.done():
        raise sc.error("trailing input")
    return _to_z2(sc, kind, x, y)


def parse_basis(text: str) -> E1Basis:
    sc = _Scanner(text)
    coef: Optional[tuple[str, int, int]] = None
    if not (sc.peek("h1") or sc.peek("v")):
        coef = _coefficient(sc)
        sc.spaces()
    p = 0
    if sc.eat("h1"):
        p = sc.exponent()
        sc.spaces()
    m = 0
    if sc.eat("v"):
        e = sc.exponent()
        if e % 2:
            raise sc.error("v appears only in even powers")
        m = e // 2
    if not sc.done():
        raise sc.error("trailing input")
    if coef is None:
        if p == 0 and m == 0:
            raise sc.error("empty name")
        coef = ("pc", 0, 0)
    if p:
        return HPart(_to_f2(*coef), p, m)
    return ZPart(_to_z2(sc, *coef), m)


def parse_name(text: str, context: str = "e1") -> Union[E1Basis, Z2Generator, F2Monomial]:
    """Inverse of the display functions; ``context`` is "f2", "z2" or "e1"."""
    if context == "f2":
        return parse_f2(text)
    if context == "z2":
        return parse_z2(text)
    if context == "e1":
        return parse_basis(text)
    raise ValueError(f"unknown context {context!r}")


def parse_element(text: str) -> E1Element:
    """Inverse of show_element: terms "c*name" or "name" joined by " + "."""
    if text == "0":
        return E1Element()
    out = E1Element()
    pos = 0
    for term in text.split(" + "):
        coef = 1
        body = term
        head, star, rest = term.partition("*")
        if star:
            if not head.lstrip("-").isdigit():
                raise ParseError("bad coefficient", text, pos)
            coef, body = int(head), rest
        elif term.lstrip("-").isdigit():
            coef, body = int(term), "1"
        try:
            b = parse_basis(body) if body != "1" else ZPart(TauEven(0), 0)
        except ParseError as e:
            raise ParseError(str(e).split(" at position")[0], text, pos + (len(term) - len(body)) + e.pos) from None
        out = out + E1Element.of(b, coef)
        pos += len(term) + 3
    return out
