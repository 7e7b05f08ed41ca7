"""The presented ring Z_2[eta, rho, alpha, beta] / I as an independent check
of the coweight-0 homotopy, where I is generated by

    rho (eta rho + 2),  eta (eta rho + 2),  rho alpha - eta^3,
    rho^3 beta - eta alpha,  alpha^2 - 4 beta

with |eta| = (1,1), |rho| = (-1,-1), |alpha| = (4,4), |beta| = (8,8).
All generators have coweight 0, so a degree is just a stem s.

The stem-s component is infinite-dimensional before reduction (eta rho has
stem 0), so it is truncated at total monomial degree D <= N.  Every
relation lowers D, and the truncated quotient Q_N maps onto Q_{N+1}; we
accept Q_N once it has the same type as Q_{N+1} .. Q_{N+k} and every
monomial of degree in (N, N+k] already lies in the image.  Only integer
linear algebra is used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .linalg import ReducedPresentation, iso_type, reduce_presentation

Monomial = tuple[int, int, int, int]  # exponents of eta, rho, alpha, beta

STEM = (1, -1, 4, 8)
RELATIONS: list[dict[Monomial, int]] = [
    {(1, 2, 0, 0): 1, (0, 1, 0, 0): 2},    # rho (eta rho + 2)
    {(2, 1, 0, 0): 1, (1, 0, 0, 0): 2},    # eta (eta rho + 2)
    {(0, 1, 1, 0): 1, (3, 0, 0, 0): -1},   # rho alpha - eta^3
    {(0, 3, 0, 1): 1, (1, 0, 1, 0): -1},   # rho^3 beta - eta alpha
    {(0, 0, 2, 0): 1, (0, 0, 0, 1): -4},   # alpha^2 - 4 beta
]
NAMES = ("eta", "rho", "alpha", "beta")


class DegreeBoundInsufficient(RuntimeError):
    pass


def stem(m: Monomial) -> int:
    return sum(e * d for e, d in zip(m, STEM))


def total_degree(m: Monomial) -> int:
    return sum(m)


def monomials(s: int, bound: int) -> list[Monomial]:
    out = []
    for d in range(bound + 1):
        for c in range(bound + 1 - d):
            rest = s - 4 * c - 8 * d
            # a - b = rest, a + b <= bound - c - d
            left = bound - c - d
            for b in range(left + 1):
                a = rest + b
                if a < 0 or a + b > left:
                    continue
                out.append((a, b, c, d))
    return sorted(out, key=lambda m: (total_degree(m), m))


def _mul(x: Monomial, y: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(x, y))  # type: ignore[return-value]


def show_monomial(m: Monomial) -> str:
    parts = []
    for name, e in zip(NAMES, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) or "1"


@dataclass
class OracleGroup:
    stem: int
    bound: int
    monomials: list[Monomial]
    relations: list[dict[int, int]]
    presentation: ReducedPresentation

    def orders(self) -> list[Optional[int]]:
        return self.presentation.orders()

    def iso_type(self) -> tuple:
        return iso_type(self.orders())

    def coordinates(self, combo: dict[Monomial, int]) -> list[tuple[int, Optional[int]]]:
        idx = {m: i for i, m in enumerate(self.monomials)}
        vec = {}
        for m, c in combo.items():
            if m not in idx:
                raise ValueError(f"{show_monomial(m)} is outside the truncation")
            vec[idx[m]] = c
        return self.presentation.coordinates(vec)

    def is_zero(self, combo: dict[Monomial, int]) -> bool:
        return all(c == 0 for c, _ in self.coordinates(combo))


def truncated(s: int, bound: int) -> OracleGroup:
    mons = monomials(s, bound)
    idx = {m: i for i, m in enumerate(mons)}
    rels = []
    for rel in RELATIONS:
        rel_stem = stem(next(iter(rel)))
        rel_deg = max(total_degree(m) for m in rel)
        # multipliers mu with stem(mu) = s - rel_stem and all terms inside the bound
        for mu in monomials(s - rel_stem, bound - rel_deg):
            col = {}
            ok = True
            for m, c in rel.items():
                mm = _mul(mu, m)
                if mm not in idx:
                    ok = False
                    break
                col[idx[mm]] = col.get(idx[mm], 0) + c
            if ok:
                rels.append(col)
    return OracleGroup(s, bound, mons, rels, reduce_presentation(len(mons), [dict(c) for c in rels]))


def _image_surjects(small: OracleGroup, big: OracleGroup) -> bool:
    """Q_small -> Q_big is onto: Q_big modulo the old monomials vanishes."""
    rels = [dict(c) for c in big.relations]
    for i, m in enumerate(big.monomials):
        if total_degree(m) <= small.bound:
            rels.append({i: 1})
    return reduce_presentation(len(big.monomials), rels).orders() == []


@lru_cache(maxsize=None)
def oracle_degree(s: int, start: Optional[int] = None, confirm: int = 2, max_bound: int = 64) -> OracleGroup:
    """The stem-s group, certified by stabilization of the truncation."""
    bound = start if start is not None else max(4, abs(s) + 4)
    while bound <= max_bound:
        base = truncated(s, bound)
        ok = True
        for k in range(1, confirm + 1):
            nxt = truncated(s, bound + k)
            if nxt.iso_type() != base.iso_type() or not _image_surjects(base, nxt):
                ok = False
                break
        if ok:
            return base
        bound += 2
    raise DegreeBoundInsufficient(f"stem {s} did not stabilize below bound {max_bound}")
