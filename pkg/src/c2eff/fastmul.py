"""Compiled transliteration of the E1 basis product, used only to make the
exhaustive associativity check affordable.

A basis element is packed into five ints (kind, u, v, p, m):

    0  HPart(PC(u, v), p, m)      3  ZPart(ThetaOdd(u), m)
    1  HPart(NC(u, v), p, m)      4  ZPart(RhoTau(u, v), m)
    2  ZPart(TauEven(u), m)       5  ZPart(NCEven(u, v), m)

The port is checked against e1._basis_product pair by pair (see checks).
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np
from numba import njit

from .coeff_f2 import NC, PC
from .coeff_z2 import NCEven, RhoTau, TauEven, ThetaOdd
from .e1 import HPart, ZPart

_Z_KIND = {TauEven: 2, ThetaOdd: 3, RhoTau: 4, NCEven: 5}
_Z_CLS = {v: k for k, v in _Z_KIND.items()}


def encode(b) -> tuple:
    if isinstance(b, HPart):
        c = b.c
        if isinstance(c, PC):
            return (0, c.a, c.b, b.p, b.m)
        return (1, c.i, c.j, b.p, b.m)
    z = b.z
    k = _Z_KIND[type(z)]
    if k == 2:
        return (2, z.k, 0, 0, b.m)
    if k == 3:
        return (3, z.m, 0, 0, b.m)
    if k == 4:
        return (4, z.b, z.a, 0, b.m)
    return (5, z.i, z.m, 0, b.m)


def decode(row) -> object:
    k, u, v, p, m = (int(x) for x in row)
    if k == 0:
        return HPart(PC(u, v), p, m)
    if k == 1:
        return HPart(NC(u, v), p, m)
    cls = _Z_CLS[k]
    if k in (2, 3):
        return ZPart(cls(u), m)
    return ZPart(cls(u, v), m)


# f2 monomials are (kind, u, v) with kind 0 = PC, 1 = NC; kind -1 means zero


@njit(cache=True, inline="always")
def _mono_mul(k1, u1, v1, k2, u2, v2):
    if k1 == 1:
        if k2 == 1:
            return -1, 0, 0
        k1, u1, v1, k2, u2, v2 = k2, u2, v2, k1, u1, v1
    if k2 == 0:
        return 0, u1 + u2, v1 + v2
    i = u2 - v1
    j = v2 - u1
    if i >= 0 and j >= 1:
        return 1, i, j
    return -1, 0, 0


@njit(cache=True, inline="always")
def _mono_sq1(k, u, v):
    if k == 0:
        if u % 2 == 1:
            return 0, u - 1, v + 1
        return -1, 0, 0
    if v % 2 == 1 and u >= 1:
        return 1, u - 1, v + 1
    return -1, 0, 0


@njit(cache=True, inline="always")
def _bockstein(k, u, v):
    # returns a z2 kind (4 RhoTau or 5 NCEven) or -1
    if k == 0:
        if u % 2 == 1:
            return 4, v + 1, (u - 1) // 2
        return -1, 0, 0
    if v % 2 == 1 and u >= 1:
        return 5, u - 1, (v + 1) // 2
    return -1, 0, 0


@njit(cache=True, inline="always")
def _reduce(k, u, v):
    if k == 2:
        return 0, 2 * u, 0
    if k == 3:
        return 1, 0, 2 * u - 1
    if k == 4:
        return 0, 2 * v, u
    return 1, u, 2 * v


@njit(cache=True, inline="always")
def _rank(k):
    if k == 2:
        return 0
    if k == 4:
        return 1
    if k == 3:
        return 2
    return 3


@njit(cache=True, inline="always")
def _gen_product(k1, u1, v1, k2, u2, v2):
    """(coefficient, kind, u, v); coefficient 0 means zero."""
    if _rank(k1) > _rank(k2):
        k1, u1, v1, k2, u2, v2 = k2, u2, v2, k1, u1, v1
    if k1 == 2:
        kk = u1
        if k2 == 2:
            return 1, 2, kk + u2, 0
        if k2 == 3:
            if kk < u2:
                return 1, 3, u2 - kk, 0
            return 2, 2, kk - u2, 0
        if k2 == 4:
            return 1, 4, u2, v2 + kk
        if kk < v2:
            return 1, 5, u2, v2 - kk
        return 0, 0, 0, 0
    if k1 == 4:
        if k2 == 4:
            return 1, 4, u1 + u2, v1 + v2
        if k2 == 3:
            return 0, 0, 0, 0
        if u2 >= u1 and v2 > v1:
            return 1, 5, u2 - u1, v2 - v1
        return 0, 0, 0, 0
    if k1 == 3 and k2 == 3:
        return 2, 3, u1 + u2, 0
    return 0, 0, 0, 0


@njit(cache=True, inline="always")
def _put(out_t, out_c, n, k, u, v, p, m, c):
    out_t[n, 0] = k
    out_t[n, 1] = u
    out_t[n, 2] = v
    out_t[n, 3] = p
    out_t[n, 4] = m
    out_c[n] = c


@njit(cache=True, inline="always")
def _product(kx, ux, vx, px, mx, ky, uy, vy, py, my, cf, out_t, out_c, n):
    """Append cf * (x y) to out_t/out_c from row n on; return the new row count."""
    m = mx + my
    if kx >= 2 and ky >= 2:
        c, k, u, v = _gen_product(kx, ux, vx, ky, uy, vy)
        if c != 0:
            _put(out_t, out_c, n, k, u, v, 0, m, cf * c)
            n += 1
        return n
    if kx >= 2 or ky >= 2:
        if kx >= 2:
            rk, ru, rv = _reduce(kx, ux, vx)
            k, u, v = _mono_mul(rk, ru, rv, ky, uy, vy)
            hp = py
        else:
            rk, ru, rv = _reduce(ky, uy, vy)
            k, u, v = _mono_mul(rk, ru, rv, kx, ux, vx)
            hp = px
        if k >= 0:
            _put(out_t, out_c, n, k, u, v, hp, m, cf)
            n += 1
        return n
    k, u, v = _mono_mul(kx, ux, vx, ky, uy, vy)
    if k >= 0:
        _put(out_t, out_c, n, k, u, v, px + py, m, cf)
        n += 1
    if px == 1 and py == 1:
        sk, su, sv = _mono_sq1(ky, uy, vy)
        if sk >= 0:
            ak, au, av = _mono_mul(kx, ux, vx, sk, su, sv)
            if ak >= 0:
                gk, gu, gv = _bockstein(ak, au, av)
                if gk >= 0:
                    _put(out_t, out_c, n, gk, gu, gv, 0, m + 1, cf)
                    n += 1
    else:
        ak, au, av = _mono_sq1(kx, ux, vx)
        bk, bu, bv = _mono_sq1(ky, uy, vy)
        if ak >= 0 and bk >= 0:
            ck, cu, cv = _mono_mul(ak, au, av, bk, bu, bv)
            if ck >= 0:
                _put(out_t, out_c, n, ck, cu, cv, px + py - 2, m + 1, cf)
                n += 1
    return n


@njit(cache=True)
def basis_product(x, y, out_t, out_c):
    """Write the product terms into out_t (2 x 5) and out_c; return the count."""
    return _product(x[0], x[1], x[2], x[3], x[4], y[0], y[1], y[2], y[3], y[4], 1, out_t, out_c, 0)


@njit(cache=True, inline="always")
def _same(at, ac, na, bt, bc, nb):
    # compare two short integer combinations, torsion coefficients mod 2
    if na == nb:
        # usual case: the same terms in the same order
        same = True
        for i in range(na):
            if ac[i] != bc[i]:
                same = False
                break
            for f in range(5):
                if at[i, f] != bt[i, f]:
                    same = False
                    break
            if not same:
                break
        if same:
            return True
    for side in range(2):
        if side == 0:
            pt, pc, pn, qt, qc, qn = at, ac, na, bt, bc, nb
        else:
            pt, pc, pn, qt, qc, qn = bt, bc, nb, at, ac, na
        for i in range(pn):
            total = 0
            for j in range(pn):
                eq = True
                for f in range(5):
                    if pt[i, f] != pt[j, f]:
                        eq = False
                        break
                if eq:
                    total += pc[j]
            for j in range(qn):
                eq = True
                for f in range(5):
                    if pt[i, f] != qt[j, f]:
                        eq = False
                        break
                if eq:
                    total -= qc[j]
            k = pt[i, 0]
            if k == 2 or k == 3:
                if total != 0:
                    return False
            elif total % 2 != 0:
                return False
    return True


@njit(cache=True)
def associativity_scan(basis, starts, degs, first, radius, q_max, limit):
    """Check (xy)z = x(yz) on every basis triple whose total degree lies in
    the box |s|,|w| <= radius, q <= q_max.

    ``basis`` rows are grouped by tridegree: block i is
    basis[starts[i]:starts[i+1]] at degs[i], blocks sorted by (s, q, w).
    first[s + radius, q, w + radius] is the first block at or after
    (s, q, w) in that order (w index up to 2 radius + 1).
    Returns (triples checked, first failures as index triples, failure count)."""
    nb = degs.shape[0]
    width = 0
    for a in range(nb):
        width = max(width, starts[a + 1] - starts[a])
    fails = np.zeros((limit, 3), dtype=np.int64)
    nf = 0
    checked = 0
    xy_t = np.zeros((width, width, 2, 5), dtype=np.int64)
    xy_c = np.zeros((width, width, 2), dtype=np.int64)
    xy_n = np.zeros((width, width), dtype=np.int64)
    yz_t = np.zeros((2, 5), dtype=np.int64)
    yz_c = np.zeros(2, dtype=np.int64)
    left_t = np.zeros((4, 5), dtype=np.int64)
    left_c = np.zeros(4, dtype=np.int64)
    right_t = np.zeros((4, 5), dtype=np.int64)
    right_c = np.zeros(4, dtype=np.int64)
    B = basis
    for a in range(nb):
        a0, a1 = starts[a], starts[a + 1]
        for b in range(nb):
            s2 = degs[a, 0] + degs[b, 0]
            q2 = degs[a, 1] + degs[b, 1]
            w2 = degs[a, 2] + degs[b, 2]
            if q2 > q_max:
                continue
            s_lo, s_hi = max(-radius, -radius - s2), min(radius, radius - s2)
            w_lo, w_hi = max(-radius, -radius - w2), min(radius, radius - w2)
            if s_lo > s_hi or w_lo > w_hi:
                continue
            b0, b1 = starts[b], starts[b + 1]
            for j in range(b0, b1):
                for i in range(a0, a1):
                    xy_n[i - a0, j - b0] = _product(B[i, 0], B[i, 1], B[i, 2], B[i, 3], B[i, 4],
                                                    B[j, 0], B[j, 1], B[j, 2], B[j, 3], B[j, 4],
                                                    1, xy_t[i - a0, j - b0], xy_c[i - a0, j - b0], 0)
            for s3 in range(s_lo, s_hi + 1):
                for q3 in range(0, q_max - q2 + 1):
                    c_lo = first[s3 + radius, q3, w_lo + radius]
                    c_hi = first[s3 + radius, q3, w_hi + radius + 1]
                    for c in range(c_lo, c_hi):
                        for k in range(starts[c], starts[c + 1]):
                            zk, zu, zv, zp, zm = B[k, 0], B[k, 1], B[k, 2], B[k, 3], B[k, 4]
                            for j in range(b0, b1):
                                nyz = _product(B[j, 0], B[j, 1], B[j, 2], B[j, 3], B[j, 4],
                                               zk, zu, zv, zp, zm, 1, yz_t, yz_c, 0)
                                jj = j - b0
                                for i in range(a0, a1):
                                    ii = i - a0
                                    checked += 1
                                    nl = 0
                                    for r in range(xy_n[ii, jj]):
                                        nl = _product(xy_t[ii, jj, r, 0], xy_t[ii, jj, r, 1], xy_t[ii, jj, r, 2],
                                                      xy_t[ii, jj, r, 3], xy_t[ii, jj, r, 4],
                                                      zk, zu, zv, zp, zm, xy_c[ii, jj, r], left_t, left_c, nl)
                                    nr = 0
                                    for r in range(nyz):
                                        nr = _product(B[i, 0], B[i, 1], B[i, 2], B[i, 3], B[i, 4],
                                                      yz_t[r, 0], yz_t[r, 1], yz_t[r, 2], yz_t[r, 3], yz_t[r, 4],
                                                      yz_c[r], right_t, right_c, nr)
                                    if (nl or nr) and not _same(left_t, left_c, nl, right_t, right_c, nr):
                                        if nf < limit:
                                            fails[nf, 0] = i
                                            fails[nf, 1] = j
                                            fails[nf, 2] = k
                                        nf += 1
    return checked, fails[: min(nf, limit)], nf


def pack_blocks(blocks: dict, radius: int, q_max: int):
    """Arrays for associativity_scan from {TriDegree: [basis...]} in the box."""
    order = sorted(blocks, key=lambda t: (t.s, t.q, t.w))
    rows, starts, degs = [], [0], []
    for t in order:
        rows.extend(encode(b) for b in blocks[t])
        starts.append(len(rows))
        degs.append((t.s, t.q, t.w))
    keys = [(t.s, t.q, t.w) for t in order]
    first = np.zeros((2 * radius + 1, q_max + 1, 2 * radius + 2), dtype=np.int64)
    for s in range(-radius, radius + 1):
        for q in range(q_max + 1):
            for w in range(-radius, radius + 2):
                first[s + radius, q, w + radius] = bisect_left(keys, (s, q, w))
    return (np.array(rows, dtype=np.int64), np.array(starts, dtype=np.int64),
            np.array(degs, dtype=np.int64), first)


def product_terms(x, y) -> dict:
    """The compiled product of two basis elements as {E1Basis: coefficient}."""
    t = np.zeros((2, 5), dtype=np.int64)
    c = np.zeros(2, dtype=np.int64)
    n = basis_product(np.array(encode(x), dtype=np.int64), np.array(encode(y), dtype=np.int64), t, c)
    return {decode(t[i]): int(c[i]) for i in range(n)}


@njit(cache=True)
def block_products(basis, starts, degs, a, radius, q_max):
    """Products x y for x in block a and every y whose total degree is in the
    box, in the order (block b ascending, x, y)."""
    nb = degs.shape[0]
    total = 0
    for b in range(nb):
        s, q, w = degs[a, 0] + degs[b, 0], degs[a, 1] + degs[b, 1], degs[a, 2] + degs[b, 2]
        if q <= q_max and -radius <= s <= radius and -radius <= w <= radius:
            total += (starts[a + 1] - starts[a]) * (starts[b + 1] - starts[b])
    terms = np.zeros((total, 2, 5), dtype=np.int64)
    coefs = np.zeros((total, 2), dtype=np.int64)
    counts = np.zeros(total, dtype=np.int64)
    n = 0
    B = basis
    for b in range(nb):
        s, q, w = degs[a, 0] + degs[b, 0], degs[a, 1] + degs[b, 1], degs[a, 2] + degs[b, 2]
        if not (q <= q_max and -radius <= s <= radius and -radius <= w <= radius):
            continue
        for i in range(starts[a], starts[a + 1]):
            for j in range(starts[b], starts[b + 1]):
                counts[n] = _product(B[i, 0], B[i, 1], B[i, 2], B[i, 3], B[i, 4],
                                     B[j, 0], B[j, 1], B[j, 2], B[j, 3], B[j, 4],
                                     1, terms[n], coefs[n], 0)
                n += 1
    return terms, coefs, counts
