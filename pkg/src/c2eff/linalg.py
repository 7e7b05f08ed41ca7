"""Exact integer linear algebra: Smith normal form and homology of small
finitely presented abelian groups.

Matrices are lists of rows of Python ints.  Everything is exact; no numpy.
Groups are read 2-locally where noted (odd integers are units in Z_2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def matmul(a: Matrix, b: Matrix, inner: Optional[int] = None) -> Matrix:
    """Product a @ b.  ``inner`` is needed only when a has no rows and b has no columns."""
    n = len(a)
    k = len(b) if inner is None else inner
    m = len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        row = a[i]
        oi = out[i]
        for t in range(k):
            v = row[t]
            if v:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += v * bt[j]
    return out


def matvec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Matrix, cols: Optional[int] = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def two_adic_valuation(n: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


@dataclass
class SmithForm:
    """U @ A @ V == D with U, V unimodular; ``diagonal`` lists the nonzero
    invariant factors d_1 | d_2 | ... (positive)."""

    U: Matrix
    D: Matrix
    V: Matrix
    diagonal: list[int]
    U_inv: Matrix = field(default_factory=list)


def smith_normal_form(a: Matrix, n_cols: Optional[int] = None) -> SmithForm:
    rows = len(a)
    cols = len(a[0]) if rows else (n_cols or 0)
    D = [list(r) for r in a]
    U = identity(rows)
    U_inv = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in U_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        D[dst] = [x + k * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]
        for r in U_inv:
            r[src] -= k * r[dst]

    def add_col(src, dst, k):  # col dst += k * col src
        for r in D:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            p = D[t][t]
            for i in range(t + 1, rows):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
                        break
            if not done:
                continue
            p = D[t][t]
            for j in range(t + 1, cols):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
                        break
            if not done:
                continue
            # divisibility condition on the rest of the block
            p = D[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if D[i][j] % p:
                        add_row(i, t, 1)
                        done = False
                        break
                if not done:
                    break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for r in U_inv:
                r[t] = -r[t]
        t += 1
    diagonal = [D[i][i] for i in range(min(rows, cols)) if D[i][i]]
    return SmithForm(U, D, V, diagonal, U_inv)


def invariant_factors_2local(diagonal: Sequence[int]) -> list[int]:
    """2-primary parts of invariant factors; units (odd) are dropped."""
    out = []
    for d in diagonal:
        k = two_adic_valuation(d)
        if k:
            out.append(2 ** k)
    return out


def cokernel_orders(relations: Matrix, n_gens: int) -> list[Optional[int]]:
    """Isomorphism type of Z^n / (column span of ``relations``), 2-locally.

    ``relations`` is n_gens x n_rels.  Returns one entry per nontrivial
    cyclic summand: an int 2^k, or None for a free Z_2 summand.
    """
    if n_gens == 0:
        return []
    n_rels = len(relations[0]) if relations else 0
    if n_rels == 0:
        return [None] * n_gens
    diag = smith_normal_form(relations).diagonal
    torsion = invariant_factors_2local(diag)
    return sorted(torsion) + [None] * (n_gens - len(diag))


def order_label(order: Optional[int]) -> str:
    return "Z2" if order is None else str(order)


def iso_type(orders: Sequence[Optional[int]]) -> tuple:
    """Canonical hashable isomorphism type: (free rank, sorted torsion orders)."""
    free = sum(1 for o in orders if o is None)
    return (free, tuple(sorted(o for o in orders if o is not None)))


def integer_kernel(a: Matrix, n_cols: int) -> list[list[int]]:
    """Z-basis of {x in Z^n : a x = 0}."""
    if not a:
        return [[1 if i == j else 0 for j in range(n_cols)] for i in range(n_cols)]
    sf = smith_normal_form(a)
    r = len(sf.diagonal)
    # columns r.. of V span the kernel
    return [[sf.V[i][j] for i in range(n_cols)] for j in range(r, n_cols)]


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> Matrix:
    """A basis (as columns, dim x k) of the lattice spanned by ``vectors``."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return [[] for _ in range(dim)]
    a = transpose(vecs)
    sf = smith_normal_form(a)
    # span(a) = U^-1 span(D): columns k of U^-1 scaled by d_k
    out = [[sf.U_inv[i][k] * d for k, d in enumerate(sf.diagonal)] for i in range(dim)]
    return out


def solve_in_lattice(basis_cols: Matrix, x: Sequence[int]) -> Optional[list[int]]:
    """Integer c with basis_cols @ c == x, or None if x is not in the lattice.

    ``basis_cols`` is dim x k with linearly independent columns.
    """
    k = len(basis_cols[0]) if basis_cols else 0
    if k == 0:
        return [] if not any(x) else None
    sf = smith_normal_form(basis_cols)
    ux = matvec(sf.U, x)
    y = []
    for i, ui in enumerate(ux):
        if i < len(sf.diagonal):
            if ui % sf.diagonal[i]:
                return None
            y.append(ui // sf.diagonal[i])
        elif ui:
            return None
    y += [0] * (k - len(y))
    return matvec(sf.V, y)


# --- F2 linear algebra on int bitsets -------------------------------------


def f2_reduce(vec: int, pivots: dict[int, int]) -> int:
    """Reduce ``vec`` against an echelon basis {pivot bit: row}."""
    while vec:
        top = vec.bit_length() - 1
        row = pivots.get(top)
        if row is None:
            return vec
        vec ^= row
    return vec


def f2_insert(vec: int, pivots: dict[int, int]) -> bool:
    """Add ``vec`` to the echelon basis; False if it was already in the span."""
    vec = f2_reduce(vec, pivots)
    if not vec:
        return False
    pivots[vec.bit_length() - 1] = vec
    return True


def f2_kernel(columns: Sequence[int], n: int) -> list[int]:
    """Kernel of the F2 map sending basis vector e_j to ``columns[j]``.

    Returns bitsets over range(n) (n == len(columns)).
    """
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for j in range(n):
        vec, combo = columns[j], 1 << j
        while vec:
            top = vec.bit_length() - 1
            if top not in pivots:
                break
            pv, pc = pivots[top]
            vec ^= pv
            combo ^= pc
        if vec:
            pivots[vec.bit_length() - 1] = (vec, combo)
        else:
            kernel.append(combo)
    return kernel


def bits(vec: int) -> list[int]:
    out = []
    i = 0
    while vec:
        if vec & 1:
            out.append(i)
        vec >>= 1
        i += 1
    return out


@dataclass
class AbelianGroup:
    """Z^n / (column span of relations) with named generators."""

    names: list[str]
    relations: Matrix = field(default_factory=list)

    def orders(self) -> list[Optional[int]]:
        return cokernel_orders(self.relations, len(self.names))


# --- sparse presentations --------------------------------------------------


@dataclass
class ReducedPresentation:
    """Result of eliminating unit pivots from a sparse presentation.

    ``substitution[r]`` expresses an eliminated generator r as a sparse
    combination of the others; ``rows`` are the surviving generators and
    ``smith`` the SNF of the residual (all-even part) relation matrix.
    """

    rows: list[int]
    substitution: dict[int, dict[int, int]]
    residual: Matrix
    smith: Optional[SmithForm]

    def orders(self) -> list[Optional[int]]:
        n = len(self.rows)
        if n == 0:
            return []
        if self.smith is None:
            return [None] * n
        torsion = invariant_factors_2local(self.smith.diagonal)
        return sorted(torsion) + [None] * (n - len(self.smith.diagonal))

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        """Rewrite a combination of original generators in the surviving ones."""
        out: dict[int, int] = {}
        stack = list(vec.items())
        while stack:
            r, c = stack.pop()
            sub = self.substitution.get(r)
            if sub is None:
                out[r] = out.get(r, 0) + c
            else:
                stack.extend((r2, c * c2) for r2, c2 in sub.items())
        return {r: c for r, c in out.items() if c}

    def coordinates(self, vec: dict[int, int]) -> list[tuple[int, Optional[int]]]:
        """(coefficient, order) on the cyclic summands, in SNF order
        (summands with unit invariant factor are dropped)."""
        red = self.reduce(vec)
        pos = {r: i for i, r in enumerate(self.rows)}
        x = [0] * len(self.rows)
        for r, c in red.items():
            x[pos[r]] = c
        if self.smith is None:
            return [(c, None) for c in x]
        ux = matvec(self.smith.U, x)
        out = []
        diag = self.smith.diagonal
        for i, c in enumerate(ux):
            d = diag[i] if i < len(diag) else 0
            if d:
                k = two_adic_valuation(d)
                if k == 0:
                    continue
                out.append((c % (2 ** k), 2 ** k))
            else:
                out.append((c, None))
        return out


def reduce_presentation(n_gens: int, relations: list[dict[int, int]]) -> ReducedPresentation:
    """Z_(2)-module Z^n / span(relations), with sparse relations {row: coeff}.

    Unit (+-1) pivots are eliminated first, shortest relations first; the
    remainder goes through the dense Smith normal form.
    """
    cols = [dict(c) for c in relations if c]
    alive = set(range(n_gens))
    substitution: dict[int, dict[int, int]] = {}
    # row -> set of column indices containing it
    occurs: dict[int, set[int]] = {}
    for j, c in enumerate(cols):
        for r in c:
            occurs.setdefault(r, set()).add(j)
    live_cols = set(range(len(cols)))
    while True:
        best = None
        for j in live_cols:
            c = cols[j]
            for r, v in c.items():
                if v in (1, -1):
                    cost = (len(c) - 1) * (len(occurs.get(r, ())) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, j, r)
                    break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, j, r = best
        piv = cols[j]
        p = piv[r]
        # r = -(1/p) * sum of the others
        sub = {r2: -v * p for r2, v in piv.items() if r2 != r}
        substitution[r] = sub
        live_cols.discard(j)
        for r2 in piv:
            occurs[r2].discard(j)
        for j2 in list(occurs.get(r, ())):
            c2 = cols[j2]
            k = c2.pop(r)
            for r2, v in sub.items():
                nv = c2.get(r2, 0) + k * v
                if nv:
                    if r2 not in c2:
                        occurs.setdefault(r2, set()).add(j2)
                    c2[r2] = nv
                elif r2 in c2:
                    del c2[r2]
                    occurs[r2].discard(j2)
            if not c2:
                live_cols.discard(j2)
        occurs.pop(r, None)
        alive.discard(r)
    rows = sorted(alive)
    pos = {r: i for i, r in enumerate(rows)}
    rest = [cols[j] for j in sorted(live_cols) if cols[j]]
    if not rest or not rows:
        return ReducedPresentation(rows, substitution, [], None)
    dense = [[0] * len(rest) for _ in rows]
    for j, c in enumerate(rest):
        for r, v in c.items():
            dense[pos[r]][j] = v
    return ReducedPresentation(rows, substitution, dense, smith_normal_form(dense))
