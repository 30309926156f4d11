"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Nothing here
ever touches floating point; every routine is Gaussian elimination in some
form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[frac(x) for x in row] for row in rows]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), ZERO) for col in bt])
    return out


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    nz = [(k, x) for k, x in enumerate(v) if x]
    return tuple(sum((row[k] * x for k, x in nz), ZERO) for row in a)


def vecmat(v: Sequence[Fraction], a: Sequence[Sequence[Fraction]]) -> Vector:
    """Row vector times matrix."""
    n = len(a[0]) if a else 0
    out = [ZERO] * n
    for k, x in enumerate(v):
        if x:
            row = a[k]
            for j in range(n):
                if row[j]:
                    out[j] += x * row[j]
    return tuple(out)


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c: Fraction, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def is_zero(a: Iterable[Iterable[Fraction]]) -> bool:
    return all(not x for row in a for x in row)


def rref(a: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  Zero rows are dropped."""
    m = [list(map(frac, row)) for row in a]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        inv = ONE / pr[c]
        if inv != ONE:
            pr = m[r] = [x * inv for x in pr]
        nzc = [j for j in range(c, ncols) if pr[j]]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nzc:
                        row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(a)[1]) if a else 0


def nullspace(a: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column, in canonical form."""
    if ncols is None:
        ncols = len(a[0])
    if not a:
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    r, piv = rref(a)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(r, piv):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def row_space(rows: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Canonical (RREF) basis of the span of ``rows``."""
    if not rows:
        return []
    return [tuple(r) for r in rref(rows)[0]]


def coordinates(basis_rref: Sequence[Sequence[Fraction]], pivots: Sequence[int], v: Sequence[Fraction]) -> Vector | None:
    """Coordinates of ``v`` in an RREF basis, or None if ``v`` is outside the span."""
    coords = tuple(v[p] for p in pivots)
    back = [ZERO] * len(v)
    for c, row in zip(coords, basis_rref):
        if c:
            for j, x in enumerate(row):
                if x:
                    back[j] += c * x
    if any(x != y for x, y in zip(back, v)):
        return None
    return coords


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """One solution of a x = b (free variables set to zero), or None."""
    n = len(a[0])
    aug = [list(row) + [frac(bi)] for row, bi in zip(a, b)]
    r, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(r, piv):
        x[p] = row[n]
    return tuple(x)


def det(a: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(frac, row)) for row in a]
    n = len(m)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return d


def inverse(a: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(a)
    aug = [list(map(frac, row)) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def matpow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


def congruence_signature(form: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia counts of a symmetric rational matrix.

    Symmetric Gaussian elimination: each step is a congruence, so Sylvester's
    law of inertia makes the pivot signs the signature.
    """
    m = [list(map(frac, row)) for row in form]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if m[i][i]), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives diagonal entry 2 m[i][j] != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            p = i
        d = m[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for i in active:
            f = m[i][p] / d
            if f:
                for k in active:
                    m[i][k] -= f * m[p][k]
        for i in active:
            m[i][p] = m[p][i] = ZERO
    return pos, neg, n - pos - neg


def minimal_polynomial(a: Matrix) -> list[Fraction]:
    """Monic minimal polynomial of a square matrix, coefficients lowest degree first."""
    n = len(a)
    powers = [identity(n)]
    flat = [[x for row in powers[0] for x in row]]
    while True:
        nxt = matmul(powers[-1], a)
        v = [x for row in nxt for x in row]
        # solve sum_k c_k flat[k] = v
        cols = transpose(flat)
        sol = solve(cols, v)
        if sol is not None:
            return [-c for c in sol] + [ONE]
        powers.append(nxt)
        flat.append(v)


def poly_eval_matrix(coeffs: Sequence[Fraction], a: Matrix) -> Matrix:
    """Evaluate a polynomial (lowest degree first) at a square matrix (Horner)."""
    n = len(a)
    out = zeros(n)
    for c in reversed(coeffs):
        out = matmul(out, a)
        for i in range(n):
            out[i][i] += c
    return out


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
