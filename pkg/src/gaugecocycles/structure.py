"""Splitting a semisimple Lie algebra into its simple ideals.

The ideals are recovered from the centroid: a generic centroid element acts
on each simple ideal through its centroid field (a rational scalar for an
absolutely simple ideal, ``a + bJ`` for one with a complex structure), so
the kernels of the irreducible factors of its minimal polynomial are
exactly the simple ideals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from . import linalg
from .errors import IrrationalSplit, NotSemisimple
from .lie_core import LieAlgebra, adjoint_basis, bracket, is_semisimple, killing_form, signature, _freeze
from .linalg import ZERO, Matrix, Vector

MAX_ATTEMPTS = 50


@dataclass(frozen=True)
class Ideal:
    """A subspace of the ambient algebra, stored as an RREF row basis."""

    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]
    signature: tuple[int, int, int] = (0, 0, 0)
    centroid_dim: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def compact(self) -> bool:
        return self.signature == (0, self.dim, 0)

    @property
    def complex_structure(self) -> bool:
        return self.centroid_dim == 2

    @property
    def invariants(self) -> tuple:
        return (self.dim, self.signature, self.centroid_dim)

    def coordinates(self, v: Sequence[Fraction]) -> Vector | None:
        return linalg.coordinates(self.basis, self.pivots, v)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coordinates(v) is not None

    def embed(self, coords: Sequence[Fraction]) -> Vector:
        n = len(self.basis[0])
        out = [ZERO] * n
        for c, row in zip(coords, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] += c * x
        return tuple(out)


@dataclass(frozen=True)
class IdealDecomposition:
    ideals: tuple[Ideal, ...]
    projections: tuple[Matrix, ...] = field(repr=False, compare=False)
    groups: tuple[tuple[int, ...], ...] = ()
    # groups of size > 1 whose members were not shown isomorphic by an explicit map
    unverified_groups: tuple[tuple[int, ...], ...] = ()

    def __len__(self):
        return len(self.ideals)

    def ideal_of(self, v: Sequence[Fraction]) -> int | None:
        for i, ideal in enumerate(self.ideals):
            if ideal.contains(v):
                return i
        return None


def centroid_basis(alg: LieAlgebra) -> list[Matrix]:
    """Basis of {c : c ad(x) = ad(x) c for all x}, by an exact kernel computation."""
    if not is_semisimple(alg):
        raise NotSemisimple(f"{alg} is not semisimple")
    return _centroid(alg)


def _centroid(alg: LieAlgebra) -> list[Matrix]:
    n = alg.dim
    rows = []
    # unknown c[p][q] sits at column p*n + q
    for ad in adjoint_basis(alg):
        for r in range(n):
            for s in range(n):
                # (c ad)[r][s] - (ad c)[r][s]
                row = [ZERO] * (n * n)
                for k in range(n):
                    if ad[k][s]:
                        row[r * n + k] += ad[k][s]
                    if ad[r][k]:
                        row[k * n + s] -= ad[r][k]
                if any(row):
                    rows.append(row)
    kernel = linalg.nullspace(rows, n * n) if rows else linalg.nullspace([[ZERO] * (n * n)])
    return [[list(v[p * n:(p + 1) * n]) for p in range(n)] for v in kernel]


def subalgebra(alg: LieAlgebra, basis: Sequence[Vector], name: str = "") -> LieAlgebra:
    """Structure constants of a subalgebra spanned by an RREF row basis."""
    rb, piv = linalg.rref(basis)
    if len(rb) != len(basis):
        raise ValueError("subalgebra basis is linearly dependent")
    m = len(basis)
    c = []
    for i in range(m):
        row = []
        for j in range(m):
            coords = linalg.coordinates(rb, piv, bracket(alg, rb[i], rb[j]))
            if coords is None:
                raise ValueError("span is not closed under the bracket")
            row.append(coords)
        c.append(row)
    labels = tuple(f"{name or 'k'}{i + 1}" for i in range(m))
    return LieAlgebra(labels, _freeze(c), name)


def _factor(coeffs: Sequence[Fraction]) -> list[list[Fraction]]:
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain=sympy.QQ)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        if mult != 1:
            raise ValueError("minimal polynomial is not square-free")
        out.append([Fraction(int(a.p), int(a.q)) for a in reversed(f.monic().all_coeffs())])
    return out


def _random_centroid_element(basis: Sequence[Matrix], rng: random.Random) -> Matrix:
    n = len(basis[0])
    out = linalg.zeros(n)
    for b in basis:
        a = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        for i in range(n):
            for j in range(n):
                if b[i][j]:
                    out[i][j] += a * b[i][j]
    return out


def minimal_ideals(alg: LieAlgebra, seed: int = 0, automorphisms: Sequence[Matrix] = ()) -> IdealDecomposition:
    """Decompose a semisimple algebra into its simple ideals.

    ``automorphisms`` are only used to certify isomorphisms inside isotypic
    groups (an automorphism carrying one ideal onto another).
    """
    if not is_semisimple(alg):
        raise NotSemisimple(f"{alg} is not semisimple")
    cbasis = _centroid(alg)
    r = len(cbasis)
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        c = _random_centroid_element(cbasis, rng) if r > 1 else cbasis[0]
        mp = linalg.minimal_polynomial(c)
        if len(mp) - 1 == r:
            break
    else:
        raise RuntimeError(f"no generic centroid element found in {MAX_ATTEMPTS} attempts")

    spaces = []
    for f in _factor(mp):
        deg = len(f) - 1
        if deg == 2:
            # x^2 + p x + q is irreducible; real roots mean two ideals over R
            q, p = f[0], f[1]
            if p * p - 4 * q > 0:
                raise IrrationalSplit(f"factor with real irrational roots: {f}")
        elif deg > 2:
            raise IrrationalSplit(f"irreducible factor of degree {deg}")
        kernel = linalg.nullspace(linalg.poly_eval_matrix(f, c), alg.dim)
        spaces.append(linalg.row_space(kernel))

    kill = killing_form(alg)
    ideals = []
    for basis in spaces:
        _, piv = linalg.rref(basis)
        gram = [[_pair(kill, u, v) for v in basis] for u in basis]
        sub = subalgebra(alg, basis)
        ideals.append(Ideal(tuple(basis), tuple(piv), signature(gram), len(_centroid(sub))))
    ideals.sort(key=lambda I: (I.dim, I.pivots, [x for row in I.basis for x in row]))
    projections = tuple(_projections(alg, ideals))
    groups = isotypic_components(ideals)
    unverified = tuple(g for g in groups if len(g) > 1 and not _certified(alg, ideals, g, automorphisms))
    return IdealDecomposition(tuple(ideals), projections, groups, unverified)


def _pair(form: Matrix, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((u[i] * form[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j]), ZERO)


def _projections(alg: LieAlgebra, ideals: Sequence[Ideal]) -> list[Matrix]:
    """Projection matrices onto each ideal along the others."""
    n = alg.dim
    cols = [v for I in ideals for v in I.basis]
    basis_matrix = linalg.transpose(cols)  # columns are the ideal vectors
    inv = linalg.inverse(basis_matrix)
    out = []
    start = 0
    for I in ideals:
        sel = range(start, start + I.dim)
        # P = B diag(sel) B^{-1}
        p = linalg.zeros(n)
        for k in sel:
            for i in range(n):
                if basis_matrix[i][k]:
                    for j in range(n):
                        if inv[k][j]:
                            p[i][j] += basis_matrix[i][k] * inv[k][j]
        out.append(p)
        start += I.dim
    return out


def _certified(alg, ideals, group, automorphisms) -> bool:
    reach = {group[0]}
    changed = True
    while changed:
        changed = False
        for phi in automorphisms:
            for i in list(reach):
                j = image_ideal(phi, ideals, i)
                if j is not None and j in group and j not in reach:
                    reach.add(j)
                    changed = True
    return reach == set(group)


def image_ideal(phi: Matrix, ideals: Sequence[Ideal], i: int) -> int | None:
    """Index of the ideal phi(ideals[i]), if phi maps it onto one of the listed ideals."""
    image = [linalg.matvec(phi, v) for v in ideals[i].basis]
    for j, J in enumerate(ideals):
        if J.dim == len(image) and all(J.contains(v) for v in image):
            return j
    return None


def is_compact_ideal(alg: LieAlgebra, ideal: Ideal) -> bool:
    kill = killing_form(alg)
    gram = [[_pair(kill, u, v) for v in ideal.basis] for u in ideal.basis]
    return signature(gram) == (0, ideal.dim, 0)


def has_complex_structure(alg: LieAlgebra, ideal: Ideal) -> bool:
    return len(_centroid(subalgebra(alg, ideal.basis))) == 2


def isotypic_components(decomp) -> tuple[tuple[int, ...], ...]:
    """Group ideals by (dim, Killing signature, centroid dim), in first-occurrence order."""
    ideals = decomp.ideals if isinstance(decomp, IdealDecomposition) else decomp
    groups: dict[tuple, list[int]] = {}
    for i, I in enumerate(ideals):
        groups.setdefault(I.invariants, []).append(i)
    return tuple(tuple(g) for g in groups.values())


def split_compact_noncompact(alg: LieAlgebra, decomp: IdealDecomposition | None = None) -> tuple[list[Ideal], list[Ideal]]:
    if decomp is None:
        decomp = minimal_ideals(alg)
    compact = [I for I in decomp.ideals if I.compact]
    noncompact = [I for I in decomp.ideals if not I.compact]
    return compact, noncompact


def complex_structure_map(alg: LieAlgebra, decomp: IdealDecomposition, i: int) -> Matrix | None:
    """Centroid element J of ideal ``i`` extended by zero on the other ideals.

    J is rational with J^2 = -q (q > 0) on the ideal, normalised to J^2 = -1
    when q is a rational square; its sign makes the first nonzero entry of the
    ideal-coordinate matrix positive.  None for absolutely simple ideals.
    """
    ideal = decomp.ideals[i]
    sub = subalgebra(alg, ideal.basis)
    cen = _centroid(sub)
    if len(cen) != 2:
        return None
    m = sub.dim
    c = next(b for b in cen if any(b[r][s] != (b[0][0] if r == s else ZERO) for r in range(m) for s in range(m)))
    mp = linalg.minimal_polynomial(c)
    q, p = mp[0], mp[1]
    # c = a + bJ with a = -p/2, so c - a squares to -(q - p^2/4)
    a = -p / 2
    jp = [[c[r][s] - (a if r == s else ZERO) for s in range(m)] for r in range(m)]
    root = _rational_sqrt(q - p * p / 4)
    if root is not None:
        jp = linalg.scale(1 / root, jp)
    if next(x for row in jp for x in row if x) < 0:
        jp = linalg.scale(Fraction(-1), jp)
    # ambient map: read ideal coordinates at the pivots, apply jp, embed
    basis = linalg.transpose(list(ideal.basis))
    bj = linalg.matmul(basis, jp)
    read = linalg.zeros(m, alg.dim)
    for col, piv in enumerate(ideal.pivots):
        read[col][piv] = Fraction(1)
    return linalg.matmul(linalg.matmul(bj, read), decomp.projections[i])


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    from math import isqrt

    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None
