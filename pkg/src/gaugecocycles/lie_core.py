"""Finite-dimensional real Lie algebras given by rational structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .errors import DimensionMismatch
from .linalg import ZERO, Matrix, Vector, format_fraction

Structure = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class LieAlgebra:
    """Basis labels and the tensor c with [e_i, e_j] = sum_k c[i][j][k] e_k.

    Construction does not check the Lie axioms; call :func:`validate`.
    """

    labels: tuple[str, ...]
    structure: Structure
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise DimensionMismatch("a Lie algebra needs at least one basis element")
        if len(set(self.labels)) != n:
            raise ValueError(f"duplicate basis labels in {self.labels}")
        if len(self.structure) != n or any(
            len(row) != n or any(len(v) != n for v in row) for row in self.structure
        ):
            raise DimensionMismatch(f"structure tensor is not {n}x{n}x{n}")

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: dict, name: str = "") -> "LieAlgebra":
        """Build from ``{(a, b): {c: coeff}}``; the (b, a) entries are filled by antisymmetry
        unless given explicitly."""
        labels = tuple(labels)
        idx = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        given = set()
        for (a, b), result in brackets.items():
            i, j = idx[a], idx[b]
            given.add((i, j))
            for lab, coeff in result.items():
                c[i][j][idx[lab]] = Fraction(coeff)
        for i, j in list(given):
            if (j, i) not in given:
                c[j][i] = [-x for x in c[i][j]]
        return cls(labels, _freeze(c), name)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def _nonzero(self) -> tuple[tuple[int, int, int, Fraction], ...]:
        return tuple(
            (i, j, k, x)
            for i, row in enumerate(self.structure)
            for j, v in enumerate(row)
            for k, x in enumerate(v)
            if x
        )

    @cached_property
    def _by_left(self) -> tuple[tuple[tuple[int, int, Fraction], ...], ...]:
        out: list[list] = [[] for _ in range(self.dim)]
        for i, j, k, x in self._nonzero:
            out[i].append((j, k, x))
        return tuple(tuple(v) for v in out)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def zero(self) -> Vector:
        return (ZERO,) * self.dim

    def __str__(self):
        return self.name or f"LieAlgebra(dim={self.dim})"


def _freeze(c) -> Structure:
    return tuple(tuple(tuple(Fraction(x) for x in v) for v in row) for row in c)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: str | None = None
    witness: tuple[int, ...] | None = None
    residual: Fraction | None = None

    def __bool__(self):
        return self.ok

    def describe(self, alg: LieAlgebra | None = None) -> str:
        if self.ok:
            return "ok"
        names = self.witness
        if alg is not None and names is not None:
            names = tuple(alg.labels[i] for i in self.witness)
        r = format_fraction(self.residual)
        if self.violation == "antisymmetry":
            a, b, c = names
            return f"antisymmetry fails: [{a}, {b}] + [{b}, {a}] has coefficient {r} on {c}"
        a, b, c, d = names
        return f"jacobi fails for ({a}, {b}, {c}): the cyclic sum has coefficient {r} on {d}"


def validate(alg: LieAlgebra) -> ValidationReport:
    """Exact check of antisymmetry and the Jacobi identity.

    The first violating index tuple (in lexicographic order) is reported.
    """
    n, c = alg.dim, alg.structure
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = c[i][j][k] + c[j][i][k]
                if s:
                    return ValidationReport(False, "antisymmetry", (i, j, k), s)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = ZERO
                    for m in range(n):
                        s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
                    if s:
                        return ValidationReport(False, "jacobi", (i, j, k, l), s)
    return ValidationReport(True)


def _check_len(alg: LieAlgebra, *vs: Sequence) -> None:
    for v in vs:
        if len(v) != alg.dim:
            raise DimensionMismatch(f"expected a vector of length {alg.dim}, got {len(v)}")


def bracket(alg: LieAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    _check_len(alg, x, y)
    out = [ZERO] * alg.dim
    by_left = alg._by_left
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, k, c in by_left[i]:
            yj = y[j]
            if yj:
                out[k] += xi * yj * c
    return tuple(out)


def adjoint(alg: LieAlgebra, x: Sequence[Fraction]) -> Matrix:
    """Matrix of y -> [x, y]; column j is [x, e_j]."""
    _check_len(alg, x)
    n = alg.dim
    m = linalg.zeros(n)
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, k, c in alg._by_left[i]:
            m[k][j] += xi * c
    return m


def adjoint_basis(alg: LieAlgebra) -> list[Matrix]:
    return [adjoint(alg, alg.basis_vector(i)) for i in range(alg.dim)]


def killing_form(alg: LieAlgebra) -> Matrix:
    """B[i][j] = tr(ad e_i ad e_j)."""
    ads = adjoint_basis(alg)
    n = alg.dim
    b = linalg.zeros(n)
    for i in range(n):
        for j in range(i, n):
            # tr(XY) = sum_{a,b} X[a][b] Y[b][a]
            x, y = ads[i], ads[j]
            t = sum((x[a][c] * y[c][a] for a in range(n) for c in range(n) if x[a][c]), ZERO)
            b[i][j] = b[j][i] = t
    return b


def form_value(form: Sequence[Sequence[Fraction]], x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    s = ZERO
    for i, xi in enumerate(x):
        if xi:
            row = form[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    s += xi * row[j] * yj
    return s


def is_semisimple(alg: LieAlgebra) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    return linalg.det(killing_form(alg)) != 0


def signature(form: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    return linalg.congruence_signature(form)


def is_automorphism(alg: LieAlgebra, phi: Sequence[Sequence[Fraction]]) -> bool:
    """phi[x, y] = [phi x, phi y] on all basis pairs, and phi invertible."""
    n = alg.dim
    if len(phi) != n or any(len(r) != n for r in phi):
        return False
    if linalg.det(phi) == 0:
        return False
    cols = [tuple(phi[r][j] for r in range(n)) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = linalg.matvec(phi, alg.structure[i][j])
            if lhs != bracket(alg, cols[i], cols[j]):
                return False
    return True


def change_basis(alg: LieAlgebra, p: Sequence[Sequence[Fraction]], labels: Sequence[str] | None = None) -> LieAlgebra:
    """The same algebra in the basis f_j = sum_i p[i][j] e_i (columns of p)."""
    n = alg.dim
    pinv = linalg.inverse(p)
    cols = [tuple(p[r][j] for r in range(n)) for j in range(n)]
    c = [[linalg.matvec(pinv, bracket(alg, cols[i], cols[j])) for j in range(n)] for i in range(n)]
    return LieAlgebra(tuple(labels or alg.labels), _freeze(c), alg.name)
