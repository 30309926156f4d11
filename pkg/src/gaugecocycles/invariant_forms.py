"""Invariant symmetric bilinear forms and the universal form.

The universal invariant form takes values in V = S^2(k) / der(k).S^2(k).  We
never build that quotient: V* is the space of invariant symmetric forms, so
once a basis lambda_1..lambda_m of invariant forms is fixed, the point
kappa(x, y) of V has coordinates (lambda_1(x, y), ..., lambda_m(x, y)).

For semisimple input the basis is adapted to the simple ideals, in the
order produced by :func:`structure.minimal_ideals`:

* absolutely simple ideal: its Killing form (extended by zero);
* ideal with complex structure J: the pair (Re, Im) of its complex Killing
  form, i.e. (1/2) B(x, y) and -(1/2) B(Jx, y) with B the real Killing form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DimensionMismatch, NotAnAutomorphism
from .lie_core import LieAlgebra, form_value, is_automorphism, is_semisimple, killing_form
from .linalg import ZERO, Matrix, Vector
from .structure import IdealDecomposition, complex_structure_map, minimal_ideals

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class InvariantFormSpace:
    forms: tuple[tuple[Vector, ...], ...]
    labels: tuple[str, ...]
    # ideal index for each form; None when the algebra is not semisimple
    ideal_index: tuple[int | None, ...]
    semisimple: bool

    @property
    def m(self) -> int:
        return len(self.forms)

    def __len__(self):
        return len(self.forms)


def invariance_system(alg: LieAlgebra) -> tuple[list[list[Fraction]], list[tuple[int, int]]]:
    """Rows of the linear system B([z,x],y) + B(x,[z,y]) = 0 on symmetric B.

    Unknowns are the upper-triangular entries, listed in the returned order.
    """
    n = alg.dim
    unknowns = [(i, j) for i in range(n) for j in range(i, n)]
    col = {u: k for k, u in enumerate(unknowns)}

    def var(i, j):
        return col[(i, j) if i <= j else (j, i)]

    c = alg.structure
    rows = []
    for z in range(n):
        for x in range(n):
            for y in range(x, n):
                row = [ZERO] * len(unknowns)
                for k in range(n):
                    if c[z][x][k]:
                        row[var(k, y)] += c[z][x][k]
                    if c[z][y][k]:
                        row[var(x, k)] += c[z][y][k]
                if any(row):
                    rows.append(row)
    return rows, unknowns


def _kernel_forms(alg: LieAlgebra) -> list[Matrix]:
    rows, unknowns = invariance_system(alg)
    kernel = linalg.nullspace(rows, len(unknowns)) if rows else linalg.nullspace([[ZERO] * len(unknowns)])
    n = alg.dim
    forms = []
    for v in kernel:
        b = linalg.zeros(n)
        for (i, j), x in zip(unknowns, v):
            b[i][j] = b[j][i] = x
        forms.append(b)
    return forms


def _vec(form: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    return [x for row in form for x in row]


def _freeze(form) -> tuple[Vector, ...]:
    return tuple(tuple(row) for row in form)


def invariant_form_space(alg: LieAlgebra, decomp: IdealDecomposition | None = None) -> InvariantFormSpace:
    """Basis of the ad-invariant symmetric bilinear forms on ``alg``.

    Semisimple algebras get the ideal-adapted basis described in the module
    docstring, checked against the kernel of :func:`invariance_system`.
    Anything else gets the RREF basis of that kernel and is labelled as not
    semisimple (there der(k) may be larger than ad(k)).
    """
    kernel = _kernel_forms(alg)
    if not is_semisimple(alg):
        rows = linalg.row_space([_vec(f) for f in kernel])
        n = alg.dim
        forms = tuple(_freeze([list(r[i * n:(i + 1) * n]) for i in range(n)]) for r in rows)
        return InvariantFormSpace(forms, tuple(f"form{i + 1}" for i in range(len(forms))), (None,) * len(forms), False)

    if decomp is None:
        decomp = minimal_ideals(alg)
    kill = killing_form(alg)
    forms, labels, owner = [], [], []
    for i, ideal in enumerate(decomp.ideals):
        p = decomp.projections[i]
        k_i = linalg.matmul(linalg.transpose(p), linalg.matmul(kill, p))
        if not ideal.complex_structure:
            forms.append(k_i)
            labels.append(f"killing[{i + 1}]")
            owner.append(i)
        else:
            j = complex_structure_map(alg, decomp, i)
            im = linalg.scale(-HALF, linalg.matmul(linalg.transpose(j), linalg.matmul(kill, p)))
            forms.extend([linalg.scale(HALF, k_i), im])
            labels.extend([f"re_killing[{i + 1}]", f"im_killing[{i + 1}]"])
            owner.extend([i, i])

    # the adapted forms must be a basis of the invariant-forms kernel
    adapted = [_vec(f) for f in forms]
    if len(adapted) != len(kernel) or linalg.rank(adapted) != len(kernel) or linalg.rank(adapted + [_vec(f) for f in kernel]) != len(kernel):
        raise AssertionError("ideal-adapted invariant forms do not span the invariant-forms space")
    return InvariantFormSpace(tuple(_freeze(f) for f in forms), tuple(labels), tuple(owner), True)


def is_invariant(alg: LieAlgebra, form: Sequence[Sequence[Fraction]]) -> bool:
    rows, unknowns = invariance_system(alg)
    v = [form[i][j] for i, j in unknowns]
    return all(form[i][j] == form[j][i] for i in range(alg.dim) for j in range(alg.dim)) and all(
        sum((a * b for a, b in zip(row, v) if a), ZERO) == 0 for row in rows
    )


def universal_form(alg: LieAlgebra, vspace: InvariantFormSpace, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    """Coordinates of kappa(x, y) in V."""
    if len(x) != alg.dim or len(y) != alg.dim:
        raise DimensionMismatch(f"expected vectors of length {alg.dim}")
    return tuple(form_value(f, x, y) for f in vspace.forms)


def kappa_lambda(vspace: InvariantFormSpace, mu: Sequence[Fraction]) -> Matrix:
    if len(mu) != vspace.m:
        raise DimensionMismatch(f"covector must have length {vspace.m}")
    n = len(vspace.forms[0]) if vspace.forms else 0
    out = linalg.zeros(n)
    for a, f in zip(mu, vspace.forms):
        if a:
            for i in range(n):
                for j in range(n):
                    if f[i][j]:
                        out[i][j] += a * f[i][j]
    return out


def automorphism_action_on_V(alg: LieAlgebra, vspace: InvariantFormSpace, phi: Sequence[Sequence[Fraction]]) -> Matrix:
    """Matrix M of the induced action on V-coordinates.

    Defined by lambda_a(phi x, phi y) = sum_b M[a][b] lambda_b(x, y), so that
    kappa(phi x, phi y) = M kappa(x, y) and M(phi psi) = M(phi) M(psi).
    """
    if not is_automorphism(alg, phi):
        raise NotAnAutomorphism("matrix does not preserve the bracket")
    basis_cols = linalg.transpose([_vec(f) for f in vspace.forms])
    out = []
    for f in vspace.forms:
        pulled = linalg.matmul(linalg.transpose(phi), linalg.matmul(f, phi))
        coeffs = linalg.solve(basis_cols, _vec(pulled))
        if coeffs is None:
            raise NotAnAutomorphism("pulled-back form left the invariant-forms space")
        out.append(list(coeffs))
    return out


def invariant_covectors(action: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Basis of {mu : mu M = mu} for a square action matrix M."""
    m = len(action)
    # mu (M - I) = 0  <=>  (M - I)^T mu^T = 0
    rows = [[action[b][a] - (1 if a == b else 0) for b in range(m)] for a in range(m)]
    return linalg.nullspace(rows, m) if m else []
