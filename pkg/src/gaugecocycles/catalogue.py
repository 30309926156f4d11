"""Bundled Lie algebras with named automorphisms.

so(4) is generated from 4x4 skew matrices so that its structure constants
and the conjugation by diag(-1, 1, 1, 1) come from the matrix model rather
than from a hand-typed table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .lie_core import LieAlgebra, _freeze
from .loop_bundle import TwistAutomorphism


@dataclass(frozen=True)
class AlgebraData:
    """An algebra together with its declared automorphisms (the content of an algebra file)."""

    algebra: LieAlgebra
    automorphisms: dict[str, TwistAutomorphism] = field(default_factory=dict)

    def twist(self, name: str) -> TwistAutomorphism:
        from .errors import UnknownTwist

        if name in self.automorphisms:
            return self.automorphisms[name]
        if name == "identity":
            return TwistAutomorphism.identity(self.algebra.dim)
        raise UnknownTwist(f"no automorphism named {name!r}; declared: {sorted(self.automorphisms) or 'none'}")

    @property
    def twist_names(self) -> list[str]:
        names = list(self.automorphisms)
        return names if "identity" in names else ["identity"] + names


def _diag_twist(signs, name) -> TwistAutomorphism:
    n = len(signs)
    return TwistAutomorphism.from_matrix(
        [[Fraction(signs[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)], 2, name
    )


def su2() -> AlgebraData:
    alg = LieAlgebra.from_brackets(
        ("e1", "e2", "e3"),
        {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1}, ("e3", "e1"): {"e2": 1}},
        "su2",
    )
    # rotation by pi about e3 (inner)
    return AlgebraData(alg, {"rot": _diag_twist((-1, -1, 1), "rot")})


def sl2r() -> AlgebraData:
    alg = LieAlgebra.from_brackets(
        ("h", "e", "f"),
        {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
        "sl2r",
    )
    # conjugation by diag(1, -1) (inner)
    return AlgebraData(alg, {"flip": _diag_twist((1, -1, -1), "flip")})


def so4() -> AlgebraData:
    pairs = list(combinations(range(4), 2))
    labels = tuple(f"L{i + 1}{j + 1}" for i, j in pairs)

    def gen(i, j):
        m = linalg.zeros(4)
        m[i][j], m[j][i] = Fraction(1), Fraction(-1)
        return m

    mats = [gen(i, j) for i, j in pairs]

    def coords(m):
        return [m[i][j] for i, j in pairs]

    c = []
    for a in mats:
        row = []
        for b in mats:
            comm = linalg.sub(linalg.matmul(a, b), linalg.matmul(b, a))
            row.append(coords(comm))
        c.append(row)
    alg = LieAlgebra(labels, _freeze(c), "so4")
    t = [[Fraction(-1 if (i == j == 0) else int(i == j)) for j in range(4)] for i in range(4)]
    # Ad(T) X = T X T^{-1}; column k is the image of basis element k
    swap_cols = [coords(linalg.matmul(linalg.matmul(t, m), t)) for m in mats]
    swap = TwistAutomorphism.from_matrix(linalg.transpose(swap_cols), 2, "swap")
    return AlgebraData(alg, {"swap": swap})


def sl2c() -> AlgebraData:
    """sl(2, C) as a 6-dimensional real algebra with basis h, e, f, ih, ie, if."""
    base = {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}}
    labels = ("h", "e", "f", "ih", "ie", "if")
    br: dict = {}
    for (a, b), res in base.items():
        br[(a, b)] = dict(res)
        br[("i" + a, b)] = {"i" + k: v for k, v in res.items()}
        br[(a, "i" + b)] = {"i" + k: v for k, v in res.items()}
        br[("i" + a, "i" + b)] = {k: -v for k, v in res.items()}
    alg = LieAlgebra.from_brackets(labels, br, "sl2c")
    conj = _diag_twist((1, 1, 1, -1, -1, -1), "conj")
    return AlgebraData(alg, {"conj": conj})


def direct_sum(*parts: LieAlgebra, name: str = "", labels=None) -> LieAlgebra:
    n = sum(p.dim for p in parts)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    off = 0
    for p in parts:
        for i in range(p.dim):
            for j in range(p.dim):
                for k in range(p.dim):
                    c[off + i][off + j][off + k] = p.structure[i][j][k]
        off += p.dim
    labels = labels or tuple(lab for p in parts for lab in p.labels)
    return LieAlgebra(tuple(labels), _freeze(c), name)


def su2_sl2r() -> AlgebraData:
    return AlgebraData(direct_sum(su2().algebra, sl2r().algebra, name="su2_sl2r"), {})


def su2_su2_sl2r() -> AlgebraData:
    s, r = su2().algebra, sl2r().algebra
    labels = ("a1", "a2", "a3", "b1", "b2", "b3", "h", "e", "f")
    alg = direct_sum(s, s, r, name="su2_su2_sl2r", labels=labels)
    n = alg.dim
    perm = [3, 4, 5, 0, 1, 2, 6, 7, 8]
    m = [[Fraction(int(perm[j] == i)) for j in range(n)] for i in range(n)]
    return AlgebraData(alg, {"swap": TwistAutomorphism.from_matrix(m, 2, "swap")})


def heisenberg() -> AlgebraData:
    alg = LieAlgebra.from_brackets(("x", "y", "z"), {("x", "y"): {"z": 1}}, "heisenberg")
    return AlgebraData(alg, {})


CATALOGUE = {
    "su2": su2,
    "sl2r": sl2r,
    "so4": so4,
    "sl2c": sl2c,
    "su2_sl2r": su2_sl2r,
    "su2_su2_sl2r": su2_su2_sl2r,
    "heisenberg": heisenberg,
}

SEMISIMPLE = ("su2", "sl2r", "so4", "sl2c", "su2_sl2r", "su2_su2_sl2r")


def load(name: str) -> AlgebraData:
    try:
        return CATALOGUE[name]()
    except KeyError:
        raise KeyError(f"unknown catalogue algebra {name!r}; known: {sorted(CATALOGUE)}") from None
