"""Twisted loop algebras over the circle.

A section of the Lie algebra bundle over the circle with monodromy psi is
a loop xi: R -> k with xi(t + period) = psi^{-1} xi(t).  We restrict to
trigonometric polynomials, so every bracket, derivative and connection is
an exact finite computation.  For a twist of order at most two the
condition is modewise: a coefficient at frequency nu must be an
eigenvector of psi^{-1} with eigenvalue (-1)^(2 nu period).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .errors import NotAnAutomorphism, NotSemisimple, TwistMismatch
from .lie_core import LieAlgebra, bracket, is_automorphism, is_semisimple
from .linalg import ZERO, Matrix, Vector
from .structure import IdealDecomposition, image_ideal, minimal_ideals, subalgebra
from .trig import COS, SIN, TrigPoly, sum_polys


@dataclass(frozen=True)
class TwistAutomorphism:
    phi: tuple[Vector, ...]
    order: int
    name: str = field(default="", compare=False)

    @classmethod
    def identity(cls, dim: int) -> "TwistAutomorphism":
        return cls(tuple(tuple(linalg.ONE if i == j else ZERO for j in range(dim)) for i in range(dim)), 1, "identity")

    @classmethod
    def from_matrix(cls, phi, order: int, name: str = "") -> "TwistAutomorphism":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in phi), order, name)

    @property
    def dim(self) -> int:
        return len(self.phi)

    @cached_property
    def inverse(self) -> Matrix:
        return linalg.inverse(self.phi)

    def check(self, alg: LieAlgebra) -> None:
        """Raise NotAnAutomorphism unless phi is an automorphism with phi^order = 1, order <= 2."""
        if self.order not in (1, 2):
            raise NotAnAutomorphism(f"twist {self.name!r}: only orders 1 and 2 are supported, got {self.order}")
        if not is_automorphism(alg, self.phi):
            raise NotAnAutomorphism(f"twist {self.name!r} does not preserve the bracket")
        if linalg.matpow([list(r) for r in self.phi], self.order) != linalg.identity(alg.dim):
            raise NotAnAutomorphism(f"twist {self.name!r} does not have order dividing {self.order}")


class SectionSpace:
    """Trig-polynomial sections v with v(t + period) = monodromy_inverse . v(t)."""

    def __init__(self, width: int, monodromy_inverse: Sequence[Sequence[Fraction]], period: int = 1):
        self.width = width
        self.monodromy_inverse = [list(map(Fraction, r)) for r in monodromy_inverse]
        self.period = period

    def sign(self, nu: Fraction) -> int | None:
        """cos/sin at frequency nu pick up this sign under t -> t + period (None if they mix)."""
        twice = 2 * Fraction(nu) * self.period
        if twice.denominator != 1:
            return None
        return -1 if twice.numerator % 2 else 1

    def mode_ok(self, nu: Fraction, v: Sequence[Fraction]) -> bool:
        s = self.sign(nu)
        if s is None:
            return not any(v)
        mv = linalg.matvec(self.monodromy_inverse, v)
        return all(a == s * b for a, b in zip(mv, v))

    def compatible(self, poly: TrigPoly) -> bool:
        return poly.width == self.width and all(self.mode_ok(nu, v) for (_, nu, _), v in poly.terms.items())

    def project(self, nu: Fraction, v: Sequence[Fraction]) -> Vector:
        """Component of v allowed at frequency nu (for monodromy of order <= 2)."""
        s = self.sign(nu)
        if s is None:
            return (ZERO,) * self.width
        mv = linalg.matvec(self.monodromy_inverse, v)
        return tuple((a + s * b) / 2 for a, b in zip(v, mv))

    def frequencies(self, max_freq) -> list[Fraction]:
        """All frequencies nu <= max_freq at which some nonzero section mode can live."""
        step = Fraction(1, 2 * self.period)
        out, k = [], 0
        while k * step <= max_freq:
            nu = k * step
            if self.allowed_dim(nu):
                out.append(nu)
            k += 1
        return out

    def allowed_basis(self, nu: Fraction) -> list[Vector]:
        s = self.sign(nu)
        if s is None:
            return []
        rows = [[self.monodromy_inverse[i][j] - (s if i == j else 0) for j in range(self.width)] for i in range(self.width)]
        return linalg.nullspace(rows, self.width)

    def allowed_dim(self, nu: Fraction) -> int:
        return len(self.allowed_basis(nu))


class LoopAlgebra(SectionSpace):
    """The twisted loop algebra of ``alg`` with monodromy ``twist`` and the given period."""

    def __init__(self, alg: LieAlgebra, twist: TwistAutomorphism | None = None, period: int = 1, name: str = ""):
        twist = twist or TwistAutomorphism.identity(alg.dim)
        if twist.dim != alg.dim:
            raise TwistMismatch("twist dimension differs from the algebra")
        twist.check(alg)
        super().__init__(alg.dim, twist.inverse, period)
        self.alg = alg
        self.twist = twist
        self.name = name or f"L[{alg.name or alg.dim}, {twist.name or 'twist'}]"

    def __repr__(self):
        return f"LoopAlgebra({self.name}, period={self.period})"

    @cached_property
    def vspace(self):
        from .invariant_forms import invariant_form_space

        return invariant_form_space(self.alg)

    @cached_property
    def v_monodromy_inverse(self) -> Matrix:
        """Action of psi^{-1} on V-coordinates."""
        from .invariant_forms import automorphism_action_on_V

        return automorphism_action_on_V(self.alg, self.vspace, self.twist.inverse)

    @cached_property
    def v_sections(self) -> SectionSpace:
        """The flat bundle V over the same circle, as a section space."""
        return SectionSpace(self.vspace.m, self.v_monodromy_inverse, self.period)

    def element(self, poly: TrigPoly) -> "LoopElement":
        return LoopElement(self, poly)

    def zero(self) -> "LoopElement":
        return LoopElement(self, TrigPoly.zero(self.width))

    def constant(self, v: Sequence[Fraction]) -> "LoopElement":
        return LoopElement(self, TrigPoly.constant(v))

    def mode(self, v: Sequence[Fraction], nu, kind: str = COS) -> "LoopElement":
        return LoopElement(self, TrigPoly.mode(v, nu, kind))

    def random_element(self, rng: random.Random, max_freq=2, n_modes: int = 3, coeff_range: int = 3) -> "LoopElement":
        freqs = self.frequencies(max_freq)
        terms: dict = {}
        for _ in range(n_modes):
            nu = rng.choice(freqs)
            kind = COS if nu == 0 else rng.choice((COS, SIN))
            v = [Fraction(rng.randint(-coeff_range, coeff_range), rng.choice((1, 1, 1, 2))) for _ in range(self.width)]
            p = self.project(nu, v)
            key = (0, nu, kind)
            terms[key] = tuple(a + b for a, b in zip(terms.get(key, (ZERO,) * self.width), p))
        return LoopElement._trusted(self, TrigPoly(self.width, terms))


class LoopElement:
    """A twist-compatible trig-polynomial section of a :class:`LoopAlgebra`."""

    __slots__ = ("space", "poly")

    def __init__(self, space: LoopAlgebra, poly: TrigPoly):
        if not space.compatible(poly):
            raise TwistMismatch(f"section violates the twist condition of {space.name}")
        self.space = space
        self.poly = poly

    @classmethod
    def _trusted(cls, space: LoopAlgebra, poly: TrigPoly) -> "LoopElement":
        # closure operations (sums, brackets, derivatives) preserve the twist condition
        obj = object.__new__(cls)
        obj.space = space
        obj.poly = poly
        return obj

    def _same(self, other: "LoopElement") -> None:
        if not isinstance(other, LoopElement) or other.space is not self.space:
            raise TwistMismatch("loop elements belong to different loop algebras")

    def __add__(self, other):
        self._same(other)
        return LoopElement._trusted(self.space, self.poly + other.poly)

    def __sub__(self, other):
        self._same(other)
        return LoopElement._trusted(self.space, self.poly - other.poly)

    def __neg__(self):
        return LoopElement._trusted(self.space, -self.poly)

    def scale(self, c) -> "LoopElement":
        return LoopElement._trusted(self.space, self.poly.scale(c))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def derivative(self) -> "LoopElement":
        return LoopElement._trusted(self.space, self.poly.derivative())

    def __eq__(self, other):
        if not isinstance(other, LoopElement):
            return NotImplemented
        return self.space is other.space and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __repr__(self):
        return f"LoopElement({self.poly!r})"


# A 1-form f dt on the circle is stored through its coefficient f.
LoopOneForm = LoopElement


def loop_bracket(xi: LoopElement, eta: LoopElement) -> LoopElement:
    xi._same(eta)
    alg = xi.space.alg
    return LoopElement._trusted(xi.space, xi.poly.bilinear(eta.poly, lambda a, b: bracket(alg, a, b), alg.dim))


@dataclass(frozen=True)
class VectorFieldLift:
    """Generator of the flow on the bundle: speed * d/dt on the base plus ad(vertical)."""

    speed: Fraction = Fraction(1)
    vertical: LoopElement | None = None

    @classmethod
    def rotation(cls, speed=1) -> "VectorFieldLift":
        return cls(Fraction(speed), None)

    @property
    def is_pure_rotation(self) -> bool:
        return self.vertical is None or self.vertical.is_zero()

    @property
    def time_dependent_vertical(self) -> bool:
        """Vertical parts that vary along the circle go beyond the explicitly treated case."""
        return self.vertical is not None and any(nu != 0 for nu in self.vertical.poly.frequencies)


@dataclass(frozen=True)
class Connection:
    """Lie connection d + ad(A) dt with a twist-compatible potential A."""

    potential: LoopElement

    @classmethod
    def trivial(cls, space: LoopAlgebra) -> "Connection":
        return cls(space.zero())

    @property
    def space(self) -> LoopAlgebra:
        return self.potential.space


def apply_D(lift: VectorFieldLift, xi: LoopElement) -> LoopElement:
    """D xi = speed * xi' + [vertical, xi]."""
    out = xi.derivative().scale(lift.speed)
    if lift.vertical is not None:
        out = out + loop_bracket(lift.vertical, xi)
    return out


def connection_apply(nabla: Connection, xi: LoopElement) -> LoopOneForm:
    """Coefficient of dt in nabla xi = (xi' + [A, xi]) dt."""
    return xi.derivative() + loop_bracket(nabla.potential, xi)


def lie_derivative_of_connection(lift: VectorFieldLift, nabla: Connection) -> LoopOneForm:
    """The k-valued 1-form L_v(nabla), characterised by
    D(nabla xi) - nabla(D xi) = [L_v(nabla), xi].

    For nabla = d + ad(A) and D = speed d/dt + ad(w) this is
    speed A' - w' + [w, A].
    """
    a = nabla.potential
    out = a.derivative().scale(lift.speed)
    if lift.vertical is not None:
        w = lift.vertical
        out = out - w.derivative() + loop_bracket(w, a)
    return out


# -- finite cover and reduction to simple fibres --------------------------


@dataclass(frozen=True)
class CoverComponent:
    orbit: tuple[int, ...]
    length: int


@dataclass(frozen=True)
class SpectralCover:
    components: tuple[CoverComponent, ...]
    permutation: tuple[int, ...]


def ideal_permutation(alg: LieAlgebra, twist: TwistAutomorphism, decomp: IdealDecomposition) -> tuple[int, ...]:
    perm = []
    for i in range(len(decomp.ideals)):
        j = image_ideal([list(r) for r in twist.phi], decomp.ideals, i)
        if j is None:
            raise NotAnAutomorphism(f"twist {twist.name!r} does not permute the simple ideals")
        perm.append(j)
    return tuple(perm)


def spectral_cover(alg: LieAlgebra, twist: TwistAutomorphism, decomp: IdealDecomposition | None = None) -> SpectralCover:
    """Connected components of the cover by simple ideals: one circle of length s per psi-orbit of size s."""
    if not is_semisimple(alg):
        raise NotSemisimple(f"{alg} is not semisimple")
    twist.check(alg)
    decomp = decomp or minimal_ideals(alg)
    perm = ideal_permutation(alg, twist, decomp)
    seen, comps = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        orbit, j = [], i
        while j not in seen:
            seen.add(j)
            orbit.append(j)
            j = perm[j]
        comps.append(CoverComponent(tuple(orbit), len(orbit)))
    return SpectralCover(tuple(comps), perm)


@dataclass
class ReducedComponent:
    orbit: tuple[int, ...]
    algebra: LieAlgebra  # the simple ideal of orbit[0], in its own coordinates
    residual_twist: TwistAutomorphism  # psi^length restricted to that ideal
    period: int
    loops: LoopAlgebra
    read: Matrix = field(repr=False)  # ambient -> ideal coordinates (includes the projection)
    embed: Matrix = field(repr=False)  # ideal coordinates -> ambient


@dataclass
class Reduction:
    """The isomorphism between a twisted loop algebra with semisimple fibre and
    a direct sum of loop algebras with simple fibres (one per psi-orbit of ideals).

    Component loop: eta(t) = pr_{i0} xi(t) in ideal i0, so eta(t + s) =
    psi^{-s} eta(t).  Inverse: xi(t) = sum over orbits and j < s of
    psi^j eta(t + j).
    """

    source: LoopAlgebra
    decomposition: IdealDecomposition
    cover: SpectralCover
    components: list[ReducedComponent]

    def phi(self, xi: LoopElement) -> tuple[LoopElement, ...]:
        if xi.space is not self.source:
            raise TwistMismatch("element does not belong to the reduced loop algebra")
        out = []
        for comp in self.components:
            poly = xi.poly.map(lambda v, r=comp.read: linalg.matvec(r, v), comp.algebra.dim)
            out.append(LoopElement(comp.loops, poly))
        return tuple(out)

    def phi_inverse(self, etas: Sequence[LoopElement]) -> LoopElement:
        if len(etas) != len(self.components):
            raise TwistMismatch("wrong number of components")
        psi = [list(r) for r in self.source.twist.phi]
        pieces = []
        for comp, eta in zip(self.components, etas):
            if eta.space is not comp.loops:
                raise TwistMismatch("component element from a different loop algebra")
            lifted = eta.poly.map(lambda v, e=comp.embed: linalg.matvec(e, v), self.source.width)
            power = linalg.identity(self.source.width)
            for j in range(comp.period):
                pieces.append(lifted.shift(j).map(lambda v, p=power: linalg.matvec(p, v)))
                power = linalg.matmul(psi, power)
        return LoopElement(self.source, sum_polys(pieces, self.source.width))

    def lift(self, lift: VectorFieldLift) -> list[VectorFieldLift]:
        """The flow generator transported to each component."""
        if lift.vertical is None:
            return [VectorFieldLift(lift.speed, None) for _ in self.components]
        return [VectorFieldLift(lift.speed, w) for w in self.phi(lift.vertical)]


def reduce_to_simple(loops: LoopAlgebra, decomp: IdealDecomposition | None = None) -> Reduction:
    alg, twist = loops.alg, loops.twist
    if not is_semisimple(alg):
        raise NotSemisimple(f"{alg} is not semisimple")
    if loops.period != 1:
        raise ValueError("reduction starts from a loop algebra of period 1")
    decomp = decomp or minimal_ideals(alg)
    cover = spectral_cover(alg, twist, decomp)
    psi = [list(r) for r in twist.phi]
    comps = []
    for cc in cover.components:
        i0 = cc.orbit[0]
        ideal = decomp.ideals[i0]
        sub = subalgebra(alg, ideal.basis, name=f"{alg.name or 'k'}_{i0 + 1}")
        m = ideal.dim
        select = linalg.zeros(m, alg.dim)
        for col, p in enumerate(ideal.pivots):
            select[col][p] = linalg.ONE
        read = linalg.matmul(select, decomp.projections[i0])
        embed = linalg.transpose(list(ideal.basis))
        psi_s = linalg.matpow(psi, cc.length)
        residual = linalg.matmul(read, linalg.matmul(psi_s, embed))
        residual_order = 1 if residual == linalg.identity(m) else 2
        rt = TwistAutomorphism.from_matrix(residual, residual_order, f"{twist.name}^{cc.length}|{i0 + 1}")
        comp_loops = LoopAlgebra(sub, rt, period=cc.length, name=f"L[{sub.name}, period {cc.length}]")
        comps.append(ReducedComponent(cc.orbit, sub, rt, cc.length, comp_loops, read, embed))
    return Reduction(loops, decomp, cover, comps)


def verify_reduction(red: Reduction, samples: int = 100, seed: int = 0, max_freq=2, lift: VectorFieldLift | None = None):
    """Exact checks that the reduction is a bijective homomorphism intertwining D."""
    from .report import Check, Report

    lift = lift or VectorFieldLift.rotation()
    comp_lifts = red.lift(lift)
    rng = random.Random(seed)
    fails: dict[str, dict | None] = {"round-trip": None, "inverse-round-trip": None, "bracket": None, "derivation": None}

    def note(key, n, **w):
        if fails[key] is None:
            fails[key] = {"sample": n, **{k: repr(v) for k, v in w.items()}}

    for n in range(samples):
        xi = red.source.random_element(rng, max_freq)
        eta = red.source.random_element(rng, max_freq)
        pxi, peta = red.phi(xi), red.phi(eta)
        if red.phi_inverse(pxi) != xi:
            note("round-trip", n, xi=xi)
        etas = tuple(c.loops.random_element(rng, max_freq) for c in red.components)
        if red.phi(red.phi_inverse(etas)) != etas:
            note("inverse-round-trip", n, components=etas)
        if red.phi(loop_bracket(xi, eta)) != tuple(loop_bracket(a, b) for a, b in zip(pxi, peta)):
            note("bracket", n, xi=xi, eta=eta)
        if red.phi(apply_D(lift, xi)) != tuple(apply_D(lf, a) for lf, a in zip(comp_lifts, pxi)):
            note("derivation", n, xi=xi)
    rep = Report("reduction")
    rep.info.update({"samples": samples, "seed": seed, "max_freq": str(max_freq)})
    for key, w in fails.items():
        rep.add(Check(key, w is None, f"{samples} samples" if w is None else "mismatch", w))
    return rep
