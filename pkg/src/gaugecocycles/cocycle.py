"""Covariant 2-cocycles on a twisted loop algebra extended by its flow derivation.

Elements of the extended algebra are pairs ``(xi, s)`` meaning xi + s D,
with bracket [(xi, s), (eta, t)] = ([xi, eta] + s D eta - t D xi, 0).
The cocycle built from a current lambda and a connection nabla is

    omega(xi, eta) = lambda(kappa(xi, nabla eta))
    omega(D, xi)   = lambda(kappa(L_v nabla, xi))

extended by skew-symmetry.  All values are exact elements of Q[2pi].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .errors import DimensionMismatch, MonodromyMismatch, TwistMismatch
from .invariant_forms import invariant_covectors
from .linalg import ZERO, Vector, format_fraction
from .loop_bundle import (
    Connection,
    LoopAlgebra,
    LoopElement,
    VectorFieldLift,
    apply_D,
    connection_apply,
    lie_derivative_of_connection,
    loop_bracket,
)
from .report import Check, Report
from .trig import COS, SIN, TrigPoly, TwoPiPolynomial

Extended = tuple[LoopElement, Fraction]


def _form_entries(space: LoopAlgebra):
    cache = space.__dict__.get("_form_entries")
    if cache is None:
        cache = [
            [(i, j, x) for i, row in enumerate(f) for j, x in enumerate(row) if x] for f in space.vspace.forms
        ]
        space.__dict__["_form_entries"] = cache
    return cache


def kappa_values(space: LoopAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    out = []
    for entries in _form_entries(space):
        s = ZERO
        for i, j, c in entries:
            if x[i] and y[j]:
                s += x[i] * c * y[j]
        out.append(s)
    return tuple(out)


def kappa_loop(xi: LoopElement, eta: LoopElement) -> TrigPoly:
    """Pointwise universal form kappa(xi(t), eta(t)) as a V-valued trig polynomial."""
    xi._same(eta)
    space = xi.space
    return xi.poly.bilinear(eta.poly, lambda a, b: kappa_values(space, a, b), space.vspace.m)


@dataclass(frozen=True)
class Current:
    """lambda(beta) = scale * (length of the base circle) * mu(constant term of beta).

    ``mu`` must be a flat section of the dual of V, i.e. invariant under the
    monodromy; then t -> mu(beta(t)) has period ``space.period`` and the
    formula is its integral over the base circle.
    """

    space: LoopAlgebra
    mu: tuple[Fraction, ...]
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        mu = tuple(Fraction(x) for x in self.mu)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "scale", Fraction(self.scale))
        if len(mu) != self.space.vspace.m:
            raise DimensionMismatch(f"mu must have length dim V = {self.space.vspace.m}")
        pulled = linalg.vecmat(mu, self.space.v_monodromy_inverse)
        if pulled != mu:
            raise MonodromyMismatch(
                f"mu = {[format_fraction(x) for x in mu]} is not invariant under the monodromy "
                f"(mu.M = {[format_fraction(x) for x in pulled]})"
            )

    @classmethod
    def standard(cls, space: LoopAlgebra) -> "Current":
        """mu = (1, ..., 1) averaged over the monodromy group."""
        m = space.vspace.m
        ones = (Fraction(1),) * m
        mu = tuple((a + b) / 2 for a, b in zip(ones, linalg.vecmat(ones, space.v_monodromy_inverse)))
        return cls(space, mu)

    def __add__(self, other: "Current") -> "Current":
        if other.space is not self.space:
            raise TwistMismatch("currents on different loop algebras")
        return Current(self.space, tuple(self.scale * a + other.scale * b for a, b in zip(self.mu, other.mu)))

    def is_zero(self) -> bool:
        return not self.scale or not any(self.mu)

    def form(self) -> list[tuple[int, int, Fraction]]:
        """Sparse entries of the scalar form mu . kappa."""
        cached = self.__dict__.get("_form")
        if cached is None:
            forms = self.space.vspace.forms
            n = self.space.width
            cached = []
            for i in range(n):
                for j in range(n):
                    x = sum((a * f[i][j] for a, f in zip(self.mu, forms) if a), ZERO)
                    if x:
                        cached.append((i, j, x))
            object.__setattr__(self, "_form", cached)
        return cached

    def pair(self, xi: LoopElement, eta: LoopElement) -> TwoPiPolynomial:
        """lambda(kappa(xi, eta)), reading off only the constant term of the product."""
        xi._same(eta)
        if xi.space is not self.space:
            raise TwistMismatch("loop element lives on a different loop algebra")
        entries = self.form()

        def q(x, y):
            s = ZERO
            for i, j, c in entries:
                if x[i] and y[j]:
                    s += x[i] * c * y[j]
            return (s,)

        zm = xi.poly.paired_zero_mode(eta.poly, q, 1)
        return TwoPiPolynomial({k: v[0] for k, v in zm.items()}) * (self.scale * self.space.period)


def current_eval(lam: Current, beta: TrigPoly) -> TwoPiPolynomial:
    if not lam.space.v_sections.compatible(beta):
        raise MonodromyMismatch("V-valued form is not compatible with the monodromy")
    total: dict[int, Fraction] = {}
    for k, v in beta.zero_mode().items():
        total[k] = sum((a * b for a, b in zip(lam.mu, v) if a), ZERO)
    return TwoPiPolynomial(total) * (lam.scale * lam.space.period)


def current_conditions(lam: Current, lift: VectorFieldLift, max_freq=2) -> Report:
    """Closedness and flow invariance of lambda on a basis of V-valued modes up to max_freq.

    The vertical part of the flow acts on V by inner derivations, hence
    trivially, so L_v on V-valued forms is speed * d/dt.
    """
    rep = Report("current-conditions")
    vs = lam.space.v_sections
    exact_fail = inv_fail = None
    for nu in vs.frequencies(max_freq):
        for e in vs.allowed_basis(nu):
            for kind in (COS, SIN):
                if kind == SIN and nu == 0:
                    continue
                f = TrigPoly.mode(e, nu, kind)
                if exact_fail is None and current_eval(lam, f.derivative()):
                    exact_fail = (nu, kind, e)
                if inv_fail is None and current_eval(lam, f.derivative().scale(lift.speed)):
                    inv_fail = (nu, kind, e)
    rep.add(Check("closed", exact_fail is None, witness=None if exact_fail is None else {"mode": str(exact_fail)}))
    rep.add(Check("flow-invariant", inv_fail is None, witness=None if inv_fail is None else {"mode": str(inv_fail)}))
    return rep


@dataclass(frozen=True)
class CovariantCocycle:
    current: Current
    connection: Connection
    lift: VectorFieldLift

    def __post_init__(self):
        space = self.current.space
        if self.connection.space is not space:
            raise TwistMismatch("connection lives on a different loop algebra")
        if self.lift.vertical is not None and self.lift.vertical.space is not space:
            raise TwistMismatch("flow generator lives on a different loop algebra")

    @property
    def space(self) -> LoopAlgebra:
        return self.current.space

    def __call__(self, a: Extended, b: Extended) -> TwoPiPolynomial:
        return full_cocycle_eval(self, a, b)


def omega_gg(c: CovariantCocycle, xi: LoopElement, eta: LoopElement) -> TwoPiPolynomial:
    return c.current.pair(xi, connection_apply(c.connection, eta))


def omega_D(c: CovariantCocycle, xi: LoopElement) -> TwoPiPolynomial:
    return c.current.pair(lie_derivative_of_connection(c.lift, c.connection), xi)


def full_cocycle_eval(c: CovariantCocycle, a: Extended, b: Extended) -> TwoPiPolynomial:
    (xi, s), (eta, t) = a, b
    s, t = Fraction(s), Fraction(t)
    out = omega_gg(c, xi, eta)
    if s:
        out = out + omega_D(c, eta) * s
    if t:
        out = out - omega_D(c, xi) * t
    return out


def semidirect_bracket(lift: VectorFieldLift, a: Extended, b: Extended) -> Extended:
    (xi, s), (eta, t) = a, b
    out = loop_bracket(xi, eta)
    if s:
        out = out + apply_D(lift, eta).scale(s)
    if t:
        out = out - apply_D(lift, xi).scale(t)
    return out, Fraction(0)


@dataclass(frozen=True)
class OneCochain:
    """chi(xi + t D) = lambda(kappa(A, xi)) + t * d_coeff."""

    current: Current
    potential: LoopElement
    lift: VectorFieldLift
    d_coeff: Fraction = Fraction(0)

    def __call__(self, a: Extended) -> TwoPiPolynomial:
        xi, t = a
        return self.current.pair(self.potential, xi) + TwoPiPolynomial.const(Fraction(t) * self.d_coeff)


def coboundary(chi: OneCochain) -> Callable[[Extended, Extended], TwoPiPolynomial]:
    """delta chi (a, b) = -chi([a, b])."""

    def delta(a: Extended, b: Extended) -> TwoPiPolynomial:
        return -chi(semidirect_bracket(chi.lift, a, b))

    return delta


# -- verification ---------------------------------------------------------


def _short(p) -> str:
    s = repr(p)
    return s if len(s) < 300 else s[:297] + "..."


def random_extended(space: LoopAlgebra, rng: random.Random, max_freq) -> Extended:
    return space.random_element(rng, max_freq), Fraction(rng.randint(-3, 3), rng.choice((1, 2)))


def verify_cocycle(c: CovariantCocycle, sample_count: int = 100, max_freq=3, seed: int = 0) -> Report:
    """Exact residuals of skew-symmetry, the cocycle identity on loop triples, and
    omega(D, [xi, eta]) = omega(D xi, eta) + omega(xi, D eta), on seeded random samples."""
    rng = random.Random(seed)
    space = c.space
    failures: dict[str, dict | None] = {"skew-symmetry": None, "cocycle-identity": None, "derivation-compatibility": None}
    for n in range(sample_count):
        a, b = random_extended(space, rng, max_freq), random_extended(space, rng, max_freq)
        zeta = space.random_element(rng, max_freq)
        xi, eta = a[0], b[0]

        r = full_cocycle_eval(c, a, b) + full_cocycle_eval(c, b, a)
        if r and failures["skew-symmetry"] is None:
            failures["skew-symmetry"] = {"sample": n, "residual": str(r), "a": _short(a), "b": _short(b)}

        r = (
            omega_gg(c, loop_bracket(xi, eta), zeta)
            + omega_gg(c, loop_bracket(eta, zeta), xi)
            + omega_gg(c, loop_bracket(zeta, xi), eta)
        )
        if r and failures["cocycle-identity"] is None:
            failures["cocycle-identity"] = {"sample": n, "residual": str(r), "xi": _short(xi), "eta": _short(eta), "zeta": _short(zeta)}

        r = (
            omega_D(c, loop_bracket(xi, eta))
            - omega_gg(c, apply_D(c.lift, xi), eta)
            - omega_gg(c, xi, apply_D(c.lift, eta))
        )
        if r and failures["derivation-compatibility"] is None:
            failures["derivation-compatibility"] = {"sample": n, "residual": str(r), "xi": _short(xi), "eta": _short(eta)}

    rep = Report("verify-cocycle")
    rep.info.update({"samples": sample_count, "max_freq": str(max_freq), "seed": seed})
    for name, w in failures.items():
        rep.add(Check(name, w is None, f"{sample_count} samples, residual 0" if w is None else "nonzero residual", w))
    return rep


def connection_change_check(
    lam: Current,
    nabla: Connection,
    nabla2: Connection,
    lift: VectorFieldLift,
    samples: int = 100,
    seed: int = 0,
    max_freq=3,
) -> Report:
    """omega_{lambda, nabla2} - omega_{lambda, nabla} = delta chi_A with A = nabla2 - nabla."""
    space = lam.space
    if nabla.space is not space or nabla2.space is not space:
        raise TwistMismatch("connections live on a different loop algebra")
    a_diff = nabla2.potential - nabla.potential
    c1 = CovariantCocycle(lam, nabla, lift)
    c2 = CovariantCocycle(lam, nabla2, lift)
    delta = coboundary(OneCochain(lam, a_diff, lift))
    rng = random.Random(seed)
    fail_gg = fail_d = None
    for n in range(samples):
        xi, eta = space.random_element(rng, max_freq), space.random_element(rng, max_freq)
        zero = Fraction(0)
        r = full_cocycle_eval(c2, (xi, zero), (eta, zero)) - full_cocycle_eval(c1, (xi, zero), (eta, zero)) - delta((xi, zero), (eta, zero))
        if r and fail_gg is None:
            fail_gg = {"sample": n, "residual": str(r), "xi": _short(xi), "eta": _short(eta)}
        d = (space.zero(), Fraction(1))
        r = full_cocycle_eval(c2, d, (xi, zero)) - full_cocycle_eval(c1, d, (xi, zero)) - delta(d, (xi, zero))
        if r and fail_d is None:
            fail_d = {"sample": n, "residual": str(r), "xi": _short(xi)}
    rep = Report("connection-change")
    rep.info["samples"] = samples
    rep.add(Check("coboundary-on-loops", fail_gg is None, f"{samples} pairs", fail_gg))
    rep.add(Check("coboundary-on-D", fail_d is None, f"{samples} pairs", fail_d))
    return rep


def current_space_dimension(space: LoopAlgebra, lift: VectorFieldLift | None = None, max_freq=1) -> int:
    """dim of V-valued 1-forms (frequency <= max_freq, monodromy-compatible) modulo
    exact forms plus flow derivatives, computed as a rank.

    Only the speed of the flow matters: its vertical part acts trivially on V.
    """
    lift = lift or VectorFieldLift.rotation()
    vs = space.v_sections
    modes = []
    for nu in vs.frequencies(max_freq):
        for e in vs.allowed_basis(nu):
            for kind in (COS, SIN):
                if not (kind == SIN and nu == 0):
                    modes.append(TrigPoly.mode(e, nu, kind))
    if not modes:
        return 0
    keys = sorted({(nu, kind) for p in modes for (_, nu, kind) in p.terms})
    col = {k: i for i, k in enumerate(keys)}
    w = vs.width

    def flatten(p: TrigPoly) -> list[Fraction]:
        # the power of 2pi is a nonzero overall factor per mode, so it is dropped for rank purposes
        row = [ZERO] * (len(keys) * w)
        for (_, nu, kind), v in p.terms.items():
            base = col[(nu, kind)] * w
            for i, x in enumerate(v):
                row[base + i] += x
        return row

    total = linalg.rank([flatten(p) for p in modes])
    images = [flatten(p.derivative()) for p in modes]
    images += [flatten(p.derivative().scale(lift.speed)) for p in modes]
    images = [r for r in images if any(r)]
    return total - (linalg.rank(images) if images else 0)


def monodromy_invariant_covectors(space: LoopAlgebra) -> list[Vector]:
    return invariant_covectors(space.v_monodromy_inverse)


def injectivity_probe(c: CovariantCocycle, cochain_samples: int = 10, seed: int = 0) -> Report:
    """Find commuting xi = f x, eta = g x with omega(xi, eta) != 0.

    Every coboundary -chi([xi, eta]) vanishes on such a pair, so a nonzero
    value certifies that omega is not a coboundary.
    """
    rep = Report("injectivity-probe")
    space = c.space
    lam = c.current
    form = [[sum((a * f[i][j] for a, f in zip(lam.mu, space.vspace.forms)), ZERO) for j in range(space.width)] for i in range(space.width)]
    pair = None
    for nu in [x for x in space.frequencies(2) if x > 0]:
        basis = space.allowed_basis(nu)
        candidates = list(basis) + [tuple(a + b for a, b in zip(u, v)) for k, u in enumerate(basis) for v in basis[k + 1:]]
        for x in candidates:
            q = sum((x[i] * form[i][j] * x[j] for i in range(len(x)) for j in range(len(x))), ZERO)
            if q:
                pair = (space.mode(x, nu, COS), space.mode(x, nu, SIN), x, nu)
                break
        if pair:
            break
    if lam.is_zero():
        rep.add(Check("nonzero-current", False, "lambda = 0 has no witness"))
        return rep
    if pair is None:
        rep.add(Check("witness-found", False, "no commuting pair with nonzero value"))
        return rep
    xi, eta, x, nu = pair
    commute = loop_bracket(xi, eta).is_zero()
    value = omega_gg(c, xi, eta)
    rep.info["witness"] = f"xi = x cos(2pi*{nu}t), eta = x sin(2pi*{nu}t), x = {[format_fraction(v) for v in x]}"
    rep.info["omega(xi, eta)"] = str(value)
    rep.add(Check("pair-commutes", commute))
    rep.add(Check("omega-nonzero", bool(value), str(value)))
    rng = random.Random(seed)
    zero = Fraction(0)
    bad = None
    for n in range(cochain_samples):
        chi = OneCochain(lam, space.random_element(rng, 2), c.lift, Fraction(rng.randint(-3, 3)))
        r = coboundary(chi)((xi, zero), (eta, zero))
        if r and bad is None:
            bad = {"sample": n, "value": str(r)}
    rep.add(Check("coboundaries-vanish", bad is None, f"{cochain_samples} random cochains", bad))
    return rep
