"""Command-line entry point: ``gaugecocycles <command> ALGEBRA [options]``.

ALGEBRA is a path to a ``.alg``/``.json`` file or the name of a bundled
algebra.  Exit status: 0 if every check passes, 1 if a check fails, 2 on
parse or usage errors.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from fractions import Fraction

from . import __version__
from .algebra_file import load_algebra, parse_linear, parse_scalar
from .catalogue import AlgebraData
from .cocycle import (
    CovariantCocycle,
    Current,
    connection_change_check,
    current_conditions,
    current_space_dimension,
    injectivity_probe,
    monodromy_invariant_covectors,
    verify_cocycle,
)
from .errors import MonodromyMismatch, NotAnAutomorphism, ParseError, TwistMismatch, UnknownTwist
from .invariant_forms import automorphism_action_on_V, invariant_form_space
from .lie_core import is_semisimple, validate
from .linalg import format_fraction
from .loop_bundle import (
    Connection,
    LoopAlgebra,
    LoopElement,
    TwistAutomorphism,
    VectorFieldLift,
    reduce_to_simple,
    verify_reduction,
)
from .report import Check, Report
from .structure import isotypic_components, minimal_ideals
from .trig import COS, SIN, TrigPoly


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format_fraction(x) for x in v) + ")"


def _fmt_matrix(m) -> str:
    return "[" + ", ".join(_fmt_vec(r) for r in m) + "]"


def _validated(data: AlgebraData, rep: Report) -> bool:
    v = validate(data.algebra)
    witness = None
    if not v.ok:
        witness = {
            "violation": v.violation,
            "indices": list(v.witness),
            "labels": [data.algebra.labels[i] for i in v.witness],
            "residual": format_fraction(v.residual),
        }
    rep.add(Check("validate", v.ok, "antisymmetry and Jacobi hold" if v.ok else v.describe(data.algebra), witness))
    return v.ok


def _twist(data: AlgebraData, name: str, rep: Report) -> TwistAutomorphism | None:
    tw = data.twist(name)  # UnknownTwist is a usage error
    try:
        tw.check(data.algebra)
    except NotAnAutomorphism as e:
        rep.add(Check(f"automorphism {name}", False, str(e)))
        return None
    rep.add(Check(f"automorphism {name}", True, f"order {tw.order}"))
    return tw


# -- analyze ---------------------------------------------------------------


def cmd_analyze(args) -> Report:
    data = load_algebra(args.algebra)
    alg = data.algebra
    rep = Report(f"analyze {args.algebra}")
    rep.info["algebra"] = alg.name
    rep.info["dim"] = alg.dim
    if not _validated(data, rep):
        return rep
    semisimple = is_semisimple(alg)
    rep.info["semisimple"] = semisimple
    if not semisimple:
        rep.info["decomposition"] = "skipped: not semisimple (degenerate Killing form)"
        return rep
    mats = [[list(r) for r in tw.phi] for tw in data.automorphisms.values()]
    decomp = minimal_ideals(alg, automorphisms=mats)
    rep.info["ideals"] = [
        f"#{i + 1}: dim {I.dim}, signature {I.signature}, compact {I.compact}, complex {I.complex_structure}"
        for i, I in enumerate(decomp.ideals)
    ]
    rep.info["isotypic groups"] = [" ".join(f"#{i + 1}" for i in g) for g in isotypic_components(decomp)]
    if decomp.unverified_groups:
        rep.info["unverified groups"] = [" ".join(f"#{i + 1}" for i in g) for g in decomp.unverified_groups]
    vspace = invariant_form_space(alg, decomp)
    rep.info["dim V"] = vspace.m
    rep.info["V basis"] = list(vspace.labels)
    actions = []
    for name in data.automorphisms:
        tw = _twist(data, name, rep)
        if tw is not None:
            actions.append(f"{name}: {_fmt_matrix(automorphism_action_on_V(alg, vspace, tw.phi))}")
    if actions:
        rep.info["action on V"] = actions
    return rep


# -- cover -----------------------------------------------------------------


def cmd_cover(args) -> Report:
    data = load_algebra(args.algebra)
    alg = data.algebra
    rep = Report(f"cover {args.algebra} --twist {args.twist}")
    rep.info["seed"] = args.seed
    if not _validated(data, rep):
        return rep
    if not is_semisimple(alg):
        rep.add(Check("semisimple", False, "the cover is only defined for semisimple fibres"))
        return rep
    tw = _twist(data, args.twist, rep)
    if tw is None:
        return rep
    loops = LoopAlgebra(alg, tw)
    red = reduce_to_simple(loops)
    cover = red.cover
    rep.info["ideal permutation"] = " ".join(f"#{i + 1}->#{j + 1}" for i, j in enumerate(cover.permutation))
    rep.info["components"] = len(cover.components)
    rep.info["cover"] = [
        f"orbit {{{', '.join(f'#{i + 1}' for i in c.orbit)}}}: length {c.length}, "
        f"residual twist {'trivial' if comp.residual_twist.order == 1 else _fmt_matrix(comp.residual_twist.phi)}"
        for c, comp in zip(cover.components, red.components)
    ]
    rep.extend(verify_reduction(red, args.samples, args.seed, args.max_freq), prefix="reduction ")
    return rep


# -- cocycle-verify ----------------------------------------------------------

_MODE = re.compile(r"^\s*(cos|sin)\s*:\s*([0-9/]+)\s*:(.*)$")


def parse_connection(text: str, loops: LoopAlgebra, rng: random.Random, max_freq) -> LoopElement:
    """``zero``, ``random``, or ``kind:nu:expr;...`` with kind cos/sin and expr a combination of basis labels."""
    text = text.strip()
    if text == "zero":
        return loops.zero()
    if text == "random":
        return loops.random_element(rng, max_freq)
    idx = {lab: i for i, lab in enumerate(loops.alg.labels)}
    terms: dict = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        m = _MODE.match(part)
        if not m:
            raise ParseError(f"connection mode {part!r} is not of the form cos:NU:EXPR or sin:NU:EXPR")
        kind = COS if m.group(1) == "cos" else SIN
        nu = parse_scalar(m.group(2))
        v = parse_linear(m.group(3), idx)
        key = (0, nu, kind)
        terms[key] = tuple(a + b for a, b in zip(terms.get(key, (Fraction(0),) * loops.width), v))
    return loops.element(TrigPoly(loops.width, terms))  # TwistMismatch if a mode breaks the twist


def _parse_mu(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_scalar(x) for x in text.split(","))


def cmd_cocycle_verify(args) -> Report:
    data = load_algebra(args.algebra)
    alg = data.algebra
    rep = Report(
        f"cocycle-verify {args.algebra} --twist {args.twist} --connection {args.connection} "
        f"--max-freq {args.max_freq} --samples {args.samples} --seed {args.seed}"
    )
    rep.info["seed"] = args.seed
    if not _validated(data, rep):
        return rep
    if not is_semisimple(alg):
        rep.add(Check("semisimple", False, "covariant cocycles are built for semisimple fibres"))
        return rep
    tw = _twist(data, args.twist, rep)
    if tw is None:
        return rep
    mu = _parse_mu(args.mu) if args.mu else None
    loops = LoopAlgebra(alg, tw)
    rng = random.Random(args.seed)
    try:
        potential = parse_connection(args.connection, loops, rng, args.max_freq)
    except TwistMismatch as e:
        rep.add(Check("connection", False, str(e)))
        return rep
    rep.add(Check("connection", True, "twist-compatible potential"))
    try:
        lam = Current(loops, mu) if mu is not None else Current.standard(loops)
    except (MonodromyMismatch, ValueError) as e:
        rep.add(Check("current", False, str(e)))
        return rep
    rep.add(Check("current", True, f"mu = {_fmt_vec(lam.mu)}"))
    lift = VectorFieldLift.rotation()
    rep.info["potential"] = repr(potential.poly)
    rep.extend(current_conditions(lam, lift, args.max_freq), prefix="current ")
    c = CovariantCocycle(lam, Connection(potential), lift)
    rep.extend(verify_cocycle(c, args.samples, args.max_freq, args.seed))
    other = Connection(loops.random_element(rng, args.max_freq))
    rep.extend(connection_change_check(lam, c.connection, other, lift, args.samples, args.seed + 1, args.max_freq), prefix="change ")
    probe = injectivity_probe(c, seed=args.seed)
    for key in ("witness", "omega(xi, eta)"):
        if key in probe.info:
            rep.info[f"probe {key}"] = probe.info[key]
    rep.extend(probe, prefix="probe ")
    return rep


# -- currents-dim -------------------------------------------------------------


def cmd_currents_dim(args) -> Report:
    data = load_algebra(args.algebra)
    alg = data.algebra
    rep = Report(f"currents-dim {args.algebra} --twist {args.twist} --max-freq {args.max_freq}")
    if not _validated(data, rep):
        return rep
    tw = _twist(data, args.twist, rep)
    if tw is None:
        return rep
    loops = LoopAlgebra(alg, tw)
    n = args.max_freq
    d0 = current_space_dimension(loops, None, n)
    d1 = current_space_dimension(loops, None, n + 1)
    inv = len(monodromy_invariant_covectors(loops))
    rep.info["dim V"] = loops.vspace.m
    rep.info["current space dimension"] = d0
    rep.add(Check("stable", d0 == d1, f"N = {format_fraction(Fraction(n))}: {d0}, N + 1: {d1}"))
    rep.add(Check("matches invariant covectors", d0 == inv, f"monodromy-invariant covectors on V: {inv}"))
    return rep


# -- driver --------------------------------------------------------------------


def _rational_arg(text: str) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return x


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaugecocycles", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("algebra", help="algebra file or bundled name (su2, sl2r, so4, sl2c, ...)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    a = sub.add_parser("analyze", help="decomposition, signatures and invariant forms")
    common(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("cover", help="twist orbits on simple ideals and the reduction round trip")
    common(c)
    c.add_argument("--twist", default="identity")
    c.add_argument("--samples", type=_positive, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--max-freq", type=_rational_arg, default=Fraction(2))
    c.set_defaults(func=cmd_cover)

    v = sub.add_parser("cocycle-verify", help="exact cocycle, coboundary and injectivity checks")
    common(v)
    v.add_argument("--twist", default="identity")
    v.add_argument("--connection", default="zero", help="zero | random | cos:NU:EXPR;sin:NU:EXPR;...")
    v.add_argument("--mu", help="comma-separated coordinates of the current on V (default: standard)")
    v.add_argument("--max-freq", type=_rational_arg, default=Fraction(3))
    v.add_argument("--samples", type=_positive, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_cocycle_verify)

    d = sub.add_parser("currents-dim", help="dimension of the space of closed invariant currents")
    common(d)
    d.add_argument("--twist", default="identity")
    d.add_argument("--max-freq", type=_rational_arg, default=Fraction(1))
    d.set_defaults(func=cmd_currents_dim)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        rep = args.func(args)
    except (ParseError, UnknownTwist) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    print(rep.to_json() if args.json else rep.pretty())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
