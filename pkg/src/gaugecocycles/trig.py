"""Vector-valued trigonometric polynomials with exact coefficients in Q[2pi].

A polynomial is a finite sum of terms ``(2pi)^k * v * cos(2 pi nu t)`` or
``(2pi)^k * v * sin(2 pi nu t)`` with ``v`` a rational vector, ``nu >= 0``
a rational frequency and ``k >= 0``.  Differentiation raises ``k`` by one,
so derivatives never leave the representation and no floating point is
ever involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import ZERO, Vector, format_fraction

COS, SIN = "cos", "sin"
Key = tuple[int, Fraction, str]  # (power of 2pi, frequency, kind)
HALF = Fraction(1, 2)


class TwoPiPolynomial:
    """An element of Q[2pi]: ``sum_k c_k (2pi)^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None):
        self.coeffs = {k: Fraction(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, x) -> "TwoPiPolynomial":
        return cls({0: Fraction(x)})

    def coeff(self, k: int) -> Fraction:
        return self.coeffs.get(k, ZERO)

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def _lift(self, other):
        if isinstance(other, TwoPiPolynomial):
            return other
        return TwoPiPolynomial.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return TwoPiPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return TwoPiPolynomial({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, TwoPiPolynomial):
            out: dict[int, Fraction] = {}
            for a, x in self.coeffs.items():
                for b, y in other.coeffs.items():
                    out[a + b] = out.get(a + b, ZERO) + x * y
            return TwoPiPolynomial(out)
        c = Fraction(other)
        return TwoPiPolynomial({k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TwoPiPolynomial.const(other)
        if not isinstance(other, TwoPiPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __float__(self):
        import math

        return float(sum(float(v) * (2 * math.pi) ** k for k, v in self.coeffs.items()))

    def __repr__(self):
        return f"TwoPiPolynomial({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = format_fraction(self.coeffs[k])
            parts.append(c if k == 0 else f"{c}*(2pi)" + (f"^{k}" if k > 1 else ""))
        return " + ".join(parts)


def _axpy(acc: dict, key: Key, c: Fraction, v: Sequence[Fraction]) -> None:
    cur = acc.get(key)
    if cur is None:
        acc[key] = list(v) if c == 1 else [c * x for x in v]
    elif c == 1:
        for i, x in enumerate(v):
            if x:
                cur[i] += x
    else:
        for i, x in enumerate(v):
            if x:
                cur[i] += c * x


class TrigPoly:
    """Immutable vector-valued trigonometric polynomial of fixed ``width``."""

    __slots__ = ("width", "terms")

    def __init__(self, width: int, terms: Mapping[Key, Sequence[Fraction]] | None = None):
        self.width = width
        clean = {}
        for (k, nu, kind), v in (terms or {}).items():
            nu = Fraction(nu)
            if nu < 0:
                raise ValueError("frequencies are stored as nonnegative numbers")
            if kind not in (COS, SIN):
                raise ValueError(f"unknown kind {kind!r}")
            if kind == SIN and nu == 0:
                continue
            if len(v) != width:
                raise ValueError(f"coefficient of length {len(v)} in a width-{width} polynomial")
            if any(v):
                clean[(k, nu, kind)] = tuple(x if type(x) is Fraction else Fraction(x) for x in v)
        self.terms: dict[Key, Vector] = clean

    @classmethod
    def zero(cls, width: int) -> "TrigPoly":
        return cls(width)

    @classmethod
    def constant(cls, v: Sequence[Fraction]) -> "TrigPoly":
        return cls(len(v), {(0, ZERO, COS): v})

    @classmethod
    def mode(cls, v: Sequence[Fraction], nu, kind: str = COS, power: int = 0) -> "TrigPoly":
        return cls(len(v), {(power, Fraction(nu), kind): v})

    # -- linear structure -------------------------------------------------

    def _combine(self, other: "TrigPoly", sign: int) -> "TrigPoly":
        if self.width != other.width:
            raise ValueError("width mismatch")
        acc: dict = {k: list(v) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            _axpy(acc, k, Fraction(sign), v)
        return TrigPoly(self.width, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "TrigPoly":
        c = Fraction(c)
        if not c:
            return TrigPoly(self.width)
        return TrigPoly(self.width, {k: tuple(c * x for x in v) for k, v in self.terms.items()})

    def times_two_pi(self, power: int = 1) -> "TrigPoly":
        return TrigPoly(self.width, {(k + power, nu, kind): v for (k, nu, kind), v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.width == other.width and self.terms == other.terms

    def __hash__(self):
        return hash((self.width, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> "TrigPoly":
        acc: dict = {}
        for (k, nu, kind), v in self.terms.items():
            if nu == 0:
                continue
            if kind == COS:
                _axpy(acc, (k + 1, nu, SIN), -nu, v)
            else:
                _axpy(acc, (k + 1, nu, COS), nu, v)
        return TrigPoly(self.width, acc)

    def shift(self, j: int) -> "TrigPoly":
        """t -> t + j for integer j; needs 2 nu j integral for every frequency."""
        out = {}
        for (k, nu, kind), v in self.terms.items():
            twice = 2 * nu * j
            if twice.denominator != 1:
                raise ValueError(f"shift by {j} mixes cos and sin at frequency {nu}")
            out[(k, nu, kind)] = v if twice.numerator % 2 == 0 else tuple(-x for x in v)
        return TrigPoly(self.width, out)

    def zero_mode(self) -> dict[int, Vector]:
        """Constant term, split by power of 2pi."""
        return {k: v for (k, nu, kind), v in self.terms.items() if nu == 0}

    @property
    def frequencies(self) -> set[Fraction]:
        return {nu for _, nu, _ in self.terms}

    @property
    def max_frequency(self) -> Fraction:
        return max(self.frequencies, default=ZERO)

    # -- pointwise maps ---------------------------------------------------

    def map(self, fn: Callable[[Vector], Sequence[Fraction]], width: int | None = None) -> "TrigPoly":
        width = self.width if width is None else width
        return TrigPoly(width, {key: tuple(fn(v)) for key, v in self.terms.items()})

    def bilinear(self, other: "TrigPoly", fn: Callable[[Vector, Vector], Sequence[Fraction]], width: int) -> "TrigPoly":
        """Pointwise ``fn(self(t), other(t))`` for a bilinear ``fn``, expanded by product-to-sum."""
        acc: dict = {}
        for (k1, n1, c1), v1 in self.terms.items():
            for (k2, n2, c2), v2 in other.terms.items():
                w = fn(v1, v2)
                if not any(w):
                    continue
                k = k1 + k2
                s, d = n1 + n2, n1 - n2
                # sin(d) for negative d flips sign
                dsign = -1 if d < 0 else 1
                d = abs(d)
                if c1 == COS and c2 == COS:
                    _axpy(acc, (k, d, COS), HALF, w)
                    _axpy(acc, (k, s, COS), HALF, w)
                elif c1 == SIN and c2 == SIN:
                    _axpy(acc, (k, d, COS), HALF, w)
                    _axpy(acc, (k, s, COS), -HALF, w)
                elif c1 == SIN:  # sin a cos b
                    _axpy(acc, (k, s, SIN), HALF, w)
                    if d:
                        _axpy(acc, (k, d, SIN), HALF * dsign, w)
                else:  # cos a sin b
                    _axpy(acc, (k, s, SIN), HALF, w)
                    if d:
                        _axpy(acc, (k, d, SIN), -HALF * dsign, w)
        return TrigPoly(width, {key: v for key, v in acc.items() if key[2] == COS or key[1] != 0})

    def paired_zero_mode(self, other: "TrigPoly", fn: Callable[[Vector, Vector], Sequence[Fraction]], width: int) -> dict[int, Vector]:
        """Constant term of ``bilinear(other, fn, width)`` without expanding the product.

        Only equal frequencies of equal kind survive averaging: cos*cos and
        sin*sin average to 1/2 (1 for two constants), cos*sin to 0.
        """
        acc: dict = {}
        by_key: dict = {}
        for (k2, n2, c2), v2 in other.terms.items():
            by_key.setdefault((n2, c2), []).append((k2, v2))
        for (k1, n1, c1), v1 in self.terms.items():
            for k2, v2 in by_key.get((n1, c1), ()):
                w = fn(v1, v2)
                if any(w):
                    _axpy(acc, k1 + k2, Fraction(1) if n1 == 0 else HALF, w)
        return {k: tuple(v) for k, v in acc.items() if any(v)}

    def __repr__(self):
        if not self.terms:
            return f"TrigPoly(width={self.width}, 0)"
        parts = []
        for (k, nu, kind), v in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0])):
            vec = "(" + ", ".join(format_fraction(x) for x in v) + ")"
            pref = "" if k == 0 else f"(2pi)^{k} " if k > 1 else "(2pi) "
            trig = "" if nu == 0 else f" {kind}(2pi*{format_fraction(nu)}t)"
            parts.append(f"{pref}{vec}{trig}")
        return " + ".join(parts)


def sum_polys(polys: Iterable[TrigPoly], width: int) -> TrigPoly:
    acc: dict = {}
    for p in polys:
        for k, v in p.terms.items():
            _axpy(acc, k, Fraction(1), v)
    return TrigPoly(width, acc)
