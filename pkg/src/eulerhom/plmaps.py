"""Exact piecewise-linear lifts of circle homeomorphisms.

A lift is an increasing PL homeomorphism of the real line commuting with
the unit translation T(x) = x + 1.  It is stored by its breakpoints on
[0, 1), always including x = 0, and extended by f(x + 1) = f(x) + 1.
All coordinates are Fractions, so evaluation, composition and inversion
are exact and equality of maps is decidable: breakpoint tuples are kept
in a canonical form (collinear interior points merged, x = 0 retained),
making structural equality semantic equality.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


class InvalidPLMap(ValueError):
    """Breakpoint data rejected by validation."""


class BadDomain(InvalidPLMap):
    """x-coordinates are not strictly increasing from 0 inside [0, 1)."""


class NonMonotone(InvalidPLMap):
    """y-coordinates fail to be strictly increasing."""


class DiscontinuousWrap(InvalidPLMap):
    """The periodic extension cannot close up increasingly at x = 1."""


def as_rational(value: RationalLike) -> Rational:
    """Coerce ints, Fractions and exact strings ("1/2", "0.5", "3") to Fraction.

    Floats are refused: fidelity of every later identity depends on exact
    input, and a float would smuggle in a binary rounding step.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidPLMap(f"cannot parse rational from {value!r}") from exc
    raise TypeError(f"expected int, Fraction or exact string, got {type(value).__name__}")


def _collinear(p, q, r) -> bool:
    # exact cross-product test
    return (q[1] - p[1]) * (r[0] - q[0]) == (r[1] - q[1]) * (q[0] - p[0])


def _canonical(points: Iterable[tuple[Rational, Rational]]) -> tuple[tuple[Rational, Rational], ...]:
    """Sort breakpoints and drop interior points collinear with their neighbours.

    The wrap point (1, y0 + 1) takes part in the merging so a breakpoint
    that is redundant against the periodic continuation is dropped too;
    x = 0 itself is never dropped.
    """
    pts = sorted(points)
    for i in range(1, len(pts)):
        if pts[i][0] == pts[i - 1][0]:
            raise BadDomain(f"duplicate breakpoint x = {pts[i][0]}")
    wrap = (Fraction(1), pts[0][1] + 1)
    kept = [pts[0]]
    for nxt in pts[1:] + [wrap]:
        while len(kept) >= 2 and _collinear(kept[-2], kept[-1], nxt):
            kept.pop()
        kept.append(nxt)
    return tuple(kept[:-1])


@dataclass(frozen=True)
class LiftPL:
    """Canonical breakpoint representation of a PL lift.

    Do not build directly from raw data; go through lift_from_breakpoints,
    which validates and canonicalizes.  Internal constructors guarantee
    canonical form, so == and hash decide equality of the underlying maps.
    """

    breakpoints: tuple[tuple[Rational, Rational], ...]

    def __post_init__(self):
        if not self.breakpoints or self.breakpoints[0][0] != 0:
            raise BadDomain("breakpoint list must start at x = 0")

    @cached_property
    def _xs(self) -> list:
        return [x for x, _ in self.breakpoints]

    @property
    def breakpoint_count(self) -> int:
        return len(self.breakpoints)

    @property
    def is_identity(self) -> bool:
        return self.breakpoints == ((Fraction(0), Fraction(0)),)

    def __call__(self, x: RationalLike) -> Rational:
        x = as_rational(x)
        n = math.floor(x)
        frac = x - n
        bps = self.breakpoints
        i = bisect_right(self._xs, frac) - 1
        x0, y0 = bps[i]
        if frac == x0:
            return y0 + n
        if i + 1 < len(bps):
            x1, y1 = bps[i + 1]
        else:
            x1, y1 = Fraction(1), bps[0][1] + 1
        return y0 + (frac - x0) * (y1 - y0) / (x1 - x0) + n

    def displacement_bounds(self) -> tuple[Rational, Rational]:
        """Exact min and max of f(x) - x, attained at breakpoints."""
        d = [y - x for x, y in self.breakpoints]
        return min(d), max(d)

    def shift(self, m: int) -> "LiftPL":
        """T^m composed with self (equivalently self composed with T^m)."""
        if m == 0:
            return self
        return LiftPL(tuple((x, y + m) for x, y in self.breakpoints))

    def compose(self, other: "LiftPL") -> "LiftPL":
        """self after other, exactly.

        Breakpoints of the composite sit at breakpoints of `other` and at
        preimages under `other` of breakpoints of `self`, all mod 1.
        """
        xs = {x for x, _ in other.breakpoints}
        inv = other.inverse()
        for u, _ in self.breakpoints:
            t = inv(u)
            xs.add(t - math.floor(t))
        pts = [(x, self(other(x))) for x in sorted(xs)]
        return LiftPL(_canonical(pts))

    def inverse(self) -> "LiftPL":
        bps = self.breakpoints
        y0 = bps[0][1]
        pts = []
        for x, y in bps:
            k = math.floor(y)
            pts.append((y - k, x - k))
        pts.sort()
        if pts[0][0] != 0:
            # value of the inverse at 0: solve f(x) = ceil(y0) within one period
            k = math.ceil(y0)
            pts.insert(0, (Fraction(0), self._preimage_in_period(Fraction(k)) - k))
        return LiftPL(_canonical(pts))

    def _preimage_in_period(self, v: Rational) -> Rational:
        """The x in [0, 1] with f(x) = v, for v in [f(0), f(0) + 1]."""
        poly = list(self.breakpoints) + [(Fraction(1), self.breakpoints[0][1] + 1)]
        for (x0, u0), (x1, u1) in zip(poly, poly[1:]):
            if u0 <= v <= u1:
                if v == u0:
                    return x0
                return x0 + (v - u0) * (x1 - x0) / (u1 - u0)
        raise ValueError(f"{v} outside one period of the image")

    def translation_power(self) -> int | None:
        """m when the map is exactly T^m, else None."""
        if len(self.breakpoints) == 1 and self.breakpoints[0][1].denominator == 1:
            return int(self.breakpoints[0][1])
        return None


def lift_from_breakpoints(pairs: Sequence[Sequence[RationalLike]]) -> LiftPL:
    """Validate raw breakpoint pairs and build a canonical LiftPL.

    Requirements: nonempty, first x = 0, x strictly increasing inside
    [0, 1), y strictly increasing, and y_last < y_first + 1 so the
    periodic extension stays an increasing homeomorphism.
    """
    if not pairs:
        raise BadDomain("empty breakpoint list")
    pts = []
    for entry in pairs:
        seq = list(entry)
        if len(seq) != 2:
            raise BadDomain(f"breakpoint must be an [x, y] pair, got {entry!r}")
        pts.append((as_rational(seq[0]), as_rational(seq[1])))
    if pts[0][0] != 0:
        raise BadDomain(f"first breakpoint must be at x = 0, got x = {pts[0][0]}")
    for (xa, _), (xb, _) in zip(pts, pts[1:]):
        if xb <= xa:
            raise BadDomain(f"x-coordinates must strictly increase, got {xa} then {xb}")
    if pts[-1][0] >= 1:
        raise BadDomain(f"breakpoints must lie in [0, 1), got x = {pts[-1][0]}")
    for (_, ya), (_, yb) in zip(pts, pts[1:]):
        if yb <= ya:
            raise NonMonotone(f"y-coordinates must strictly increase, got {ya} then {yb}")
    if pts[-1][1] >= pts[0][1] + 1:
        raise DiscontinuousWrap(
            f"need y_last < y_first + 1 to wrap, got {pts[-1][1]} vs {pts[0][1]} + 1"
        )
    return LiftPL(_canonical(pts))


def translation(m: int) -> LiftPL:
    """The lift T^m."""
    return LiftPL(((Fraction(0), Fraction(m)),))


def rotation(angle: RationalLike) -> LiftPL:
    """Lift x -> x + angle of the rigid rotation."""
    return LiftPL(((Fraction(0), as_rational(angle)),))


IDENTITY = translation(0)


def compose_all(*maps: LiftPL) -> LiftPL:
    """Left-to-right composition chain: compose_all(f, g, h) = f o g o h."""
    out = IDENTITY
    for f in maps:
        out = out.compose(f)
    return out


def breakpoints_to_strings(f: LiftPL) -> list[list[str]]:
    """Serialize canonical breakpoints as [["num/den", "num/den"], ...]."""
    return [[str(x), str(y)] for x, y in f.breakpoints]


@dataclass(frozen=True)
class CirclePL:
    """A PL circle homeomorphism, represented by its lift with value(0) in [0, 1)."""

    lift: LiftPL

    def __post_init__(self):
        v = self.lift.breakpoints[0][1]
        if not 0 <= v < 1:
            raise ValueError("CirclePL wants the normalized lift; use CirclePL.of")

    @staticmethod
    def of(lift: "LiftPL | CirclePL") -> "CirclePL":
        if isinstance(lift, CirclePL):
            return lift
        return CirclePL(lift.shift(-math.floor(lift.breakpoints[0][1])))

    @property
    def is_identity(self) -> bool:
        return self.lift.is_identity

    def compose(self, other: "CirclePL") -> "CirclePL":
        return CirclePL.of(self.lift.compose(other.lift))

    def inverse(self) -> "CirclePL":
        return CirclePL.of(self.lift.inverse())


CIRCLE_IDENTITY = CirclePL.of(IDENTITY)
