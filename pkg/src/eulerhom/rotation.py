"""Translation numbers of exact PL lifts, with certificates.

tau() returns either an exact rational value certified by a periodic
point, or a sound enclosure.  The search works as follows.  The
displacement f(x) - x of a lift has max - min < 1 (for x < y < x + 1,
monotonicity and periodicity give |d(y) - d(x)| < 1), and tau always
lies in the closed displacement range.  So at most one integer can lie
in that range; if one does, continuity of the PL displacement makes it
the translation number, witnessed by a fixed point of f composed with
T^-n.  Otherwise the translation number lies strictly between
consecutive integers and, after shifting into (0, 1), candidates p/q
are tested by walking the Stern-Brocot tree: a mediant p/q is accepted
when g^q(x) - x - p attains 0 (checked exactly on the breakpoints of
g^q), and refines the bracketing interval otherwise.  Mediant
denominators add, so g^q is always obtained by composing the two
bracketing powers already at hand.  When the budget or a breakpoint cap
stops the search, orbit iterates of 0 give the enclosure
[(g^k(0) - 1)/k, (g^k(0) + 1)/k], intersected over k and with the
bracketing interval.

A pleasant consequence of the displacement-range fact: floor(tau) is
always decided exactly, either as the unique integer in the range or as
floor of the range.  tau_floor therefore never returns an enclosure for
a valid lift, and the integral Euler cocycle below is total on PL maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .plmaps import CirclePL, LiftPL, Rational

DEFAULT_BREAKPOINT_CAP = 10_000


class IndeterminateTau(ArithmeticError):
    """An exact value was required but only an enclosure is known."""

    def __init__(self, enclosure: "TauEnclosure", context: str = ""):
        self.enclosure = enclosure
        msg = f"translation number only enclosed in [{enclosure.lo}, {enclosure.hi}]"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


@dataclass(frozen=True)
class ExactTau:
    """Certified value: witness is a point with f^q(witness) = witness + p."""

    value: Rational
    witness: Rational


@dataclass(frozen=True)
class TauEnclosure:
    """Sound bracket lo <= tau <= hi."""

    lo: Rational
    hi: Rational


TauResult = Union[ExactTau, TauEnclosure]

# Floors are decided by the displacement range, so the enclosure arm of
# this union is never produced for a valid lift; it is kept so callers
# can stay agnostic about that fact.
FloorResult = Union[int, TauEnclosure]


def _zero_of_displacement(h: LiftPL, p: int) -> Rational | None:
    """An exact x with h(x) = x + p, or None when h(x) - x - p has constant sign.

    The displacement is PL with extremes at breakpoints, so it attains 0
    iff its breakpoint values straddle or hit 0; the zero is then solved
    on the straddling segment.
    """
    bps = h.breakpoints
    vals = [(x, y - x - p) for x, y in bps]
    if all(v > 0 for _, v in vals) or all(v < 0 for _, v in vals):
        return None
    for x, v in vals:
        if v == 0:
            return x
    closed = vals + [(Fraction(1), vals[0][1])]
    for (x0, v0), (x1, v1) in zip(closed, closed[1:]):
        if v0 * v1 < 0:
            return x0 + v0 * (x1 - x0) / (v0 - v1)
    raise AssertionError("sign change vanished")


def _integer_candidate(f: LiftPL) -> int | None:
    """The unique integer in the displacement range, if any."""
    dmin, dmax = f.displacement_bounds()
    n = math.ceil(dmin)
    return n if n <= math.floor(dmax) else None


def _tau_search(f: LiftPL, budget: int, cap: int) -> TauResult:
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = _integer_candidate(f)
    if n is not None:
        x0 = _zero_of_displacement(f, n)
        assert x0 is not None
        return ExactTau(Fraction(n), x0)

    base = math.floor(f.displacement_bounds()[0])
    g = f.shift(-base)
    # invariant: g^ql(x) > x + pl and g^qr(x) < x + pr pointwise
    pl, ql, gl = 0, 1, g
    pr, qr, gr = 1, 1, g
    lo, hi = Fraction(0), Fraction(1)
    while ql + qr <= budget:
        if gl.breakpoint_count + gr.breakpoint_count > cap:
            break
        p, q = pl + pr, ql + qr
        gm = gl.compose(gr)
        x0 = _zero_of_displacement(gm, p)
        if x0 is not None:
            return ExactTau(Fraction(base * q + p, q), x0)
        if gm.breakpoints[0][1] > p:
            pl, ql, gl, lo = p, q, gm, Fraction(p, q)
        else:
            pr, qr, gr, hi = p, q, gm, Fraction(p, q)

    x = Fraction(0)
    for k in range(1, budget + 1):
        x = g(x)
        lo = max(lo, (x - 1) / k)
        hi = min(hi, (x + 1) / k)
    assert lo <= hi
    return TauEnclosure(base + lo, base + hi)


@lru_cache(maxsize=None)
def _tau_cached(f: LiftPL, budget: int, cap: int) -> TauResult:
    return _tau_search(f, budget, cap)


def tau(f: LiftPL, budget: int, *, breakpoint_cap: int = DEFAULT_BREAKPOINT_CAP) -> TauResult:
    """Translation number of the lift f: exact with witness, or an enclosure.

    The enclosure endpoints bracket tau soundly and, when the full orbit
    budget is spent, differ by at most 2/budget.
    """
    return _tau_cached(f, budget, breakpoint_cap)


def exact_tau(f: LiftPL, budget: int, *, breakpoint_cap: int = DEFAULT_BREAKPOINT_CAP) -> Rational:
    """The certified translation number, raising IndeterminateTau otherwise."""
    r = tau(f, budget, breakpoint_cap=breakpoint_cap)
    if isinstance(r, ExactTau):
        return r.value
    raise IndeterminateTau(r, "exact translation number required")


def tau_floor(f: LiftPL, budget: int) -> FloorResult:
    """floor(tau(f)), decided exactly from the displacement range.

    budget is accepted for interface symmetry with tau but is not
    consumed: either the range contains its unique integer (then tau
    equals it) or the range, of width < 1, lies strictly between
    consecutive integers.
    """
    del budget
    n = _integer_candidate(f)
    if n is not None:
        return n
    return math.floor(f.displacement_bounds()[0])


def tau_floor_strict(f: LiftPL, budget: int) -> int:
    r = tau_floor(f, budget)
    if isinstance(r, TauEnclosure):
        raise IndeterminateTau(r, "determined floor required")
    return r


def rotation_frac(f: LiftPL, budget: int) -> Rational:
    """Fractional part tau - floor(tau); needs an exact tau.

    Depends only on the underlying circle map, so it descends from lifts
    to circle maps (tested, not enforced here).
    """
    r = tau(f, budget)
    if isinstance(r, ExactTau):
        return r.value - math.floor(r.value)
    raise IndeterminateTau(r, "fractional part requires an exact translation number")


def euler_chi(f: CirclePL, g: CirclePL, budget: int) -> Rational:
    """Canonical real Euler 2-cocycle chi(f, g) = tau(FG) - tau(F) - tau(G).

    Independent of the choice of lifts F, G (the normalized ones are
    used); raises IndeterminateTau unless all three values are exact.
    """
    comp = f.lift.compose(g.lift)
    return (
        exact_tau(comp, budget)
        - exact_tau(f.lift, budget)
        - exact_tau(g.lift, budget)
    )


def euler_chi_int(f: CirclePL, g: CirclePL, budget: int) -> int:
    """Integral Euler 2-cocycle: floors of tau on normalized lifts.

    Takes values in {-1, 0, 1}; total on PL maps because floors always
    settle.
    """
    comp = f.lift.compose(g.lift)
    return (
        tau_floor_strict(comp, budget)
        - tau_floor_strict(f.lift, budget)
        - tau_floor_strict(g.lift, budget)
    )


def circle_b(f: CirclePL, budget: int) -> Rational:
    """The rotation number in [0, 1) of a circle map (fractional part of tau)."""
    return rotation_frac(f.lift, budget)
