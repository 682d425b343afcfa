import os
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from eulerhom.plmaps import LiftPL, lift_from_breakpoints
from eulerhom.scenario import load_scenario
from eulerhom.words import Word

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "scenarios")


def scenario_path(name: str) -> str:
    return os.path.join(SCENARIO_DIR, name)


@pytest.fixture(scope="session")
def mixed_scenario():
    return load_scenario(scenario_path("mixed_two_generator.scn"))


@pytest.fixture(scope="session")
def abelian_scenario():
    return load_scenario(scenario_path("abelian_half.scn"))


@pytest.fixture(scope="session")
def trivial_scenario():
    return load_scenario(scenario_path("trivial_quotient.scn"))


# --- hypothesis strategies -------------------------------------------------

def small_fractions(max_den: int = 8, lo: int = -2, hi: int = 2):
    """Exact rationals p/q with q <= max_den, value in [lo, hi]."""
    return st.builds(
        Fraction,
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    )


@st.composite
def pl_lifts(draw, max_breaks: int = 4, max_den: int = 8) -> LiftPL:
    """A valid lift: strictly increasing, commutes with x -> x + 1."""
    n = draw(st.integers(1, max_breaks))
    xs = [Fraction(0)]
    if n > 1:
        interior = draw(
            st.lists(
                st.builds(Fraction, st.integers(1, max_den - 1), st.just(max_den)),
                min_size=n - 1,
                max_size=n - 1,
                unique=True,
            )
        )
        xs += sorted(interior)
    y0 = draw(small_fractions(max_den=max_den))
    gaps = draw(
        st.lists(st.integers(1, 6), min_size=len(xs) - 1, max_size=len(xs) - 1)
    )
    total = sum(gaps) + 1
    ys = [y0]
    for g in gaps:
        ys.append(ys[-1] + Fraction(g, total))  # keeps y_last < y0 + 1
    return lift_from_breakpoints(list(zip(xs, ys)))


@st.composite
def words(draw, n_gens: int = 2, max_len: int = 6) -> Word:
    letters = draw(
        st.lists(
            st.tuples(st.integers(0, n_gens - 1), st.sampled_from((1, -1))),
            max_size=max_len,
        )
    )
    return Word.of(letters)


# shared exact oracles
TWO_PIECE = lift_from_breakpoints([("0", "0"), ("1/2", "3/4")])
