import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from massgrowth.dynamics import (
    AutoEquivalence,
    NotApplicableError,
    act,
    conjugation_invariance_check,
    estimate_displacement,
    exact_report,
    isometry_check,
    mass_growth_estimate,
    mass_growth_exact,
    mass_growth_slopes,
    random_autoequivalence,
    verify_free_proper,
    verify_metric_bounds,
    verify_quotient_bounds,
)
from massgrowth.laurent import LaurentMatrix, LaurentPoly, mat_pow
from massgrowth.perron import asymptotic_slopes, entropy_at
from massgrowth.semisimple import bridgeland_distance, random_stability

from conftest import autoequivalences

WORKED = AutoEquivalence((1, 0, 2), (1, 0, 2))


def test_validation():
    with pytest.raises(ValueError):
        AutoEquivalence((0, 0), (0, 0))
    with pytest.raises(ValueError):
        AutoEquivalence((0, 1), (0,))


def test_worked_three_simple_example():
    r = exact_report(WORKED)
    assert r.order == 2
    assert r.orbits == ((0, 1), (2,))
    assert r.orbit_totals == (1, 2)
    z = LaurentPoly.monomial
    assert mat_pow(WORKED.matrix(), 2) == LaurentMatrix([[z(1), 0, 0], [0, z(1), 0], [0, 0, z(4)]])
    # S_3 is shifted by 2 at every step, so both invariants are 2
    assert r.eventual_displacement == 2
    assert r.translation_length == 2
    assert r.conventional_classification == "parabolic"
    assert r.classification == "hyperbolic"


def test_worked_example_numerics():
    sigma = random_stability(0, 3)
    assert estimate_displacement(WORKED, sigma).infimum == pytest.approx(2.0, abs=0.1)
    assert mass_growth_slopes(WORKED) == (-2, Fraction(-1, 2))
    assert mass_growth_exact(WORKED, -2.0) == pytest.approx(4.0)
    assert entropy_at(WORKED.matrix(), -2.0) == pytest.approx(4.0)
    assert mass_growth_estimate(WORKED, sigma, 1.0) == pytest.approx(-0.5, abs=0.15)
    rep = verify_quotient_bounds(WORKED, sigma)
    assert rep.lower == pytest.approx(0.75)
    assert rep.passed


def test_two_cycle():
    r = exact_report(AutoEquivalence((1, 0), (1, 1)))
    assert r.order == 2 and r.diagonal_exponents == (2, 2)
    assert r.eventual_displacement == 1 == r.translation_length
    assert r.classification == r.conventional_classification == "hyperbolic"


def test_identity_is_elliptic():
    r = exact_report(AutoEquivalence.identity(3))
    assert r.classification == r.conventional_classification == "elliptic"
    assert r.eventual_displacement == 0


def test_unshifted_permutation_conventions_differ():
    r = exact_report(AutoEquivalence((1, 0, 2), (0, 0, 0)))
    assert r.classification == "elliptic"
    assert r.conventional_classification == "parabolic"
    assert bridgeland_distance(r.witness, act(AutoEquivalence((1, 0, 2), (0, 0, 0)), r.witness)) == 0.0


def test_shift_functor():
    s = AutoEquivalence.shift_functor(2, 3)
    assert mass_growth_exact(s, 1.5) == pytest.approx(4.5)
    assert exact_report(s).eventual_displacement == 3


@given(autoequivalences(), autoequivalences())
def test_group_laws(a, b):
    if a.size != b.size:
        return
    e = AutoEquivalence.identity(a.size)
    assert a.compose(a.inverse()) == e == a.inverse().compose(a)
    assert a.compose(b).matrix() == a.matrix() @ b.matrix()
    assert a.power(3) == a.compose(a).compose(a)
    assert a.power(a.order()).perm == e.perm


@given(autoequivalences(), st.integers(0, 1000))
def test_action_is_isometric_and_functorial(a, seed):
    r = np.random.default_rng(seed)
    s, t = random_stability(r, a.size), random_stability(r, a.size)
    assert isometry_check(a, s, t) < 1e-12
    b = random_autoequivalence(r, size=a.size)
    lhs, rhs = act(a.compose(b), s), act(a, act(b, s))
    assert bridgeland_distance(lhs, rhs) < 1e-12


@given(autoequivalences())
def test_witness_attains_translation_length(a):
    r = exact_report(a)
    assert abs(bridgeland_distance(r.witness, act(a, r.witness)) - float(r.translation_length)) <= 1e-12
    assert r.translation_length >= r.eventual_displacement


@given(autoequivalences())
def test_displacement_equals_slope_bound(a):
    assert verify_metric_bounds(a).equal
    assert mass_growth_slopes(a) == asymptotic_slopes(a.matrix())


@given(autoequivalences(), st.integers(0, 1000))
def test_displacement_estimate_sandwich(a, seed):
    est = estimate_displacement(a, random_stability(seed, a.size))
    d = float(est.exact)
    assert d - 1e-12 <= est.infimum <= d + est.envelope + 1e-12


def test_free_proper():
    rep = verify_free_proper(WORKED, random_stability(1, 3))
    assert rep.passed and rep.epsilon == 0.5
    with pytest.raises(NotApplicableError):
        verify_free_proper(AutoEquivalence.identity(2), random_stability(1, 2))


@given(autoequivalences(), st.integers(0, 1000))
def test_mass_growth_estimator(a, seed):
    s = random_stability(seed, a.size)
    for t in (-2.0, 0.0, 2.0):
        assert abs(mass_growth_estimate(a, s, t) - mass_growth_exact(a, t)) <= 0.15
        assert mass_growth_exact(a, t) == pytest.approx(entropy_at(a.matrix(), t), abs=1e-9)


@given(autoequivalences(), st.integers(1, 4), st.integers(-3, 3))
def test_power_and_shift_identities(a, k, d):
    for t in (-1.5, 0.0, 2.0):
        assert mass_growth_exact(a.power(k), t) == pytest.approx(k * mass_growth_exact(a, t), abs=1e-9)
        assert mass_growth_exact(a.then_shift(d), t) == pytest.approx(mass_growth_exact(a, t) + d * t, abs=1e-9)


@given(autoequivalences(), st.integers(0, 1000))
def test_conjugation_invariance(a, seed):
    b = random_autoequivalence(seed, size=a.size)
    assert conjugation_invariance_check(b, a).passed


def test_serialisation_roundtrip():
    a = random_autoequivalence(4)
    assert AutoEquivalence.from_dict(a.to_dict()) == a
    d = exact_report(WORKED).to_dict()
    assert d["eventual_displacement"] == {"num": 2, "den": 1}
