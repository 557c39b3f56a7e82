import math

import numpy as np
import pytest

from massgrowth.catalog import (
    ClosedForm,
    closed_form_displacement,
    closed_form_mass_growth,
    consistency_with_bounds,
)
from massgrowth.dynamics import AutoEquivalence, exact_report, mass_growth_exact


@pytest.mark.parametrize("n", range(2, 7))
def test_spherical_twist(n):
    cf = ClosedForm("spherical-twist", {"N": n})
    assert closed_form_mass_growth(cf, -2.0) == pytest.approx(2 * (n - 1))
    assert closed_form_mass_growth(cf, 3.0) == 0.0
    rep = consistency_with_bounds(cf)
    assert rep.passed and rep.max_region_violation == 0.0
    assert "kink" in " ".join(rep.notes)
    assert closed_form_displacement(cf).d == n - 1


def test_shift_matches_matrix_model():
    for n in (-3, 0, 2):
        cf = ClosedForm("shift", {"n": n})
        model = AutoEquivalence.shift_functor(3, n)
        for t in np.linspace(-5, 5, 11):
            assert abs(closed_form_mass_growth(cf, t) - mass_growth_exact(model, t)) <= 1e-12
        assert closed_form_displacement(cf).d == exact_report(model).eventual_displacement


def test_dhkk():
    cf = ClosedForm("dhkk", {"r": 2.0, "f0": 1})
    assert closed_form_mass_growth(cf, 1.0) == pytest.approx(math.log(2) - 1)
    assert closed_form_displacement(cf).d == 1
    rep = consistency_with_bounds(cf)
    assert rep.passed and rep.quotient_free
    assert rep.quotient_lower == pytest.approx(math.log(2))


def test_gepner_and_fractional_cy():
    g = ClosedForm("gepner", {"w": -0.75})
    assert closed_form_mass_growth(g, 2.0) == -1.5
    assert consistency_with_bounds(g).passed
    f = ClosedForm("fractional-cy", {"m": 3, "n": 2})
    assert closed_form_mass_growth(f, 2.0) == pytest.approx(3.0)
    assert consistency_with_bounds(f).passed
    assert closed_form_displacement(f).l is None


def test_serre_dimensions_store_slopes_only():
    cf = ClosedForm("serre-dim", {"lower": -1.0, "upper": 2.0})
    assert cf.slopes() == (-1.0, 2.0)
    with pytest.raises(ValueError):
        closed_form_mass_growth(cf, 0.0)
    disp = closed_form_displacement(cf)
    assert disp.lower_bound_only and disp.d == 2.0
    assert consistency_with_bounds(cf).passed


@pytest.mark.parametrize(
    "name,params",
    [
        ("spherical-twist", {"N": 1}),
        ("dhkk", {"r": 0.5, "f0": 0}),
        ("gepner", {"w": 1j}),
        ("serre-dim", {"lower": 2.0, "upper": 1.0}),
        ("nope", {}),
        ("shift", {}),
    ],
)
def test_domain_errors(name, params):
    with pytest.raises(ValueError):
        ClosedForm(name, params)
