import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpsrh.errors import NonconvergentInput, OutOfRange
from bpsrh.gw import constant_map_coefficient, gw_degenerate_series, lattice_sum, lattice_sum_closed_form
from bpsrh.io import load_fixture
from bpsrh.special import polylog_neg

TARGET = -math.pi**2 / math.sinh(math.pi) ** 2


def test_constant_map_genus_two():
    for chi in (-200, 1, 24, 7):
        assert constant_map_coefficient(chi, 2) == Fraction(chi, 5760)


def test_constant_map_against_formula():
    # chi (-1)^(g-1) B_2g B_(2g-2) / (4g (2g-2) (2g-2)!) for g = 3
    b6, b4 = Fraction(1, 42), Fraction(-1, 30)
    assert constant_map_coefficient(1, 3) == b6 * b4 / (12 * 4 * 24)


def test_lattice_sum_at_i():
    assert round(TARGET, 5) == -0.074
    K = 10**4
    raw = lattice_sum(1j, 2, K, tail=False)
    assert abs(raw - TARGET) < 2 / K
    assert abs(lattice_sum(1j, 2, K) - TARGET) < 1e-12
    closed = (2j * math.pi) ** 2 * polylog_neg(-1, math.exp(-2 * math.pi))
    assert abs(closed - TARGET) < 1e-14
    assert abs(lattice_sum_closed_form(1j, 2) - TARGET) < 1e-14


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(0.2, 2), st.integers(2, 6))
def test_lattice_sum_closed_form(re, im, p):
    z = complex(re, im)
    ref = complex(mpmath.nsum(lambda k: (z - k) ** (-p), [-mpmath.inf, mpmath.inf]))
    assert abs(lattice_sum_closed_form(z, p) - ref) <= 1e-10 * max(1.0, abs(ref))
    assert abs(lattice_sum(z, p, 2000) - ref) <= 1e-9 * max(1.0, abs(ref))


def test_closed_form_needs_upper_half_plane():
    with pytest.raises(NonconvergentInput):
        lattice_sum_closed_form(-1j, 2)
    with pytest.raises(ValueError):
        lattice_sum(1j, 1, 10)


def test_pure_constant_maps_without_gv():
    for c in gw_degenerate_series(-200, {}, 6):
        assert c.total == complex(float(c.constant_maps))


def test_series_from_fixture():
    chi, table = load_fixture("gv_quintic")
    series = gw_degenerate_series(chi, table, 4)
    assert [c.genus for c in series] == [2, 3, 4]
    assert series[0].constant_maps == Fraction(-5, 144)
    # genus-two GV part against a direct lattice sum
    g2 = float(series[0].constant_maps)
    for count, v in table.values():
        g2 += count / 240 * lattice_sum(v, 2, 20000) / (2j * math.pi) ** 2
    assert abs(series[0].total - g2) < 1e-6 * abs(series[0].total)


def test_series_checks():
    with pytest.raises(OutOfRange):
        gw_degenerate_series(1, {}, 1)
    with pytest.raises(NonconvergentInput):
        gw_degenerate_series(1, {"b": (1, 0.3 + 0j)}, 3)
