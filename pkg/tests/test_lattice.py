from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpsrh.errors import AsymmetricForm, SymmetryViolation, ValidationError, ZeroCentralCharge
from bpsrh.lattice import (
    active_rays,
    classify,
    double,
    dt_from_omega,
    from_enumerator,
    kronecker_structure,
    make_bps_structure,
    mobius,
    omega_from_dt,
)


def a1():
    return make_bps_structure([[0]], [1j], {(1,): 1})


def test_a1_is_valid_and_symmetrized():
    s = a1()
    assert s.rank == 1
    assert s.omega == {(1,): 1, (-1,): 1}
    assert s.support_constant > 0


def test_symmetry_violation():
    with pytest.raises(SymmetryViolation):
        make_bps_structure([[0]], [1j], {(1,): 1, (-1,): 2})


def test_asymmetric_form_rejected():
    with pytest.raises(AsymmetricForm):
        make_bps_structure([[0, 1], [2, 0]], [1, 1j], {})
    with pytest.raises(AsymmetricForm):
        make_bps_structure([[1, 0], [0, 0]], [1, 1j], {})


def test_zero_central_charge_on_active_class():
    with pytest.raises(ZeroCentralCharge):
        make_bps_structure([[0, 0], [0, 0]], [1, -1], {(1, 1): 1})
    # exact charges catch it without rounding
    with pytest.raises(ZeroCentralCharge):
        make_bps_structure([[0, 0], [0, 0]], [("1/3", 0), ("-1/3", 0)], {(1, 1): 1})


def test_errors_are_value_errors():
    assert issubclass(SymmetryViolation, ValueError)
    with pytest.raises(ValidationError):
        make_bps_structure([[0]], [1j, 1], {})


def test_kronecker_valid():
    for k in (1, 2, 3):
        s = make_bps_structure([[0, -k], [k, 0]], [1j, -1 + 1j], {(1, 0): 1, (0, 1): 1})
        assert s.pair((1, 0), (0, 1)) == -k


@pytest.mark.parametrize(
    "omega, gamma, expected",
    [
        ({(1,): 1, (2,): 1}, (2,), Fraction(5, 4)),
        ({(1,): 1}, (1,), Fraction(1)),
        ({(1,): 1}, (3,), Fraction(1, 9)),
        ({(1,): 1}, (0,), Fraction(0)),
    ],
)
def test_dt_from_omega(omega, gamma, expected):
    assert dt_from_omega(omega, gamma) == expected


def test_omega_from_dt_examples():
    assert omega_from_dt({(1,): 1, (2,): Fraction(5, 4)}, (2,)) == 1
    assert omega_from_dt({(1,): 1}, (1,)) == 1


def test_mobius_values():
    assert [mobius(m) for m in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


@settings(max_examples=200, deadline=None)
@given(
    rank=st.integers(1, 3),
    data=st.data(),
)
def test_dt_omega_roundtrip(rank, data):
    keys = data.draw(
        st.lists(st.tuples(*[st.integers(-4, 4)] * rank), min_size=1, max_size=8, unique=True)
    )
    table = {
        k: Fraction(data.draw(st.integers(-8, 8)), data.draw(st.integers(1, 8)))
        for k in keys
        if any(k)
    }
    dt = {}
    for k in table:
        for m in range(1, 5):
            g = tuple(m * x for x in k)
            dt[g] = dt_from_omega(table, g)
    for k, v in table.items():
        assert omega_from_dt(dt, k) == v


def test_a1_rays():
    rays = active_rays(a1(), 10)
    assert [r.direction for r in rays] == [1j, -1j]
    assert [r.height for r in rays] == [1.0, 1.0]


def test_kronecker_plus_has_four_rays():
    s = kronecker_structure(1)
    assert len(active_rays(s, 10)) == 4


def test_empty_rays():
    s = make_bps_structure([[0]], [1j], {})
    assert active_rays(s) == []


def test_height_bound_filters():
    s = make_bps_structure([[0, 0], [0, 0]], [1j, 3], {(1, 0): 1, (0, 1): 1})
    assert len(active_rays(s, 2)) == 2
    assert len(active_rays(s)) == 4


@given(st.floats(0.01, 100))
def test_rays_rescale(lam):
    s = make_bps_structure([[0, 0], [0, 0]], [1j, 2 - 1j], {(1, 0): 1, (0, 1): 2, (1, 1): -1})
    t = s.with_central_charge([lam * z for z in s.central_charge])
    r1, r2 = active_rays(s), active_rays(t)
    assert [r.classes for r in r1] == [r.classes for r in r2]
    for a, b in zip(r1, r2):
        assert abs(a.direction - b.direction) < 1e-12
        assert b.height == pytest.approx(lam * a.height, rel=1e-12)


def test_classify_a1():
    f = classify(a1())
    assert (f.finite, f.uncoupled, f.generic, f.integral) == (True, True, True, True)


def test_classify_kronecker_two_minus():
    s = kronecker_structure(2, z1=-1 + 1j, z2=1j, max_degree=6)
    f = classify(s)
    assert not f.finite
    assert (f.uncoupled, f.generic, f.integral) == (False, True, True)


def test_classify_joyce_song_nonintegral():
    s = make_bps_structure([[0, -3], [3, 0]], [1j, 2j], {(1, 0): 1, (0, 1): 1, (1, 1): Fraction(-3, 2)})
    assert not classify(s).integral


def test_double_a1():
    d = double(a1())
    assert d.rank == 2
    assert d.skew == ((0, -1), (1, 0))
    assert d.pair((0, 1), (1, 0)) == 1
    assert set(d.omega) == {(1, 0), (-1, 0)}
    assert d.support_constant == a1().support_constant


def test_double_preserves_uncoupled():
    s = make_bps_structure([[0, 1], [-1, 0]], [1j, 1], {(1, 0): 1, (0, 1): 1})
    assert classify(double(s)).uncoupled == classify(s).uncoupled is False
    u = make_bps_structure([[0, 0], [0, 0]], [1j, 1], {(1, 0): 1, (0, 1): 1})
    assert classify(double(u)).uncoupled is True
    assert all(g[2:] == (0, 0) for g in double(u).omega)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=10), min_size=2, max_size=2))
def test_support_property(zs):
    s = make_bps_structure([[0, 0], [0, 0]], zs, {(1, 0): 1, (0, 1): 3})
    C = s.support_constant
    for g in s.active_classes:
        assert abs(s.Z(g)) > C * s.norm(g)


def test_exact_ray_comparison():
    s = make_bps_structure([[0, 0], [0, 0]], [("1/3", "1/7"), ("2/3", "2/7")], {(1, 0): 1, (0, 1): 1})
    assert s.same_ray((1, 0), (0, 1))
    assert len(active_rays(s)) == 2


def test_from_enumerator_truncates():
    def gen(bound):
        for m in range(1, 100):
            yield (m,), 1

    s = from_enumerator([[0]], [1j], gen, 3.5)
    assert sorted(s.omega) == [(-3,), (-2,), (-1,), (1,), (2,), (3,)]
    assert not classify(s).finite
