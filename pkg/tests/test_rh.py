import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpsrh.errors import (
    ActiveRay,
    DegenerateForm,
    NotFinite,
    NotIntegral,
    NotUncoupled,
    OutsideHalfPlane,
    ValidationError,
)
from bpsrh.io import load_fixture
from bpsrh.lattice import active_rays, double, from_enumerator, make_bps_structure
from bpsrh.rh import (
    RhSolution,
    TauEvaluator,
    a1_double_relation_residual,
    constant_term,
    fit_tau_coefficients,
    jump_residual,
    log_psi,
    sample_jump_times,
    solve_phi,
    solve_psi,
    tau_asymptotic_coeff,
    tau_asymptotic_coeff_exact,
    tau_eval,
    tau_log_coeff,
    tau_pde_report,
    tau_pde_residual,
    verify_limits,
)
from bpsrh.special import lambda_fn, log_lambda, upsilon_fn
from bpsrh.torus import eval_twisted, quadratic_refinement

GAMMA, DUAL = (1, 0), (0, 1)


def a1_double(z=1):
    return double(make_bps_structure([[0]], [z], {(1,): 1}))


def test_null_beta_gives_one():
    sol = RhSolution(a1_double())
    for t in (0.3j, 1 + 1j, 2 - 0.1j):
        r = t / abs(t)
        assert solve_psi(sol, r, GAMMA, t) == 1


def test_psi_reduces_to_lambda_one():
    sol = RhSolution(a1_double(2j * math.pi))
    assert abs(solve_psi(sol, 1, DUAL, 1) - math.e / math.sqrt(2 * math.pi)) < 1e-14
    # the opposite ray sees -gamma, which pairs with the opposite sign
    assert abs(solve_psi(sol, -1, DUAL, -1) * math.e / math.sqrt(2 * math.pi) - 1) < 1e-14


def test_no_active_classes():
    s = make_bps_structure([[0, 1], [-1, 0]], [1, 1j], {})
    sol = RhSolution(s)
    assert solve_psi(sol, 1, DUAL, 0.5) == 1
    assert tau_eval(TauEvaluator(s, 1), None, 0.5) == 1


def test_phi_on_active_class():
    sol = RhSolution(a1_double(1 + 2j))
    t = 0.3 + 0.2j
    assert solve_phi(sol, t, GAMMA, t) == pytest.approx(cmath.exp(-(1 + 2j) / t), abs=1e-15)
    assert solve_phi(sol, t, (0, 0), t) == 1


def test_solution_requirements():
    coupled = make_bps_structure([[0, 1], [-1, 0]], [1, 1j], {GAMMA: 1, DUAL: 1})
    with pytest.raises(NotUncoupled):
        RhSolution(coupled)
    with pytest.raises(NotIntegral):
        RhSolution(make_bps_structure([[0]], [1], {(1,): Fraction(1, 2)}))
    truncated = from_enumerator([[0]], [1j], lambda b: [((m,), 1) for m in range(1, 5)], 2.5)
    with pytest.raises(NotFinite):
        RhSolution(truncated)


def test_psi_domain_errors():
    sol = RhSolution(a1_double())
    with pytest.raises(ActiveRay):
        log_psi(sol, 1, DUAL, 1)
    with pytest.raises(OutsideHalfPlane):
        log_psi(sol, 1j, DUAL, -1j)


def test_constant_term_fixes_refinement_defect():
    s = make_bps_structure([[0, 1], [-1, 0]], [1, 1j], {(1, 1): 1})
    assert eval_twisted(quadratic_refinement(s), (1, 1)) == -1
    xi = constant_term(s)
    assert abs(eval_twisted(xi, (1, 1)) - 1) < 1e-15
    RhSolution(s)


def test_bad_constant_term_rejected():
    s = make_bps_structure([[0, 1], [-1, 0]], [1, 1j], {(1, 1): 1})
    with pytest.raises(ValidationError):
        RhSolution(s, quadratic_refinement(s))


def test_a1_jump_example():
    sol = RhSolution(a1_double())
    t = 0.1 * cmath.exp(0.25j * math.pi)
    assert jump_residual(sol, GAMMA, DUAL, t) < 1e-10
    assert jump_residual(sol, GAMMA, GAMMA, t) < 1e-14
    assert a1_double_relation_residual(1, t) < 1e-10


@pytest.mark.parametrize("z", [1, 2 + 1j])
def test_a1_double_relations(z):
    rng = np.random.default_rng(3)
    for _ in range(20):
        for side in (1, -1):
            ang = cmath.phase(side * z) + rng.uniform(-1.4, 1.4)
            t = rng.uniform(0.05, 2) * cmath.exp(1j * ang)
            assert a1_double_relation_residual(z, t) < 1e-10


def test_fixture_jumps():
    s = load_fixture("rank4_uncoupled")
    sol = RhSolution(s)
    rng = np.random.default_rng(11)
    basis = [tuple(int(i == j) for i in range(4)) for j in range(4)]
    for ray in active_rays(s):
        for t in sample_jump_times(s, ray, 10, rng):
            for b in basis:
                assert jump_residual(sol, ray, b, t) < 1e-10


def _uncoupled_structures():
    @st.composite
    def build(draw):
        n = draw(st.integers(1, 4))
        # a random form plus a class set in a common isotropic sublattice
        skew = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = draw(st.integers(-2, 2))
                skew[i][j], skew[j][i] = v, -v
        direction = draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n).filter(any))
        classes = {tuple(m * d for d in direction) for m in range(1, draw(st.integers(1, 3)) + 1)}
        if n >= 2:
            extra = tuple(draw(st.integers(-2, 2)) for _ in range(n))
            if any(extra) and all(
                sum(extra[i] * skew[i][j] * g[j] for i in range(n) for j in range(n)) == 0 for g in classes
            ):
                classes.add(extra)
        z = [complex(draw(st.floats(-3, 3)), draw(st.floats(-3, 3))) for _ in range(n)]
        omega = {g: draw(st.integers(-2, 3).filter(bool)) for g in classes}
        return skew, z, omega

    return build()


@settings(max_examples=30, deadline=None)
@given(_uncoupled_structures(), st.integers(0, 2**32 - 1))
def test_jump_property(data, seed):
    skew, z, omega = data
    try:
        s = make_bps_structure(skew, z, omega)
    except ValidationError:
        return
    if min(abs(s.Z(g)) for g in s.active_classes) < 1e-3:
        return
    sol = RhSolution(s)
    rng = np.random.default_rng(seed)
    n = s.rank
    for ray in active_rays(s):
        for t in sample_jump_times(s, ray, 50, rng):
            for j in range(n):
                b = tuple(int(i == j) for i in range(n))
                assert jump_residual(sol, ray, b, t) < 1e-10


def test_limit_near_zero():
    sol = RhSolution(a1_double())
    t = 1e-3j
    psi = solve_psi(sol, 1j, DUAL, t)
    w = 1 / (2 * math.pi * 1e-3)
    # |Psi - 1| is governed by the leading Stirling term 1/(12 w)
    assert abs(psi - 1 / lambda_fn(w)) < 1e-14
    assert abs(abs(psi - 1) - 1 / (12 * w)) < 1e-6


def test_limits_and_growth():
    sol = RhSolution(a1_double())
    ts = [1e-2j * 10 ** (-k / 2) for k in range(9)]
    large = [1j * 10 ** (k / 2) for k in range(6, 13)]
    report = verify_limits(sol, 1j, DUAL, ts, large)
    assert report.monotone and report.final < 1e-6
    assert report.growth_exponent == pytest.approx(0.5, abs=5e-3)
    null = verify_limits(sol, 1j, GAMMA, ts)
    assert all(d == 0 for d in null.differences)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 3), st.floats(-1.3, 1.3), st.floats(0, 2 * math.pi))
def test_sigma_symmetry(mod, ang, rot):
    s = a1_double(cmath.exp(1j * rot))
    sol = RhSolution(s, quadratic_refinement(s))
    r = cmath.exp(1j * (rot + 0.5 * math.pi))
    t = mod * r * cmath.exp(1j * ang)
    for beta in (DUAL, (1, 1), (2, -1)):
        a = solve_phi(sol, r, beta, t)
        b = solve_phi(sol, -r, tuple(-x for x in beta), -t)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 5), st.floats(-math.pi, math.pi), st.floats(0.1, 3))
def test_rescaling_covariance(lam_mod, lam_arg, mod):
    lam = lam_mod * cmath.exp(1j * lam_arg)
    s = load_fixture("rank4_uncoupled")
    scaled = s.with_central_charge([lam * z for z in s.central_charge])
    r = 1j
    rays = [ray.arg for ray in active_rays(s)]
    if min(abs(cmath.phase(cmath.exp(1j * a) / r)) for a in rays) < 1e-6:
        return
    t = mod * r * cmath.exp(0.3j)
    a, b = RhSolution(s), RhSolution(scaled)
    for beta in ((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 1)):
        u = solve_phi(a, r, beta, t)
        v = solve_phi(b, lam * r, beta, lam * t)
        assert abs(u - v) <= 1e-12 * max(1.0, abs(u))


# -- tau --------------------------------------------------------------------


def test_tau_reduces_to_upsilon_one():
    te = TauEvaluator(a1_double(2j * math.pi), 1)
    assert abs(tau_eval(te, None, 1) - upsilon_fn(1)) < 1e-14


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 10), st.floats(-1.2, 1.2))
def test_tau_scale_invariance(lam, ang):
    te = TauEvaluator(a1_double(), 1j)
    t = 0.4j * cmath.exp(1j * ang)
    a = tau_eval(te, [1, 0], t)
    b = tau_eval(te, [lam, 0], lam * t)
    assert abs(a - b) <= 1e-12 * abs(a)


def test_tau_pde_example():
    te = TauEvaluator(a1_double(), 1j)
    report = tau_pde_report(te, [1, 0], 0.2j)
    assert report.residual < 1e-6
    null_row = [row for row in report.rows if row[0] == 0][0]
    assert null_row[1] == 0 and null_row[2] == 0


def test_tau_pde_literal_sign_fails():
    # the sign as printed does not hold for the product formulas
    te = TauEvaluator(a1_double(), 1j)
    assert tau_pde_residual(te, [1, 0], 0.2j, convention="literal") > 1e-2


def test_tau_pde_order_two():
    te = TauEvaluator(a1_double(), 1j)
    r1 = tau_pde_residual(te, [1, 0], 0.2j, h=1e-2)
    r2 = tau_pde_residual(te, [1, 0], 0.2j, h=5e-3)
    assert 3.5 < r1 / r2 < 4.5


def test_tau_pde_degenerate():
    s = make_bps_structure([[0]], [1], {(1,): 1})
    with pytest.raises(DegenerateForm):
        tau_pde_report(TauEvaluator(s, 1j), None, 0.2j)


def test_tau_coefficients_exact():
    s = a1_double()
    assert tau_log_coeff(s) == Fraction(1, 12)
    assert tau_asymptotic_coeff_exact(s, 2) == (Fraction(-1, 240), 0)
    assert tau_asymptotic_coeff_exact(s, 3) == (Fraction(1, 1008), 0)
    assert tau_asymptotic_coeff(s, 2) == pytest.approx(-1 / 240)


def test_tau_fit():
    te = TauEvaluator(a1_double(), -1j)
    ts = [-1j / (2 * math.pi * w) for w in np.linspace(3, 15, 80)]
    fit = fit_tau_coefficients(te, ts, 10)
    assert abs(fit[2] / (-1 / 240) - 1) < 1e-4
    assert abs(fit[3] / (1 / 1008) - 1) < 1e-4


def test_log_upsilon_consistent_with_lambda():
    # d/dw log Upsilon = w d/dw log Lambda at a sample point, as used by the tau equation
    w, h = 3 - 2j, 1e-5
    from bpsrh.special import log_upsilon

    du = (log_upsilon(w + h) - log_upsilon(w - h)) / (2 * h)
    dl = (log_lambda(w + h) - log_lambda(w - h)) / (2 * h)
    assert abs(du - w * dl) < 1e-7
