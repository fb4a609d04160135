"""Explicit solution of the RH problem for finite, integral, uncoupled structures.

For a non-active ray r and t in the half-plane H_r = {Re(t/r) > 0},

    Psi_{r,beta}(t) = prod Lambda(Z(gamma) / 2 pi i t)^{Omega(gamma) <beta, gamma>},

the product running over active gamma with Z(gamma) in i H_r, i.e.
Im(Z(gamma)/r) > 0.  Then Phi = exp(-Z(beta)/t) * Psi * xi(beta).  The tau
function replaces Lambda by Upsilon and the exponent by Omega(gamma).
"""

from __future__ import annotations

import cmath
import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ActiveRay,
    DegenerateForm,
    DomainViolation,
    NotFinite,
    NotIntegral,
    NotUncoupled,
    OutsideHalfPlane,
    ValidationError,
)
from .lattice import RAY_TOL, BpsStructure, as_ray, classify, make_bps_structure
from .special import bernoulli, log_lambda, log_upsilon
from .torus import TorusPoint, eval_twisted, quadratic_refinement, refinement_sign

log = logging.getLogger(__name__)

MAX_ACTIVE = 10_000
XI_TOL = 1e-12
TWO_PI_I = 2j * math.pi


# ---------------------------------------------------------------------------
# constant terms


def _integer_row_reduce(rows: list) -> list:
    """Integer row echelon form (Euclid on each column); keeps the last entry as data."""
    rows = [list(r) for r in rows]
    width = len(rows[0]) - 1 if rows else 0
    top = 0
    for col in range(width):
        while True:
            nonzero = [i for i in range(top, len(rows)) if rows[i][col] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: abs(rows[i][col]))
            rows[top], rows[piv] = rows[piv], rows[top]
            done = True
            for i in range(top + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // rows[top][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
                    if rows[i][col]:
                        done = False
            if done:
                top += 1
                break
    return rows


def constant_term(s: BpsStructure) -> TorusPoint:
    """A point xi with xi(gamma) = 1 on every active class.

    The quadratic refinement is used when it already works.  Otherwise the
    sign defect s(gamma) in Z/2 is a homomorphism on the span of the active
    classes (they pair to zero), and we solve m(gamma).theta = s(gamma) mod 2
    on a Z-basis of that span; xi has coordinates exp(i pi theta).
    """
    active = [g for g in s.active_classes]
    defects = [0 if refinement_sign(s, g) == 1 else 1 for g in active]
    g0 = quadratic_refinement(s)
    if not any(defects):
        return g0
    reduced = _integer_row_reduce([list(g) + [d] for g, d in zip(active, defects)])
    basis_rows = []
    for row in reduced:
        if any(row[:-1]):
            basis_rows.append(row)
        elif row[-1] % 2:
            raise ValidationError("no constant term is trivial on the active classes")
    from .formal import _solve_rational

    n = s.rank
    # solve sum_i theta_i m_i = defect for the basis rows (independent over Q)
    columns = [[row[i] for row in basis_rows] for i in range(n)]
    theta = _solve_rational(columns, [row[-1] for row in basis_rows])
    if theta is None:
        raise ValidationError("no constant term is trivial on the active classes")
    coords = []
    for th in theta:
        th = Fraction(th) % 2
        if th == 0:
            coords.append(1)
        elif th == 1:
            coords.append(-1)
        else:
            coords.append(cmath.exp(1j * math.pi * float(th)))
    return TorusPoint(s, tuple(coords))


# ---------------------------------------------------------------------------
# solution


@dataclass(frozen=True)
class RhSolution:
    structure: BpsStructure
    xi: Optional[TorusPoint] = None

    def __post_init__(self):
        s = self.structure
        flags = classify(s)
        if not flags.finite:
            raise NotFinite("the explicit solution needs a finite (untruncated) support")
        if len(s.active_classes) > MAX_ACTIVE:
            raise NotFinite(f"more than {MAX_ACTIVE} active classes")
        if not flags.integral:
            raise NotIntegral("the explicit solution needs integral invariants")
        if not flags.uncoupled:
            raise NotUncoupled("the explicit solution needs an uncoupled structure")
        xi = self.xi if self.xi is not None else constant_term(s)
        for g in s.active_classes:
            if abs(complex(eval_twisted(xi, g)) - 1) > XI_TOL:
                raise ValidationError(f"xi({g}) = {eval_twisted(xi, g)} is not 1")
        object.__setattr__(self, "xi", xi)


def _direction(r) -> complex:
    if hasattr(r, "direction"):
        r = r.direction
    r = complex(r)
    if r == 0:
        raise ValidationError("ray direction must be nonzero")
    return r / abs(r)


def _check_ray_inactive(s: BpsStructure, r: complex):
    for g in s.active_classes:
        if abs(cmath.phase(s.Z(g) / r)) < RAY_TOL:
            raise ActiveRay(f"ray {r} carries the active class {g}")


def _check_half_plane(r: complex, t: complex):
    if not (t / r).real > 0:
        raise OutsideHalfPlane(f"t = {t} is not in the half-plane centred on {r}")


def upper_classes(s: BpsStructure, r: complex, charges=None) -> list:
    """Active classes with Z(gamma) in i H_r, i.e. Im(Z(gamma)/r) > 0."""
    out = []
    for g in s.active_classes:
        z = s.Z(g) if charges is None else _charge(charges, g)
        q = z / r
        if abs(q.imag) <= 1e-14 * abs(q):
            warnings.warn(f"Z{g} lies on the boundary of i H_r; factor excluded", RuntimeWarning)
            continue
        if q.imag > 0:
            out.append((g, z))
    return out


def _charge(charges: Sequence[complex], g) -> complex:
    return sum((m * complex(c) for m, c in zip(g, charges)), 0j)


def log_psi(sol: RhSolution, r, beta: Sequence[int], t: complex) -> complex:
    s = sol.structure
    r = _direction(r)
    t = complex(t)
    _check_ray_inactive(s, r)
    _check_half_plane(r, t)
    total = 0j
    for g, z in upper_classes(s, r):
        e = int(s.omega_of(g)) * s.pair(beta, g)
        if e:
            total += e * log_lambda(z / (TWO_PI_I * t))
    return total


def solve_psi(sol: RhSolution, r, beta: Sequence[int], t: complex) -> complex:
    return cmath.exp(log_psi(sol, r, beta, t))


def log_phi(sol: RhSolution, r, beta: Sequence[int], t: complex) -> complex:
    s = sol.structure
    t = complex(t)
    xi_b = complex(eval_twisted(sol.xi, beta))
    return -s.Z(beta) / t + log_psi(sol, r, beta, t) + cmath.log(xi_b)


def solve_phi(sol: RhSolution, r, beta: Sequence[int], t: complex) -> complex:
    return cmath.exp(log_phi(sol, r, beta, t))


# ---------------------------------------------------------------------------
# jumps


def _perturbation(s: BpsStructure, ell: complex) -> float:
    """Half the angular gap from ell to the nearest other ray of +-Z(active)."""
    gaps = []
    for g in s.active_classes:
        for z in (s.Z(g), -s.Z(g)):
            a = abs(cmath.phase(z / ell))
            if a > RAY_TOL:
                gaps.append(a)
    return min([1e-3] + [0.5 * a for a in gaps])


def jump_residual(sol: RhSolution, ray, beta: Sequence[int], t: complex, delta: Optional[float] = None) -> float:
    """|Phi_{r-,beta} - Phi_{r+,beta} prod (1 - Phi_gamma)^{Omega <beta,gamma>}| / |Phi_{r-,beta}|.

    r- and r+ are anticlockwise and clockwise perturbations of the active ray.
    """
    s = sol.structure
    ray = as_ray(s, ray)
    if not ray.classes:
        raise ValidationError("verify_jump needs an active ray")
    ell = ray.direction
    t = complex(t)
    delta = _perturbation(s, ell) if delta is None else delta
    r_minus = ell * cmath.exp(1j * delta)
    r_plus = ell * cmath.exp(-1j * delta)
    if not ((t / r_minus).real > 0 and (t / r_plus).real > 0):
        raise DomainViolation(f"t = {t} is not in both perturbed half-planes")
    diff = log_phi(sol, r_plus, beta, t) - log_phi(sol, r_minus, beta, t)
    for g in ray.classes:
        e = int(s.omega_of(g)) * s.pair(beta, g)
        if not e:
            continue
        phi_g = solve_phi(sol, r_plus, g, t)
        if not abs(phi_g) < 1:
            raise DomainViolation(f"|Phi_{g}(t)| = {abs(phi_g)} is not below 1")
        diff += e * complex(np.log1p(np.complex128(-phi_g)))
    return abs(complex(np.expm1(np.complex128(diff))))


verify_jump = jump_residual


def sample_jump_times(s: BpsStructure, ray, count: int, rng: np.random.Generator, scale=(0.05, 0.5)) -> list:
    """Points t in the half-plane of an active ray, |t| in scale * min|Z|."""
    ray = as_ray(s, ray)
    zmin = min(abs(s.Z(g)) for g in s.active_classes)
    delta = _perturbation(s, ray.direction)
    out = []
    for _ in range(count):
        mod = zmin * rng.uniform(*scale)
        ang = rng.uniform(-0.5 * math.pi + 2 * delta + 0.05, 0.5 * math.pi - 2 * delta - 0.05)
        out.append(ray.direction * mod * cmath.exp(1j * ang))
    return out


# ---------------------------------------------------------------------------
# limits


@dataclass
class LimitReport:
    beta: tuple
    ts: list
    differences: list
    monotone: bool
    final: float
    growth_ts: list = field(default_factory=list)
    growth_exponent: Optional[float] = None

    @property
    def converged(self) -> bool:
        return self.monotone


def verify_limits(
    sol: RhSolution,
    r,
    beta: Sequence[int],
    t_sequence: Sequence[complex],
    large_t: Optional[Sequence[complex]] = None,
) -> LimitReport:
    """Check exp(Z(beta)/t) Phi -> xi(beta) along ``t_sequence`` and fit the growth at large t."""
    r = _direction(r)
    xi_b = complex(eval_twisted(sol.xi, beta))
    diffs = []
    for t in t_sequence:
        value = cmath.exp(log_psi(sol, r, beta, t)) * xi_b
        diffs.append(abs(value - xi_b))
    monotone = all(b <= a for a, b in zip(diffs, diffs[1:]))
    exponent = None
    large_t = list(large_t or [])
    if len(large_t) >= 2:
        x = np.log([abs(complex(t)) for t in large_t])
        y = np.array([log_psi(sol, r, beta, t).real for t in large_t])
        exponent = float(abs(np.polyfit(x, y, 1)[0]))
    return LimitReport(tuple(beta), list(t_sequence), diffs, monotone, diffs[-1] if diffs else 0.0, large_t, exponent)


# ---------------------------------------------------------------------------
# A1 double in closed form


def a1_double_x(z: complex, t: complex, side: int) -> complex:
    """x_+(t) = Lambda(-z / 2 pi i t)^(-1) and x_-(t) = Lambda(z / 2 pi i t)."""
    w = complex(z) / (TWO_PI_I * complex(t))
    if side > 0:
        return cmath.exp(-log_lambda(-w))
    return cmath.exp(log_lambda(w))


def a1_double_relation_residual(z: complex, t: complex, xi: complex = 1.0) -> float:
    """Residual of x_+ = x_- (1 - xi^{+-1} e^{-+z/t}) on H_{l+} or H_{l-}."""
    z, t = complex(z), complex(t)
    w = z / (TWO_PI_I * t)
    q = (t / z).real
    if q > 0:
        factor = 1 - xi * cmath.exp(-z / t)
    elif q < 0:
        factor = 1 - cmath.exp(z / t) / xi
    else:
        raise DomainViolation("t lies on the boundary between the two half-planes")
    diff = -log_lambda(-w) - log_lambda(w) - cmath.log(factor)
    return abs(cmath.exp(diff) - 1)


# ---------------------------------------------------------------------------
# tau functions


@dataclass(frozen=True)
class TauEvaluator:
    """Tau function of the family obtained by varying the central charge of ``structure``.

    Omega is held fixed across the family; ``ray`` fixes the half-plane H_r.
    """

    structure: BpsStructure
    ray: complex

    def __post_init__(self):
        RhSolution(self.structure)
        object.__setattr__(self, "ray", _direction(self.ray))

    def charges(self, z_params=None) -> tuple:
        if z_params is None:
            return tuple(self.structure.central_charge)
        if len(z_params) != self.structure.rank:
            raise ValidationError("z_params must have one entry per basis class")
        return tuple(complex(v) for v in z_params)


def _at(te: TauEvaluator, z_params) -> BpsStructure:
    z = te.charges(z_params)
    s = te.structure
    return make_bps_structure(s.skew, z, dict(s.omega), s.norm_weights)


def log_tau(te: TauEvaluator, z_params, t: complex, ray=None) -> complex:
    s = te.structure
    r = te.ray if ray is None else _direction(ray)
    t = complex(t)
    charges = te.charges(z_params)
    _check_half_plane(r, t)
    total = 0j
    for g, z in upper_classes(s, r, charges):
        if z == 0:
            raise ValidationError(f"Z{g} vanishes at these parameters")
        total += int(s.omega_of(g)) * log_upsilon(z / (TWO_PI_I * t))
    return total


def tau_eval(te: TauEvaluator, z_params, t: complex, ray=None) -> complex:
    return cmath.exp(log_tau(te, z_params, t, ray))


def _log_psi_at(te: TauEvaluator, charges, beta, t) -> complex:
    s = te.structure
    r = te.ray
    total = 0j
    for g, z in upper_classes(s, r, charges):
        e = int(s.omega_of(g)) * s.pair(beta, g)
        if e:
            total += e * log_lambda(z / (TWO_PI_I * t))
    return total


@dataclass
class TauPdeReport:
    rows: list  # (i, lhs, rhs, residual) for rows with a nonzero epsilon entry
    vacuous: list  # indices of pure-kernel rows
    residual: float


def tau_pde_report(te: TauEvaluator, z_params, t: complex, h: float = 1e-5, convention: str = "consistent") -> TauPdeReport:
    """Compare (1/2 pi i) d/dt log Psi_{gamma_i} with sum_j eps_ij d/dz_j log tau.

    With ``convention="consistent"`` the residual is |lhs + rhs|: the product
    formulas for Psi and tau satisfy the equation with eps_ij replaced by
    eps_ji.  ``convention="literal"`` reports |lhs - rhs| as printed.
    Steps are relative: h |t| in t and h max(|z_j|, 1) in z_j.
    """
    if convention not in ("consistent", "literal"):
        raise ValueError("convention must be 'consistent' or 'literal'")
    s = te.structure
    z = list(te.charges(z_params))
    t = complex(t)
    _check_half_plane(te.ray, t)
    eps = s.skew
    n = s.rank
    coupled = [i for i in range(n) if any(eps[i])]
    if not coupled:
        raise DegenerateForm("the skew form vanishes identically; no equation couples")
    ht = h * abs(t)
    dz = []
    for j in range(n):
        if not any(eps[i][j] for i in coupled):
            dz.append(0j)
            continue
        hj = h * max(abs(z[j]), 1.0)
        zp, zm = list(z), list(z)
        zp[j] += hj
        zm[j] -= hj
        dz.append((log_tau(te, zp, t) - log_tau(te, zm, t)) / (2 * hj))
    rows = []
    sign = 1 if convention == "consistent" else -1
    for i in range(n):
        if i not in coupled:
            continue
        beta = tuple(1 if k == i else 0 for k in range(n))
        dpsi = (_log_psi_at(te, z, beta, t + ht) - _log_psi_at(te, z, beta, t - ht)) / (2 * ht)
        lhs = dpsi / TWO_PI_I
        rhs = sum(eps[i][j] * dz[j] for j in range(n))
        rows.append((i, lhs, rhs, abs(lhs + sign * rhs)))
    vacuous = [i for i in range(n) if i not in coupled]
    return TauPdeReport(rows, vacuous, max(r[3] for r in rows))


def tau_pde_residual(te: TauEvaluator, z_params, t: complex, h: float = 1e-5, convention: str = "consistent") -> float:
    return tau_pde_report(te, z_params, t, h, convention).residual


def tau_log_coeff(s: BpsStructure) -> Fraction:
    """Coefficient (1/24) sum Omega(gamma) of the logarithmic term."""
    return sum(s.omega.values(), Fraction(0)) / 24


def tau_asymptotic_coeff(te_or_s, g: int, z_params=None) -> complex:
    """sum_gamma Omega B_2g / (4g(2g-2)) Z(gamma)^(2-2g): the (2 pi i t)^(2g-2) coefficient."""
    if not 2 <= g <= 25:
        raise ValueError("g must lie in [2, 25]")
    s = te_or_s.structure if isinstance(te_or_s, TauEvaluator) else te_or_s
    charges = s.central_charge if z_params is None else tuple(complex(v) for v in z_params)
    c = bernoulli(2 * g) / (4 * g * (2 * g - 2))
    return sum(float(c * om) * _charge(charges, gam) ** (2 - 2 * g) for gam, om in sorted(s.omega.items()))


def tau_asymptotic_coeff_exact(s: BpsStructure, g: int) -> Optional[tuple]:
    """Exact (re, im) of :func:`tau_asymptotic_coeff` when Z is Gaussian rational."""
    if s.exact_charge is None:
        return None
    c = bernoulli(2 * g) / (4 * g * (2 * g - 2))
    re, im = Fraction(0), Fraction(0)
    for gam, om in s.omega.items():
        a, b = s.Z_exact(gam)
        # (a + ib)^(2-2g) = conj(a+ib)^(2g-2) / |.|^(2(2g-2))
        pr, pi_ = Fraction(1), Fraction(0)
        for _ in range(2 * g - 2):
            pr, pi_ = pr * a + pi_ * b, pi_ * a - pr * b
        norm = (a * a + b * b) ** (2 * g - 2)
        re += c * om * pr / norm
        im += c * om * pi_ / norm
    return re, im


def fit_tau_coefficients(te: TauEvaluator, ts: Sequence[complex], max_genus: int, z_params=None) -> dict:
    """Least-squares fit of log tau minus its log term against (2 pi i t)^(2g-2), g = 2..max_genus.

    The log term uses the principal branch of log(2 pi i t / Z(gamma)) for the
    classes in the product and is read off through its real part only.
    """
    s = te.structure
    charges = te.charges(z_params)
    us = np.array([TWO_PI_I * complex(t) for t in ts])
    y = []
    for t, u in zip(ts, us):
        known = 0.0
        for gam, om in s.omega.items():
            known += float(om) * math.log(abs(u / _charge(charges, gam))) / 24
        y.append(log_tau(te, charges, t).real - known)
    y = np.array(y)
    umax = max(abs(us))
    cols = []
    for g in range(2, max_genus + 1):
        cols.append(((us / umax) ** (2 * g - 2)).real)
    A = np.stack(cols, axis=1)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return {g: float(coef[k]) / umax ** (2 * g - 2) for k, g in enumerate(range(2, max_genus + 1))}
