"""Points of the twisted torus and the wall-crossing maps acting on them.

A point is stored through its coordinates ``c_i`` relative to the canonical
quadratic refinement ``g0``, so that

    x_gamma(p) = prod_i c_i^{m_i} * g0(gamma),   gamma = sum m_i e_i.

Coordinates may be any nonzero numbers (complex, float, or Fraction); with
Fractions every evaluation is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import FlowDiverged, NotGeneric, NotIntegral, PoleOnDivisor, ValidationError
from .lattice import BpsStructure, Ray, as_ray, dt_from_omega, scale


def refinement_sign(s: BpsStructure, gamma: Sequence[int]) -> int:
    """g0(gamma) = (-1)^{sum_{i<j} m_i m_j <e_i, e_j>}."""
    q = 0
    n = len(gamma)
    for i in range(n):
        mi = gamma[i]
        if mi:
            row = s.skew[i]
            for j in range(i + 1, n):
                q += mi * gamma[j] * row[j]
    return -1 if q % 2 else 1


@dataclass(frozen=True)
class TorusPoint:
    structure: BpsStructure
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.structure.rank:
            raise ValidationError(f"expected {self.structure.rank} coordinates, got {len(self.coords)}")
        if any(c == 0 for c in self.coords):
            raise ValidationError("torus coordinates must be nonzero")

    def __call__(self, gamma: Sequence[int]):
        return eval_twisted(self, gamma)


def torus_point(s: BpsStructure, coords: Sequence) -> TorusPoint:
    return TorusPoint(s, tuple(coords))


def quadratic_refinement(s: BpsStructure) -> TorusPoint:
    """The base point g0: value 1 on every basis class."""
    return TorusPoint(s, (1,) * s.rank)


def eval_twisted(p: TorusPoint, gamma: Sequence[int]):
    value = refinement_sign(p.structure, gamma)
    for c, m in zip(p.coords, gamma):
        if m:
            value = value * c**m
    return value


def involution_sigma(p: TorusPoint) -> TorusPoint:
    one = 1
    return TorusPoint(p.structure, tuple(one / c for c in p.coords))


def point_from_values(s: BpsStructure, values: Sequence) -> TorusPoint:
    """The point whose twisted characters take ``values`` on the basis classes."""
    return TorusPoint(s, tuple(values))


# ---------------------------------------------------------------------------
# sectors


@dataclass(frozen=True)
class SectorDomain:
    """U_Delta(R) for the convex sector from ``first`` clockwise to ``second``."""

    first: complex
    second: complex
    R: float

    def __post_init__(self):
        if self.first == 0 or self.second == 0:
            raise ValidationError("sector edges must be nonzero")
        if not 0 < self.angle < math.pi:
            raise ValidationError("sector angle must lie in (0, pi)")
        if not self.R > 0:
            raise ValidationError("R must be positive")

    @property
    def angle(self) -> float:
        return cmath.phase(complex(self.first) / complex(self.second)) % (2 * math.pi)

    def contains(self, z: complex) -> bool:
        """Closed-sector membership of a nonzero complex number."""
        if z == 0:
            return False
        rel = cmath.phase(complex(z) / complex(self.second))
        return -1e-15 <= rel <= self.angle + 1e-15


def in_domain(d: SectorDomain, p: TorusPoint) -> bool:
    s = p.structure
    for gamma in s.active_classes:
        if d.contains(s.Z(gamma)):
            if not abs(complex(eval_twisted(p, gamma))) < math.exp(-d.R * s.norm(gamma)):
                return False
    return True


# ---------------------------------------------------------------------------
# wall-crossing maps


def _check_ray(s: BpsStructure, ray: Ray):
    classes = ray.classes
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            if s.pair(a, b) != 0:
                raise NotGeneric(f"classes {a} and {b} on the same ray pair to {s.pair(a, b)}")
    for g in classes:
        if s.omega_of(g).denominator != 1:
            raise NotIntegral(f"Omega{g} = {s.omega_of(g)} is not an integer")


def birational_wall_auto(s: BpsStructure, ray, p: TorusPoint) -> TorusPoint:
    """x_beta -> x_beta * prod_{Z(gamma) in ray} (1 - x_gamma)^{Omega(gamma) <beta, gamma>}."""
    ray = as_ray(s, ray)
    _check_ray(s, ray)
    factors = []
    for g in ray.classes:
        x = eval_twisted(p, g)
        if x == 1:
            raise PoleOnDivisor(f"x_{g} = 1 lies on the divisor of the wall map")
        factors.append((g, 1 - x, int(s.omega_of(g))))
    coords = []
    for i, c in enumerate(p.coords):
        new = c
        for g, base, om in factors:
            e = om * _pair_basis(s, i, g)
            if e:
                new = new * base**e
        coords.append(new)
    return TorusPoint(s, tuple(coords))


def _pair_basis(s: BpsStructure, i: int, gamma: Sequence[int]) -> int:
    row = s.skew[i]
    return sum(row[j] * m for j, m in enumerate(gamma))


def _flow_terms(s: BpsStructure, ray: Ray, p: TorusPoint, tol: float, max_multiple: int):
    """Classes on the ray carrying nonzero DT, with DT value, truncated geometrically."""
    seen = {}
    for alpha in ray.classes:
        x = abs(complex(eval_twisted(p, alpha)))
        for m in range(1, max_multiple + 1):
            gamma = scale(m, alpha)
            if gamma in seen:
                continue
            if m > 1 and x**m / m < tol:
                break
            dt = dt_from_omega(s, gamma)
            if dt:
                seen[gamma] = float(dt)
    return sorted(seen.items())


def hamiltonian_flow(
    s: BpsStructure, ray, p: TorusPoint, steps: int = 1000, tol: float = 1e-17, max_multiple: int = 400
) -> TorusPoint:
    """Time-one flow of dx_beta/dt = x_beta sum_gamma DT(gamma) <gamma, beta> x_gamma by RK4.

    All multiples of the active classes on the ray enter, so DT includes the
    multi-cover contributions; the infinite tail is cut once |x|^m / m < tol.
    """
    ray = as_ray(s, ray)
    if steps < 1:
        raise ValueError("steps must be positive")
    terms = _flow_terms(s, ray, p, tol, max_multiple)
    if not terms:
        return TorusPoint(s, tuple(complex(c) for c in p.coords))
    n = s.rank
    couplings = [[-_pair_basis(s, i, g) for i in range(n)] for g, _ in terms]  # <gamma, e_i>
    signs = [refinement_sign(s, g) for g, _ in terms]

    def characters(c):
        out = []
        for (g, _), sg in zip(terms, signs):
            v = complex(sg)
            for ci, m in zip(c, g):
                if m:
                    v *= ci**m
            out.append(v)
        return out

    def safety(c) -> float:
        return sum(abs(dt * x) for (_, dt), x in zip(terms, characters(c)))

    def rhs(c):
        xs = characters(c)
        out = []
        for i in range(n):
            acc = 0j
            for k, ((_, dt), x) in enumerate(zip(terms, xs)):
                if couplings[k][i]:
                    acc += dt * couplings[k][i] * x
            out.append(c[i] * acc)
        return out

    c = [complex(v) for v in p.coords]
    if not safety(c) < 1:
        raise FlowDiverged("start point lies outside the safe region sum |DT x| < 1")
    h = 1.0 / steps
    for _ in range(steps):
        k1 = rhs(c)
        k2 = rhs([a + 0.5 * h * b for a, b in zip(c, k1)])
        k3 = rhs([a + 0.5 * h * b for a, b in zip(c, k2)])
        k4 = rhs([a + h * b for a, b in zip(c, k3)])
        c = [a + h / 6 * (b1 + 2 * b2 + 2 * b3 + b4) for a, b1, b2, b3, b4 in zip(c, k1, k2, k3, k4)]
        if not all(cmath.isfinite(v) and v != 0 for v in c) or not safety(c) < 1:
            raise FlowDiverged("flow left the safe region")
    return TorusPoint(s, tuple(c))
