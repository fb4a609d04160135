"""Charge lattices, BPS structures and their ray diagrams.

A class in the charge lattice is a tuple of integers giving its coordinates in
the fixed basis ``e_1, ..., e_n``.  BPS invariants are kept as exact
``Fraction`` values; DT invariants are derived from them on demand.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .errors import AsymmetricForm, SymmetryViolation, ValidationError, ZeroCentralCharge

Class = tuple  # tuple[int, ...]
Rational = Union[int, Fraction]

RAY_TOL = 1e-12


# ---------------------------------------------------------------------------
# small lattice helpers


def add(a: Sequence[int], b: Sequence[int]) -> Class:
    return tuple(x + y for x, y in zip(a, b))


def scale(m: int, a: Sequence[int]) -> Class:
    return tuple(m * x for x in a)


def neg(a: Sequence[int]) -> Class:
    return tuple(-x for x in a)


def content(a: Sequence[int]) -> int:
    """gcd of the coordinates; 0 for the zero class."""
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def primitive(a: Sequence[int]) -> Class:
    g = content(a)
    if g == 0:
        return tuple(a)
    return tuple(x // g for x in a)


def basis_vector(n: int, i: int) -> Class:
    return tuple(1 if j == i else 0 for j in range(n))


@lru_cache(maxsize=None)
def mobius(m: int) -> int:
    if m < 1:
        raise ValueError("mobius is defined for positive integers")
    result, p, k = 1, 2, m
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    if k > 1:
        result = -result
    return result


def _divisors(d: int) -> list[int]:
    return [m for m in range(1, d + 1) if d % m == 0]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


# ---------------------------------------------------------------------------
# the structure itself


@dataclass(frozen=True)
class BpsStructure:
    """The triple (lattice with skew form, central charge, BPS invariants).

    ``omega`` only stores active classes and is closed under ``gamma -> -gamma``.
    ``exact_charge`` holds the central charge as Gaussian rationals when it was
    given that way; ray comparisons then become exact.  ``truncation`` is
    ``None`` for a genuinely finite support, otherwise the height (or degree)
    bound at which an infinite support was cut off.
    """

    skew: tuple
    central_charge: tuple
    omega: Mapping
    norm_weights: tuple
    exact_charge: Optional[tuple] = None
    truncation: Optional[float] = None
    _active: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_active", tuple(sorted(self.omega)))

    @property
    def rank(self) -> int:
        return len(self.skew)

    @property
    def active_classes(self) -> tuple:
        return self._active

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = self.skew[i]
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * row[j] * bj
        return total

    def Z(self, gamma: Sequence[int]) -> complex:
        return sum((m * z for m, z in zip(gamma, self.central_charge)), 0j)

    def Z_exact(self, gamma: Sequence[int]):
        if self.exact_charge is None:
            return None
        re = sum((m * z[0] for m, z in zip(gamma, self.exact_charge)), Fraction(0))
        im = sum((m * z[1] for m, z in zip(gamma, self.exact_charge)), Fraction(0))
        return re, im

    def norm(self, gamma: Sequence[int]) -> float:
        return max((w * abs(m) for w, m in zip(self.norm_weights, gamma)), default=0.0)

    def omega_of(self, gamma: Sequence[int]) -> Fraction:
        return self.omega.get(tuple(gamma), Fraction(0))

    def support_bounds(self) -> tuple[float, float]:
        """Min and max of |Z(gamma)| / ||gamma|| over the stored active classes."""
        ratios = [abs(self.Z(g)) / self.norm(g) for g in self._active]
        if not ratios:
            return math.inf, math.inf
        return min(ratios), max(ratios)

    @property
    def support_constant(self) -> float:
        # Any C strictly below the minimal ratio certifies the support property.
        k1, _ = self.support_bounds()
        return 0.5 * k1

    def same_ray(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return same_direction(self, self.Z(a), self.Z(b), self.Z_exact(a), self.Z_exact(b))

    def with_central_charge(self, central_charge: Sequence) -> "BpsStructure":
        return make_bps_structure(
            self.skew, central_charge, dict(self.omega), self.norm_weights, truncation=self.truncation
        )


def same_direction(s, za: complex, zb: complex, ea=None, eb=None) -> bool:
    """True when two nonzero complex numbers span the same open ray."""
    if ea is not None and eb is not None:
        cross = ea[0] * eb[1] - ea[1] * eb[0]
        dot = ea[0] * eb[0] + ea[1] * eb[1]
        return cross == 0 and dot > 0
    return abs(cmath.phase(za / zb)) < RAY_TOL


def _parse_charge(value):
    """Return (complex, exact pair or None) for one central charge entry."""
    if isinstance(value, complex):
        return value, None
    if isinstance(value, (int, Fraction)):
        return complex(value), (Fraction(value), Fraction(0))
    if isinstance(value, float):
        return complex(value), None
    re, im = value
    exact = None
    if all(isinstance(x, (int, Fraction, str)) for x in (re, im)):
        exact = (_as_fraction(re), _as_fraction(im))
        return complex(float(exact[0]), float(exact[1])), exact
    return complex(float(re), float(im)), None


def make_bps_structure(
    skew: Sequence[Sequence[int]],
    central_charge: Sequence,
    omega: Mapping,
    norm_weights: Optional[Sequence[float]] = None,
    truncation: Optional[float] = None,
) -> BpsStructure:
    """Validate the raw data and build a :class:`BpsStructure`.

    ``central_charge`` entries may be complex numbers or ``(re, im)`` pairs;
    pairs of ints/Fractions/"p/q" strings are kept exactly.  ``omega`` maps
    classes to rationals; missing negatives are filled in by symmetry and
    zero entries are dropped.
    """
    n = len(skew)
    if n < 1:
        raise ValidationError("rank must be positive")
    matrix = tuple(tuple(int(x) for x in row) for row in skew)
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValidationError(f"skew row {i} has length {len(row)}, expected {n}")
    for i in range(n):
        if matrix[i][i] != 0:
            raise AsymmetricForm(f"skew[{i}][{i}] = {matrix[i][i]} is not zero")
        for j in range(i + 1, n):
            if matrix[i][j] != -matrix[j][i]:
                raise AsymmetricForm(
                    f"skew[{i}][{j}] = {matrix[i][j]} but skew[{j}][{i}] = {matrix[j][i]}"
                )

    if len(central_charge) != n:
        raise ValidationError(f"central_charge has {len(central_charge)} entries, expected {n}")
    parsed = [_parse_charge(v) for v in central_charge]
    charges = tuple(p[0] for p in parsed)
    exact = tuple(p[1] for p in parsed) if all(p[1] is not None for p in parsed) else None

    weights = tuple(float(w) for w in (norm_weights or (1.0,) * n))
    if len(weights) != n or any(not w > 0 for w in weights):
        raise ValidationError("norm_weights must be n positive reals")

    table: dict = {}
    for gamma, value in omega.items():
        gamma = tuple(int(x) for x in gamma)
        if len(gamma) != n:
            raise ValidationError(f"class {gamma} does not have rank {n}")
        value = _as_fraction(value)
        if value == 0:
            continue
        for key in (gamma, neg(gamma)):
            if key in table and table[key] != value:
                raise SymmetryViolation(
                    f"Omega{gamma} = {value} but Omega{neg(gamma)} = {table[key]}"
                )
        table[gamma] = value
        table[neg(gamma)] = value

    s = BpsStructure(matrix, charges, table, weights, exact, truncation)
    for gamma in s.active_classes:
        if not any(gamma):
            raise ZeroCentralCharge("the zero class cannot be active")
        ez = s.Z_exact(gamma)
        if (ez is not None and ez == (0, 0)) or (ez is None and s.Z(gamma) == 0):
            raise ZeroCentralCharge(f"active class {gamma} has Z = 0")
    return s


def from_enumerator(
    skew,
    central_charge,
    enumerate_classes: Callable[[float], Iterable],
    height_bound: float,
    norm_weights=None,
) -> BpsStructure:
    """Truncate an infinite structure: keep classes with |Z| < height_bound.

    ``enumerate_classes(bound)`` yields ``(gamma, omega)`` pairs and must
    produce every active class whose height is below ``bound``.
    """
    probe = make_bps_structure(skew, central_charge, {}, norm_weights)
    table = {}
    for gamma, value in enumerate_classes(height_bound):
        if abs(probe.Z(gamma)) < height_bound:
            table[tuple(gamma)] = value
    return make_bps_structure(skew, central_charge, table, norm_weights, truncation=height_bound)


# ---------------------------------------------------------------------------
# BPS <-> DT


def _lookup(table, gamma) -> Fraction:
    if isinstance(table, BpsStructure):
        return table.omega_of(gamma)
    if callable(table):
        return _as_fraction(table(tuple(gamma)))
    return _as_fraction(table.get(tuple(gamma), 0))


def dt_from_omega(omega, gamma: Sequence[int]) -> Fraction:
    """DT(gamma) = sum over gamma = m*alpha (m >= 1) of Omega(alpha) / m^2."""
    d = content(gamma)
    if d == 0:
        return Fraction(0)
    total = Fraction(0)
    for m in _divisors(d):
        alpha = tuple(x // m for x in gamma)
        total += _lookup(omega, alpha) / (m * m)
    return total


def omega_from_dt(dt, gamma: Sequence[int]) -> Fraction:
    """Moebius inversion of :func:`dt_from_omega`.

    ``dt`` is a mapping or a callable giving DT on the divisor classes of gamma.
    """
    d = content(gamma)
    if d == 0:
        return Fraction(0)
    total = Fraction(0)
    for m in _divisors(d):
        mu = mobius(m)
        if mu:
            alpha = tuple(x // m for x in gamma)
            total += Fraction(mu, m * m) * _lookup(dt, alpha)
    return total


# ---------------------------------------------------------------------------
# rays


@dataclass(frozen=True)
class Ray:
    direction: complex
    classes: tuple = ()
    height: float = math.inf

    @property
    def arg(self) -> float:
        return cmath.phase(self.direction)

    @property
    def active(self) -> bool:
        return bool(self.classes)

    def opposite(self) -> "Ray":
        return Ray(-self.direction, tuple(neg(g) for g in self.classes), self.height)


def _group_by_ray(s: BpsStructure, classes: Iterable) -> list[list]:
    ordered = sorted(classes, key=lambda g: (-cmath.phase(s.Z(g)), g))
    groups: list[list] = []
    for g in ordered:
        for grp in groups:
            if s.same_ray(grp[0], g):
                grp.append(g)
                break
        else:
            groups.append([g])
    return groups


def _make_ray(s: BpsStructure, classes: Sequence) -> Ray:
    classes = sorted(classes, key=lambda g: (abs(s.Z(g)), g))
    z = s.Z(classes[0])
    return Ray(z / abs(z), tuple(classes), min(abs(s.Z(g)) for g in classes))


def active_rays(s: BpsStructure, height_bound: float = math.inf) -> list[Ray]:
    """Active rays of height below ``height_bound``, sorted by decreasing argument."""
    if not height_bound > 0:
        raise ValueError("height_bound must be positive")
    rays = [_make_ray(s, grp) for grp in _group_by_ray(s, s.active_classes)]
    rays = [r for r in rays if r.height < height_bound]
    return sorted(rays, key=lambda r: -r.arg)


def ray_through(s: BpsStructure, direction: complex) -> Ray:
    """The ray R>0 * direction together with the active classes it carries."""
    direction = complex(direction)
    if direction == 0:
        raise ValueError("direction must be nonzero")
    on = [g for g in s.active_classes if abs(cmath.phase(s.Z(g) / direction)) < RAY_TOL]
    if not on:
        return Ray(direction / abs(direction))
    ray = _make_ray(s, on)
    return Ray(direction / abs(direction), ray.classes, ray.height)


def as_ray(s: BpsStructure, ray) -> Ray:
    """Accept a Ray, a complex direction, or a class (meaning the ray of Z(class))."""
    if isinstance(ray, Ray):
        return ray
    if isinstance(ray, tuple) and all(isinstance(x, int) for x in ray):
        return ray_through(s, s.Z(ray))
    return ray_through(s, complex(ray))


# ---------------------------------------------------------------------------
# classification and doubling


@dataclass(frozen=True)
class ClassificationFlags:
    finite: bool
    ray_finite: bool
    uncoupled: bool
    generic: bool
    integral: bool


def classify(s: BpsStructure) -> ClassificationFlags:
    """Structural flags, certified over the stored support only."""
    active = s.active_classes
    uncoupled = all(s.pair(a, b) == 0 for i, a in enumerate(active) for b in active[i + 1:])
    if uncoupled:
        generic = True
    else:
        generic = all(
            s.pair(a, b) == 0
            for grp in _group_by_ray(s, active)
            for i, a in enumerate(grp)
            for b in grp[i + 1:]
        )
    integral = all(v.denominator == 1 for v in s.omega.values())
    return ClassificationFlags(
        finite=s.truncation is None,
        ray_finite=True,
        uncoupled=uncoupled,
        generic=generic,
        integral=integral,
    )


def double(s: BpsStructure, z_dual: Optional[Sequence] = None) -> BpsStructure:
    """The (twisted) double on Gamma + Gamma^vee.

    Basis: the original e_i followed by the dual basis e_i^vee, with
    <(g1,l1),(g2,l2)> = <g1,g2> + l1(g2) - l2(g1).
    """
    n = s.rank
    skew = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            skew[i][j] = s.skew[i][j]
        skew[i][n + i] = -1
        skew[n + i][i] = 1
    if z_dual is None:
        if s.exact_charge is not None:
            charge = list(s.exact_charge) + [(Fraction(0), Fraction(0))] * n
        else:
            charge = list(s.central_charge) + [0j] * n
    else:
        if len(z_dual) != n:
            raise ValidationError(f"z_dual needs {n} entries")
        charge = list(s.central_charge) + [complex(_parse_charge(z)[0]) for z in z_dual]
    omega = {tuple(g) + (0,) * n: v for g, v in s.omega.items()}
    weights = tuple(s.norm_weights) + (1.0,) * n
    return make_bps_structure(skew, charge, omega, weights, truncation=s.truncation)


def bracket_scaled(s: BpsStructure) -> BpsStructure:
    """Rescale the norm weights uniformly so that |<a,b>| <= ||a|| * ||b||."""
    n = s.rank
    need = 0.0
    for i in range(n):
        for j in range(n):
            need = max(need, sum(abs(s.skew[i][k]) for k in range(n)) / (s.norm_weights[i] * s.norm_weights[j]))
    factor = math.sqrt(max(need, 1.0)) if need > 0 else 1.0
    return make_bps_structure(
        s.skew,
        s.exact_charge if s.exact_charge is not None else s.central_charge,
        dict(s.omega),
        tuple(w * factor for w in s.norm_weights),
        truncation=s.truncation,
    )


# ---------------------------------------------------------------------------
# Kronecker quivers


def kronecker_skew(k: int) -> tuple:
    return ((0, -k), (k, 0))


def kronecker_structure(k: int, z1=1j, z2=(-1 + 1j), max_degree: int = 12) -> BpsStructure:
    """BPS structure of the k-arrow Kronecker quiver at central charge (z1, z2).

    The chamber is read off from nu = Im(z2/z1).  For nu > 0 only +-e1, +-e2
    are active.  For nu < 0 the closed forms for k = 1, 2 are used; larger k
    are computed by wall-crossing (truncated at ``max_degree``).
    """
    if k < 1:
        raise ValueError("k must be positive")
    zc1, zc2 = _parse_charge(z1)[0], _parse_charge(z2)[0]
    if not (zc1.imag > 0 and zc2.imag > 0):
        raise ValidationError("Kronecker central charges must lie in the upper half-plane")
    nu = (zc2 / zc1).imag
    skew = kronecker_skew(k)
    if nu > 0:
        omega = {(1, 0): 1, (0, 1): 1}
        return make_bps_structure(skew, (z1, z2), omega)
    if nu == 0:
        raise ValidationError("nu = 0 is the non-generic wall; pass the Joyce-Song table explicitly")
    if k == 1:
        return make_bps_structure(skew, (z1, z2), {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    if k == 2:
        omega = {(1, 1): -2}
        for m in range(max_degree + 1):
            for n in (m - 1, m + 1):
                if n >= 0 and 0 < m + n <= max_degree:
                    omega[(m, n)] = 1
        return make_bps_structure(skew, (z1, z2), omega, truncation=max_degree)
    from .formal import kronecker_wallcross

    table = kronecker_wallcross(k, max_degree)
    return make_bps_structure(skew, (z1, z2), table, truncation=max_degree)
