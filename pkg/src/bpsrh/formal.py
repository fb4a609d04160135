"""Exact wall-crossing in a degree-truncated twisted algebra.

Series live on a cone spanned by linearly independent lattice classes
``b_1, ..., b_r``; the monomial with exponent vector ``a`` is the twisted
character of ``sum a_j b_j`` and carries total degree ``sum a_j``.  Monomials
multiply with the sign ``(-1)^<gamma_1, gamma_2>``.

An automorphism is stored through its action on the lattice basis,
``x_{e_i} -> x_{e_i} * U_i``, with ``U_i`` a series of constant term 1.
Composition ``compose(a, b)`` is the map ``f -> a(b(f))``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .errors import BoundaryActive, ClassOutsideCone, ConeMismatch, NotFactorizable, ValidationError
from .lattice import (
    BpsStructure,
    Ray,
    as_ray,
    basis_vector,
    dt_from_omega,
    make_bps_structure,
    omega_from_dt,
)

# ---------------------------------------------------------------------------
# cones


@lru_cache(maxsize=None)
def exponents_of_degree(r: int, d: int) -> tuple:
    """All nonnegative integer vectors of length r summing to d."""
    if r == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in exponents_of_degree(r - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def _solve_rational(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list]:
    """Solve sum_j x_j columns[j] = target over Q; None if inconsistent."""
    n, r = len(target), len(columns)
    rows = [[Fraction(columns[j][i]) for j in range(r)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    row = 0
    for col in range(r):
        pivot = next((i for i in range(row, n) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for i in range(n):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
    if any(all(v == 0 for v in rows[i][:r]) and rows[i][r] != 0 for i in range(n)):
        return None
    x = [Fraction(0)] * r
    for i, col in enumerate(pivots):
        x[col] = rows[i][r]
    return x


class Cone:
    """The monoid spanned by ``basis`` inside a lattice with skew form ``skew``."""

    def __init__(self, skew: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]):
        self.skew = tuple(tuple(int(v) for v in row) for row in skew)
        self.basis = tuple(tuple(int(v) for v in b) for b in basis)
        self.rank = len(self.skew)
        if not self.basis:
            raise ValidationError("a cone needs at least one generator")
        for b in self.basis:
            if len(b) != self.rank:
                raise ValidationError(f"cone generator {b} has the wrong rank")
        # linear independence: each generator must not be a combination of the others
        for j, b in enumerate(self.basis):
            others = [c for k, c in enumerate(self.basis) if k != j]
            if others and _solve_rational(others, b) is not None:
                raise ValidationError("cone generators must be linearly independent")
            if not any(b):
                raise ValidationError("cone generators must be nonzero")
        r = len(self.basis)
        self.form = tuple(tuple(self.pair(self.basis[j], self.basis[k]) for k in range(r)) for j in range(r))
        self.to_basis = tuple(
            tuple(self.pair(self.basis[j], basis_vector(self.rank, i)) for i in range(self.rank))
            for j in range(r)
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[i] * self.skew[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])

    def class_of(self, key: Sequence[int]) -> tuple:
        out = [0] * self.rank
        for a, b in zip(key, self.basis):
            if a:
                for i, v in enumerate(b):
                    out[i] += a * v
        return tuple(out)

    def key_of(self, gamma: Sequence[int]) -> Optional[tuple]:
        """Cone coordinates of gamma, or None when gamma is not in the cone."""
        x = _solve_rational(self.basis, gamma)
        if x is None or any(v.denominator != 1 or v < 0 for v in x):
            return None
        if self.class_of(tuple(int(v) for v in x)) != tuple(gamma):
            return None
        return tuple(int(v) for v in x)

    def key_pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(a[j] * self.form[j][k] * b[k] for j in range(len(a)) if a[j] for k in range(len(b)) if b[k])

    def key_pair_basis(self, a: Sequence[int], i: int) -> int:
        """<class(a), e_i>."""
        return sum(a[j] * self.to_basis[j][i] for j in range(len(a)) if a[j])

    def __eq__(self, other) -> bool:
        return isinstance(other, Cone) and self.skew == other.skew and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.skew, self.basis))

    def __repr__(self) -> str:
        return f"Cone(basis={self.basis})"


def standard_cone(s: BpsStructure) -> Cone:
    return Cone(s.skew, [basis_vector(s.rank, i) for i in range(s.rank)])


# ---------------------------------------------------------------------------
# series


class TruncatedSeries:
    """Exact formal sum over a cone, truncated at total degree ``degree_bound``."""

    __slots__ = ("cone", "degree_bound", "coefficients")

    def __init__(self, cone: Cone, degree_bound: int, coefficients: Mapping | None = None):
        self.cone = cone
        self.degree_bound = int(degree_bound)
        coeffs = {}
        for key, value in (coefficients or {}).items():
            key = tuple(key)
            if len(key) != cone.dim or any(a < 0 for a in key):
                raise ClassOutsideCone(f"exponent {key} is not a cone point")
            if sum(key) <= self.degree_bound and value:
                coeffs[key] = Fraction(value)
        self.coefficients = coeffs

    # construction helpers
    @classmethod
    def zero(cls, cone: Cone, N: int) -> "TruncatedSeries":
        return cls(cone, N)

    @classmethod
    def one(cls, cone: Cone, N: int) -> "TruncatedSeries":
        return cls(cone, N, {(0,) * cone.dim: 1})

    @classmethod
    def monomial(cls, cone: Cone, N: int, key, coefficient=1) -> "TruncatedSeries":
        return cls(cone, N, {tuple(key): coefficient})

    def _check(self, other: "TruncatedSeries"):
        if self.cone != other.cone or self.degree_bound != other.degree_bound:
            raise ConeMismatch("series live on different cones or truncations")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries(self.cone, self.degree_bound, out)

    def __neg__(self):
        return TruncatedSeries(self.cone, self.degree_bound, {k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(self.cone, self.degree_bound, {k: c * v for k, v in self.coefficients.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return self._mul(other, self.degree_bound)

    __rmul__ = __mul__

    def _mul(self, other: "TruncatedSeries", bound: int) -> "TruncatedSeries":
        cone = self.cone
        out: dict = {}
        right = [(k, v, sum(k)) for k, v in other.coefficients.items()]
        for a, fa in self.coefficients.items():
            da = sum(a)
            for b, gb, db in right:
                if da + db > bound:
                    continue
                key = tuple(x + y for x, y in zip(a, b))
                term = fa * gb
                if cone.key_pair(a, b) % 2:
                    term = -term
                out[key] = out.get(key, 0) + term
        return TruncatedSeries(cone, self.degree_bound, out)

    def times_monomial(self, key, bound: Optional[int] = None) -> "TruncatedSeries":
        """x_key * self (twisted)."""
        bound = self.degree_bound if bound is None else bound
        cone = self.cone
        out = {}
        for b, v in self.coefficients.items():
            new = tuple(x + y for x, y in zip(key, b))
            if sum(new) <= bound:
                out[new] = -v if cone.key_pair(key, b) % 2 else v
        return TruncatedSeries(cone, self.degree_bound, out)

    def truncate(self, bound: int) -> "TruncatedSeries":
        return TruncatedSeries(self.cone, self.degree_bound, {k: v for k, v in self.coefficients.items() if sum(k) <= bound})

    def degree_part(self, d: int) -> dict:
        return {k: v for k, v in self.coefficients.items() if sum(k) == d}

    @property
    def constant_term(self) -> Fraction:
        return self.coefficients.get((0,) * self.cone.dim, Fraction(0))

    def inverse(self) -> "TruncatedSeries":
        """1 / self for a series with constant term 1."""
        if self.constant_term != 1:
            raise ValueError("only series with constant term 1 are inverted")
        r = self - TruncatedSeries.one(self.cone, self.degree_bound)
        out = TruncatedSeries.one(self.cone, self.degree_bound)
        power = TruncatedSeries.one(self.cone, self.degree_bound)
        for _ in range(self.degree_bound):
            power = -(power * r)
            if not power.coefficients:
                break
            out = out + power
        return out

    def power(self, m: int) -> "TruncatedSeries":
        base = self if m >= 0 else self.inverse()
        out = TruncatedSeries.one(self.cone, self.degree_bound)
        for _ in range(abs(m)):
            out = out * base
        return out

    def bracket(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Poisson bracket {x_a, x_b} = <a, b> x_a x_b, extended bilinearly."""
        self._check(other)
        cone = self.cone
        out: dict = {}
        for a, fa in self.coefficients.items():
            for b, gb in other.coefficients.items():
                if sum(a) + sum(b) > self.degree_bound:
                    continue
                w = cone.key_pair(a, b)
                if not w:
                    continue
                key = tuple(x + y for x, y in zip(a, b))
                term = w * fa * gb
                if w % 2:
                    term = -term
                out[key] = out.get(key, 0) + term
        return TruncatedSeries(cone, self.degree_bound, out)

    def evaluate(self, point) -> complex:
        """Value at a torus point (any callable gamma -> x_gamma)."""
        total = 0j
        for k, v in sorted(self.coefficients.items()):
            total += float(v) * complex(point(self.cone.class_of(k)))
        return total

    def by_class(self) -> dict:
        return {self.cone.class_of(k): v for k, v in self.coefficients.items()}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.cone == other.cone
            and self.degree_bound == other.degree_bound
            and self.coefficients == other.coefficients
        )

    def __repr__(self) -> str:
        terms = " + ".join(f"{v}*x{self.cone.class_of(k)}" for k, v in sorted(self.coefficients.items()))
        return f"TruncatedSeries({terms or '0'})"


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class TruncatedAutomorphism:
    cone: Cone
    degree_bound: int
    multipliers: tuple

    def __post_init__(self):
        for u in self.multipliers:
            if u.cone != self.cone or u.degree_bound != self.degree_bound:
                raise ConeMismatch("multiplier lives on another cone")
            if u.constant_term != 1:
                raise ValidationError("multipliers must have constant term 1")

    @classmethod
    def identity(cls, cone: Cone, N: int) -> "TruncatedAutomorphism":
        return cls(cone, N, tuple(TruncatedSeries.one(cone, N) for _ in range(cone.rank)))

    def is_identity(self) -> bool:
        one = TruncatedSeries.one(self.cone, self.degree_bound)
        return all(u == one for u in self.multipliers)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedAutomorphism)
            and self.cone == other.cone
            and self.degree_bound == other.degree_bound
            and self.multipliers == other.multipliers
        )

    def __hash__(self):
        return hash((self.cone, self.degree_bound))

    def generator_multipliers(self) -> list:
        """W_{b_j} = prod_i U_i^{(b_j)_i} for each cone generator."""
        out = []
        for b in self.cone.basis:
            w = TruncatedSeries.one(self.cone, self.degree_bound)
            for i, m in enumerate(b):
                if m:
                    w = w * self.multipliers[i].power(m)
            out.append(w)
        return out


def exp_hamiltonian(H: TruncatedSeries) -> TruncatedAutomorphism:
    """exp{H, -} acting on each x_{e_i}, written as x_{e_i} * U_i.

    U_i = sum_k D_i^k(1) / k!  with  D_i(F) = A_i F + {H, F},
    A_i = sum_gamma h_gamma <gamma, e_i> x_gamma.
    """
    cone, N = H.cone, H.degree_bound
    if H.constant_term != 0:
        raise ValidationError("the Hamiltonian must have no constant term")
    mults = []
    for i in range(cone.rank):
        A = TruncatedSeries(
            cone, N, {k: v * cone.key_pair_basis(k, i) for k, v in H.coefficients.items()}
        )
        term = TruncatedSeries.one(cone, N)
        total = term
        k = 0
        while term.coefficients:
            k += 1
            term = (A * term + H.bracket(term)).scale(Fraction(1, k))
            total = total + term
        mults.append(total)
    return TruncatedAutomorphism(cone, N, tuple(mults))


def apply(a: TruncatedAutomorphism, f: TruncatedSeries) -> TruncatedSeries:
    """a(f) = sum_delta f_delta x_delta W_delta."""
    if f.cone != a.cone or f.degree_bound != a.degree_bound:
        raise ConeMismatch("series and automorphism use different cones")
    cone, N = a.cone, a.degree_bound
    gens = a.generator_multipliers()
    cache = {(0,) * cone.dim: TruncatedSeries.one(cone, N)}

    def W(key):
        if key in cache:
            return cache[key]
        j = next(idx for idx, v in enumerate(key) if v)
        prev = tuple(v - (1 if idx == j else 0) for idx, v in enumerate(key))
        val = W(prev)._mul(gens[j], N - sum(prev))
        cache[key] = val
        return val

    out = TruncatedSeries.zero(cone, N)
    for key in sorted(f.coefficients, key=sum):
        out = out + W(key).truncate(N - sum(key)).times_monomial(key).scale(f.coefficients[key])
    return out


def compose(a: TruncatedAutomorphism, b: TruncatedAutomorphism) -> TruncatedAutomorphism:
    """The map f -> a(b(f)); multipliers U^a_i * a(U^b_i)."""
    if a.cone != b.cone or a.degree_bound != b.degree_bound:
        raise ConeMismatch("automorphisms use different cones or truncations")
    return TruncatedAutomorphism(
        a.cone, a.degree_bound, tuple(ua * apply(a, ub) for ua, ub in zip(a.multipliers, b.multipliers))
    )


def compose_all(autos: Sequence[TruncatedAutomorphism], cone: Cone, N: int) -> TruncatedAutomorphism:
    out = TruncatedAutomorphism.identity(cone, N)
    for a in autos:
        out = compose(out, a)
    return out


def inverse(a: TruncatedAutomorphism) -> TruncatedAutomorphism:
    """Two-sided inverse, solved one degree at a time from U^a_i * a(U^b_i) = 1."""
    cone, N = a.cone, a.degree_bound
    one = TruncatedSeries.one(cone, N)
    targets = [u.inverse() - one for u in a.multipliers]
    rs = [TruncatedSeries.zero(cone, N) for _ in a.multipliers]
    for _ in range(N):
        rs = [t - (apply(a, r) - r) for t, r in zip(targets, rs)]
    return TruncatedAutomorphism(cone, N, tuple(one + r for r in rs))


# ---------------------------------------------------------------------------
# rays and sectors


def _check_in_cone(cone: Cone, gamma) -> tuple:
    key = cone.key_of(gamma)
    if key is None:
        raise ClassOutsideCone(f"class {gamma} is not in the cone spanned by {cone.basis}")
    return key


def dt_generating(s: BpsStructure, ray, N: int, cone: Optional[Cone] = None, sign: int = 1) -> TruncatedSeries:
    """sum DT(gamma) x_gamma over cone classes on the ray with degree <= N."""
    cone = cone or standard_cone(s)
    ray = as_ray(s, ray)
    coeffs = {}
    for alpha in ray.classes:
        key = _check_in_cone(cone, alpha)
        d = sum(key)
        m = 1
        while m * d <= N:
            mk = tuple(m * v for v in key)
            if mk not in coeffs:
                coeffs[mk] = sign * dt_from_omega(s, cone.class_of(mk))
            m += 1
    return TruncatedSeries(cone, N, coeffs)


def ray_automorphism(s: BpsStructure, ray, N: int, cone: Optional[Cone] = None) -> TruncatedAutomorphism:
    return exp_hamiltonian(dt_generating(s, ray, N, cone))


def ray_automorphism_inverse(s: BpsStructure, ray, N: int, cone: Optional[Cone] = None) -> TruncatedAutomorphism:
    """Time-one flow of -DT(ray)."""
    return exp_hamiltonian(dt_generating(s, ray, N, cone, sign=-1))


def _sector_edges(sector) -> tuple:
    if hasattr(sector, "first") and hasattr(sector, "second"):
        first, second = complex(sector.first), complex(sector.second)
    else:
        first, second = (complex(v) for v in sector)
    angle = cmath.phase(first / second) % (2 * math.pi)
    if angle == 0:
        angle = 2 * math.pi if first != 0 else 0
    if not 0 < angle <= math.pi:
        raise ValidationError("sector must be convex: angle in (0, pi]")
    return first, second, angle


def rays_in_sector(s: BpsStructure, sector, tol: float = 1e-12) -> list:
    """Active rays strictly inside the sector, anticlockwise-most first."""
    first, second, angle = _sector_edges(sector)
    inside = []
    for gamma in s.active_classes:
        z = s.Z(gamma)
        rel = cmath.phase(z / second)
        if abs(rel) <= tol or abs(rel - angle) <= tol:
            raise BoundaryActive(f"active class {gamma} lies on a boundary ray of the sector")
        if 0 < rel < angle:
            inside.append(gamma)
    groups: list = []
    for g in sorted(inside, key=lambda g: -cmath.phase(s.Z(g) / second)):
        for grp in groups:
            if s.same_ray(grp[0], g):
                grp.append(g)
                break
        else:
            groups.append([g])
    rays = []
    for grp in groups:
        z = s.Z(grp[0])
        grp.sort(key=lambda g: (abs(s.Z(g)), g))
        rays.append(Ray(z / abs(z), tuple(grp), min(abs(s.Z(g)) for g in grp)))
    rays.sort(key=lambda r: -cmath.phase(r.direction / second))
    return rays


def sector_product(s: BpsStructure, sector, N: int, cone: Optional[Cone] = None) -> TruncatedAutomorphism:
    """Clockwise product over the active rays in the sector.

    As a map of torus points the anticlockwise-most ray acts last.  We store
    pullbacks, which compose in the opposite order, so the clockwise-most
    factor comes first in ``compose``.
    """
    cone = cone or standard_cone(s)
    autos = [ray_automorphism(s, r, N, cone) for r in reversed(rays_in_sector(s, sector))]
    return compose_all(autos, cone, N)


# ---------------------------------------------------------------------------
# factorization


@dataclass
class Factorization:
    """Slope-ordered DT invariants recovered from a sector product."""

    rays: list  # list of (Ray, {class: DT}) in clockwise order
    invisible: list  # classes whose invariants cannot be seen by the form

    def dt_table(self) -> dict:
        return {g: v for _, table in self.rays for g, v in table.items() if v}

    def omega_table(self) -> dict:
        out = {}
        for _, table in self.rays:
            for g in table:
                om = omega_from_dt(table, g)
                if om:
                    out[g] = om
        return out

    def as_mapping(self) -> dict:
        return {ray: dict(table) for ray, table in self.rays}


def factorize(target: TruncatedAutomorphism, z: Sequence, N: Optional[int] = None) -> Factorization:
    """Write ``target`` as a clockwise product of ray automorphisms for central charge z.

    Proceeds by degree: the degree-d discrepancy between target and the
    product found so far must equal h_gamma <gamma, e_i> x_gamma.
    """
    cone = target.cone
    N = target.degree_bound if N is None else N
    if N > target.degree_bound:
        raise ValidationError("cannot factorize beyond the truncation of the target")
    if N != target.degree_bound:
        target = TruncatedAutomorphism(
            cone, N, tuple(TruncatedSeries(cone, N, u.coefficients) for u in target.multipliers)
        )
    probe = make_bps_structure(cone.skew, z, {})
    hams: list = []  # [representative class, {key: h}]
    invisible = []

    def ray_index(gamma):
        for idx, (rep, _) in enumerate(hams):
            if probe.same_ray(rep, gamma):
                return idx
        hams.append((gamma, {}))
        return len(hams) - 1

    def current_product():
        ordered = sorted(hams, key=lambda item: cmath.phase(probe.Z(item[0]) / _reference(probe, cone)))
        autos = [exp_hamiltonian(TruncatedSeries(cone, N, h)) for _, h in ordered]
        return compose_all(autos, cone, N)

    product = TruncatedAutomorphism.identity(cone, N)
    for d in range(1, N + 1):
        disc = [tu.degree_part(d) for tu in (t - p for t, p in zip(target.multipliers, product.multipliers))]
        keys = sorted(set().union(*[set(x) for x in disc]))
        changed = False
        for key in keys:
            gamma = cone.class_of(key)
            pairs = [cone.key_pair_basis(key, i) for i in range(cone.rank)]
            values = [disc[i].get(key, Fraction(0)) for i in range(cone.rank)]
            if not any(pairs):
                if any(values):
                    raise NotFactorizable(f"nonzero discrepancy at radical class {gamma}")
                continue
            h = None
            for p, v in zip(pairs, values):
                if p:
                    cand = v / p
                    if h is None:
                        h = cand
                    elif cand != h:
                        raise NotFactorizable(f"inconsistent discrepancy at class {gamma}, degree {d}")
                elif v:
                    raise NotFactorizable(f"discrepancy at class {gamma} not of Hamiltonian form")
            if h:
                if probe.Z(gamma) == 0:
                    raise NotFactorizable(f"class {gamma} has Z = 0")
                hams[ray_index(gamma)][1][key] = h
                changed = True
        if changed:
            product = current_product()
        remaining = [
            tu.degree_part(d) for tu in (t - p for t, p in zip(target.multipliers, product.multipliers))
        ]
        if any(remaining):
            raise NotFactorizable(f"residual discrepancy at degree {d}")

    for key in (k for d in range(1, N + 1) for k in exponents_of_degree(cone.dim, d)):
        if not any(cone.key_pair_basis(key, i) for i in range(cone.rank)):
            invisible.append(cone.class_of(key))

    ref = _reference(probe, cone)
    ordered = sorted(hams, key=lambda item: -cmath.phase(probe.Z(item[0]) / ref))
    rays = []
    for rep, h in ordered:
        table = {cone.class_of(k): v for k, v in sorted(h.items(), key=lambda kv: (sum(kv[0]), kv[0]))}
        classes = tuple(sorted(table, key=lambda g: (abs(probe.Z(g)), g)))
        zr = probe.Z(rep)
        rays.append((Ray(zr / abs(zr), classes, min(abs(probe.Z(g)) for g in classes)), table))
    return Factorization(rays, invisible)


def _reference(probe: BpsStructure, cone: Cone) -> complex:
    """A direction clockwise of every cone generator, used to order rays."""
    args = [probe.Z(b) for b in cone.basis]
    mean = sum(z / abs(z) for z in args)
    if abs(mean) < 1e-12:
        raise ValidationError("cone images must lie in an acute sector")
    half = mean / abs(mean)
    return half * cmath.exp(-0.5j * math.pi)


# ---------------------------------------------------------------------------
# Kronecker quivers

KRONECKER_PLUS = ((0, 1), (-1, 1))  # Z(e1) = i, Z(e2) = -1 + i   (nu = 1)
KRONECKER_MINUS = ((-1, 1), (0, 1))  # Z(e1) = -1 + i, Z(e2) = i  (nu = -1/2)


def kronecker_wallcross(k: int, N: int) -> dict:
    """Omega on the nu < 0 side, positive classes of degree <= N."""
    if k < 1:
        raise ValueError("k must be positive")
    if not 1 <= N <= 12:
        raise ValueError("N must lie in [1, 12]")
    skew = ((0, -k), (k, 0))
    plus = make_bps_structure(skew, KRONECKER_PLUS, {(1, 0): 1, (0, 1): 1})
    cone = standard_cone(plus)
    upper = (-1, 1)  # first edge at arg pi, second at arg 0: the upper half-plane
    target = sector_product(plus, upper, N, cone)
    result = factorize(target, KRONECKER_MINUS, N)
    return dict(sorted(result.omega_table().items(), key=lambda kv: (sum(kv[0]), kv[0])))
