"""Gamma-type special functions on the principal branch.

``log_lambda`` and ``log_upsilon`` are the logarithms of the modified gamma
and modified Barnes G functions that appear in the explicit solution of the
uncoupled Riemann-Hilbert problem.  Both are continuous on C minus the closed
negative real axis.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import special as _sp

from .errors import BranchCut, OutOfRange, PoleAt, PoleAtOne

LOG_2PI = math.log(2.0 * math.pi)
HALF_LOG_2PI = 0.5 * LOG_2PI

# Beyond this modulus the asymptotic series are used directly.
STIRLING_RADIUS = 12.0
UPSILON_RADIUS = 30.0
_STIRLING_TERMS = 15
_UPSILON_TERMS = 12


def _is_nonpositive_integer(w: complex) -> bool:
    return w.imag == 0 and w.real <= 0 and w.real == math.floor(w.real)


def _on_cut(w: complex) -> bool:
    return w.imag == 0 and w.real <= 0


# ---------------------------------------------------------------------------
# Bernoulli numbers


@lru_cache(maxsize=None)
def _bernoulli_table(kmax: int) -> tuple:
    # B_0..B_kmax from sum_{j<m+1} C(m+1, j) B_j = 0
    b = [Fraction(1)]
    for m in range(1, kmax + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(m):
            acc += binom * b[j]
            binom = binom * (m + 1 - j) // (j + 1)
        b.append(-acc / (m + 1))
    return tuple(b)


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k for even 2 <= k <= 60."""
    if not isinstance(k, int) or k < 2 or k > 60 or k % 2:
        raise OutOfRange(f"bernoulli needs an even integer in [2, 60], got {k!r}")
    return _bernoulli_table(60)[k]


def stirling_coefficient(g: int) -> Fraction:
    return bernoulli(2 * g) / (2 * g * (2 * g - 1))


def upsilon_coefficient(g: int) -> Fraction:
    return bernoulli(2 * g) / (2 * g * (2 * g - 2))


# ---------------------------------------------------------------------------
# asymptotic series


class AsymptoticSeries:
    """A truncated series sum c_k w^{p_k} with strictly decreasing powers."""

    def __init__(self, terms, max_genus: int, log_coefficient=0):
        terms = list(terms)
        powers = [p for p, _ in terms]
        if any(a <= b for a, b in zip(powers, powers[1:])):
            raise ValueError("powers must be strictly decreasing")
        self.terms = terms
        self.max_genus = max_genus
        self.log_coefficient = log_coefficient

    def __call__(self, w: complex) -> complex:
        w = complex(w)
        total = self.log_coefficient * cmath.log(w) if self.log_coefficient else 0j
        return total + sum(complex(c) * w**p for p, c in self.terms)

    @classmethod
    def stirling(cls, G: int) -> "AsymptoticSeries":
        return cls([(1 - 2 * g, stirling_coefficient(g)) for g in range(1, G + 1)], G)

    @classmethod
    def upsilon(cls, G: int) -> "AsymptoticSeries":
        return cls(
            [(2 - 2 * g, upsilon_coefficient(g)) for g in range(2, G + 1)], G, Fraction(-1, 12)
        )


def stirling_series(w: complex, G: int) -> complex:
    """sum_{g=1}^{G} B_2g / (2g(2g-1)) w^(1-2g)."""
    if not 1 <= G <= 25:
        raise OutOfRange("G must lie in [1, 25]")
    w = complex(w)
    if w == 0:
        raise ValueError("w must be nonzero")
    inv = 1.0 / w
    inv2 = inv * inv
    power = inv
    total = 0j
    for g in range(1, G + 1):
        total += float(stirling_coefficient(g)) * power
        power *= inv2
    return total


def upsilon_series(w: complex, G: int) -> complex:
    """-(1/12) log w + sum_{g=2}^{G} B_2g / (2g(2g-2)) w^(2-2g)."""
    if not 2 <= G <= 30:
        raise OutOfRange("G must lie in [2, 30]")
    w = complex(w)
    if w == 0:
        raise ValueError("w must be nonzero")
    inv2 = 1.0 / (w * w)
    power = inv2
    total = -cmath.log(w) / 12.0
    for g in range(2, G + 1):
        total += float(upsilon_coefficient(g)) * power
        power *= inv2
    return total


# ---------------------------------------------------------------------------
# gamma and Lambda


def log_gamma(w: complex) -> complex:
    """Principal branch of log Gamma(w), real on the positive axis."""
    w = complex(w)
    if _is_nonpositive_integer(w):
        raise PoleAt(w)
    return complex(_sp.loggamma(w))


def log_lambda(w: complex) -> complex:
    """log of e^w Gamma(w) / (sqrt(2 pi) w^(w - 1/2)) with principal logarithms."""
    w = complex(w)
    if _on_cut(w):
        raise BranchCut(w)
    if abs(w) >= STIRLING_RADIUS and abs(cmath.phase(w)) <= 2.0 * math.pi / 3.0:
        return stirling_series(w, _STIRLING_TERMS)
    return w + log_gamma(w) - HALF_LOG_2PI - (w - 0.5) * cmath.log(w)


def lambda_fn(w: complex) -> complex:
    return cmath.exp(log_lambda(w))


# ---------------------------------------------------------------------------
# zeta'(-1)


@lru_cache(maxsize=1)
def zeta_prime_minus_one() -> float:
    """zeta'(-1) through the Euler-Maclaurin expansion of log A (Glaisher)."""
    n = 10
    parts = [k * math.log(k) for k in range(2, n + 1)]
    parts.append(-(n * n / 2 + n / 2 + 1.0 / 12) * math.log(n))
    parts.append(n * n / 4)
    for j in range(2, 14):
        parts.append(float(bernoulli(2 * j) / (2 * j * (2 * j - 1) * (2 * j - 2))) * n ** (2 - 2 * j))
    log_glaisher = math.fsum(parts)
    return 1.0 / 12 - log_glaisher


# ---------------------------------------------------------------------------
# Barnes G and Upsilon

_TAYLOR_TERMS = 110


@lru_cache(maxsize=1)
def _barnes_taylor() -> np.ndarray:
    """Coefficients c_n of log G(1+z) = sum c_n z^n, n = 0.._TAYLOR_TERMS."""
    c = np.zeros(_TAYLOR_TERMS + 1)
    c[1] = 0.5 * (LOG_2PI - 1.0)
    c[2] = -0.5 * (1.0 + np.euler_gamma)
    ks = np.arange(2, _TAYLOR_TERMS)
    c[3:] = (-1.0) ** ks * _sp.zeta(ks.astype(float)) / (ks + 1)
    return c


def _log_barnes_taylor(z: complex) -> complex:
    c = _barnes_taylor()
    acc = 0j
    for coef in c[::-1]:
        acc = acc * z + coef
    return acc


def _log_barnes_recurrence(w: complex) -> complex:
    n = int(round(w.real))
    z = w - n
    total = _log_barnes_taylor(z)
    if n > 0:
        total += sum(log_gamma(z + j) for j in range(1, n + 1))
    elif n < 0:
        total -= sum(log_gamma(z + j) for j in range(n + 1, 1))
    return total


def _upsilon_step(w: complex) -> complex:
    """log Upsilon(w+1) - log Upsilon(w)."""
    return w / 2 + 0.75 + log_lambda(w) - 0.5 * (w + 1) ** 2 * _log1p(1 / w)


def _log1p(x: complex) -> complex:
    # cmath has no log1p; numpy's keeps accuracy for small |x|
    return complex(np.log1p(np.complex128(x)))


def _log_upsilon_shifted(w: complex) -> complex:
    # Move right into the closed right half-plane with |w + n| >= UPSILON_RADIUS.
    # Horizontal shifts never cross the cut.
    target = math.sqrt(max(UPSILON_RADIUS**2 - w.imag**2, 0.0))
    n = max(int(math.ceil(target - w.real)), int(math.ceil(-w.real)), 0)
    total = upsilon_series(w + n, _UPSILON_TERMS)
    for k in range(n):
        total -= _upsilon_step(w + k)
    return total


def _use_taylor(w: complex) -> bool:
    return abs(w.imag) <= 0.5 and abs(w) <= UPSILON_RADIUS


def _upsilon_from_barnes(w: complex, lg: complex) -> complex:
    lw = cmath.log(w)
    return -zeta_prime_minus_one() + 0.75 * w * w + lg - 0.5 * w * LOG_2PI - 0.5 * w * w * lw


def log_barnes_g(w: complex) -> complex:
    """log G(w+1), continuous on C minus (-inf, -1] and real for real w > -1."""
    w = complex(w)
    if _is_nonpositive_integer(w + 1):
        raise PoleAt(w)
    if _use_taylor(w):
        return _log_barnes_recurrence(w)
    lu = _log_upsilon_shifted(w)
    lw = cmath.log(w)
    return lu + zeta_prime_minus_one() - 0.75 * w * w + 0.5 * w * LOG_2PI + 0.5 * w * w * lw


def log_upsilon(w: complex) -> complex:
    """log Upsilon(w) with the principal branch of w^(w^2/2)."""
    w = complex(w)
    if _on_cut(w):
        raise BranchCut(w)
    if _use_taylor(w):
        return _upsilon_from_barnes(w, _log_barnes_recurrence(w))
    return _log_upsilon_shifted(w)


def upsilon_fn(w: complex) -> complex:
    return cmath.exp(log_upsilon(w))


# ---------------------------------------------------------------------------
# polylogarithms of non-positive order


@lru_cache(maxsize=None)
def eulerian_row(n: int) -> tuple:
    """Eulerian numbers A(n, 0..n-1)."""
    row = [1]
    for m in range(2, n + 1):
        new = [0] * m
        for k in range(m):
            left = row[k - 1] if k >= 1 else 0
            here = row[k] if k < len(row) else 0
            new[k] = (k + 1) * here + (m - k) * left
        row = new
    return tuple(row)


def polylog_neg(order: int, x):
    """Li_order(x) for integer order <= 1.

    Orders <= 0 are rational in x, so Fraction input gives an exact Fraction.
    """
    if order > 1:
        raise OutOfRange("only orders <= 1 are supported")
    if x == 1:
        raise PoleAtOne("Li_s has a pole at x = 1")
    if order == 1:
        return -cmath.log(1 - complex(x))
    n = -order
    if n == 0:
        return x / (1 - x)
    num = 0
    for k, a in enumerate(eulerian_row(n)):
        num = num + a * x**k
    return x * num / (1 - x) ** (n + 1)
