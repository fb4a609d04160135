"""Genus expansion of the degenerate (constant-map and genus-zero) contributions.

For each genus g >= 2 the coefficient of lambda^(2g-2) is

    chi (-1)^(g-1) B_2g B_(2g-2) / (4g (2g-2) (2g-2)!)
      + sum_beta GV(beta) (-1)^(g-1) B_2g / (2g (2g-2)!) Li_(3-2g)(exp(2 pi i v_beta)),

where the polylogarithm resums the lattice sum over n of (v_beta + n)^(2-2g).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import NonconvergentInput, OutOfRange
from .special import bernoulli, polylog_neg


@dataclass(frozen=True)
class GenusCoefficient:
    genus: int
    constant_maps: Fraction
    total: complex


def constant_map_coefficient(chi: int, g: int) -> Fraction:
    sign = -1 if g % 2 == 0 else 1  # (-1)^(g-1)
    return Fraction(chi * sign) * bernoulli(2 * g) * bernoulli(2 * g - 2) / (
        4 * g * (2 * g - 2) * math.factorial(2 * g - 2)
    )


def gw_degenerate_series(chi: int, gv: Mapping, g_max: int) -> list:
    """Coefficients for g = 2..g_max.

    ``gv`` maps a label beta to ``(GV(beta), v_beta)`` with Im v_beta > 0.
    """
    if not 2 <= g_max <= 12:
        raise OutOfRange("g_max must lie in [2, 12]")
    entries = []
    for beta, (count, v) in sorted(gv.items(), key=lambda kv: str(kv[0])):
        v = complex(v)
        if not v.imag > 0:
            raise NonconvergentInput(f"Im v_{beta} = {v.imag} is not positive")
        entries.append((int(count), cmath.exp(2j * math.pi * v)))
    out = []
    for g in range(2, g_max + 1):
        const = constant_map_coefficient(chi, g)
        sign = -1 if g % 2 == 0 else 1
        pref = sign * float(bernoulli(2 * g)) / (2 * g * math.factorial(2 * g - 2))
        total = complex(float(const))
        for count, q in entries:
            total += count * pref * polylog_neg(3 - 2 * g, q)
        out.append(GenusCoefficient(g, const, total))
    return out


def lattice_sum(z: complex, p: int, K: int, tail: bool = True) -> complex:
    """sum_{|k| <= K} (z - k)^(-p), optionally plus an Euler-Maclaurin estimate of |k| > K."""
    if p < 2:
        raise ValueError("the lattice sum converges only for p >= 2")
    z = complex(z)
    ks = range(-K, K + 1)
    total = math.fsum(((z - k) ** (-p)).real for k in ks) + 1j * math.fsum(((z - k) ** (-p)).imag for k in ks)
    if tail:
        a = K + 1
        total += (-1) ** p * _tail(z, p, a) + _tail(-z, p, a)
    return total


def _tail(z: complex, p: int, a: int) -> complex:
    """sum_{k >= a} (k - z)^(-p) by Euler-Maclaurin through the B_4 term."""
    u = a - z
    return u ** (1 - p) / (p - 1) + u ** (-p) / 2 + p / 12 * u ** (-p - 1) - p * (p + 1) * (p + 2) / 720 * u ** (-p - 3)


def lattice_sum_closed_form(z: complex, p: int) -> complex:
    """(-2 pi i)^p / (p-1)! * Li_(1-p)(exp(2 pi i z)) for Im z > 0."""
    z = complex(z)
    if not z.imag > 0:
        raise NonconvergentInput("closed form needs Im z > 0")
    return (-2j * math.pi) ** p / math.factorial(p - 1) * polylog_neg(1 - p, cmath.exp(2j * math.pi * z))
