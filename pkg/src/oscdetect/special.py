"""Scalar special functions needed by the overlap formulas.

Self-contained implementations (no scipy): Laguerre and associated
Laguerre polynomials by their three-term recurrences, Bessel J0 and
modified Bessel I0, and log-factorials.  Accuracy targets are explicit
(roughly 1e-12 absolute on the working ranges) so that the closed-form
overlap expressions downstream dominate the error budget.
"""

from __future__ import annotations

import math

__all__ = [
    "laguerre",
    "assoc_laguerre",
    "bessel_j0",
    "bessel_i0",
    "bessel_i0_scaled",
    "ln_factorial",
]


def _check_finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


def _check_index(n: int, name: str = "n") -> int:
    if n != int(n) or n < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


def laguerre(n: int, x: float) -> float:
    """Laguerre polynomial L_n(x).

    Uses the stable recurrence (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
    """
    n = _check_index(n)
    x = _check_finite(x)
    if n == 0:
        return 1.0
    prev, cur = 1.0, 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0)
    return cur


def assoc_laguerre(n: int, k: int, x: float) -> float:
    """Associated Laguerre polynomial L_n^{(k)}(x) for x >= 0."""
    n = _check_index(n, "n")
    k = _check_index(k, "k")
    x = _check_finite(x)
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x!r}")
    if n == 0:
        return 1.0
    prev, cur = 1.0, k + 1.0 - x
    for j in range(1, n):
        prev, cur = cur, ((2.0 * j + k + 1.0 - x) * cur - (j + k) * prev) / (j + 1.0)
    return cur


# ---------------------------------------------------------------------------
# Bessel J0
# ---------------------------------------------------------------------------

def _j0_series(x: float) -> float:
    # Alternating power series; cancellation keeps this below 1e-12
    # absolute only for |x| <~ 12.
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    m = 0
    while True:
        m += 1
        term *= -q / (m * m)
        total += term
        if abs(term) < 1e-18 * (abs(total) + 1.0):
            return total


def _j0_miller(x: float) -> float:
    # Backward (Miller) recurrence, normalized with J0 + 2*sum J_{2k} = 1.
    # Machine-accurate for the mid range where neither the power series
    # nor the large-argument expansion reaches 1e-12.
    start = int(x + 25.0 * x ** (1.0 / 3.0) + 60.0)
    if start % 2:
        start += 1
    fp = 0.0          # J_{n+1} (unnormalized)
    fc = 1e-300       # J_n
    even_sum = 0.0
    j0 = 0.0
    for n in range(start, 0, -1):
        fm = (2.0 * n / x) * fc - fp
        fp, fc = fc, fm
        if n - 1 == 0:
            j0 = fc
        elif (n - 1) % 2 == 0:
            even_sum += fc
        if abs(fc) > 1e280:
            fc *= 1e-280
            fp *= 1e-280
            even_sum *= 1e-280
            j0 *= 1e-280
    return j0 / (j0 + 2.0 * even_sum)


def _j0_asymptotic(x: float) -> float:
    # Hankel expansion via H0^(1)(x) ~ sqrt(2/(pi x)) e^{i(x - pi/4)} sum_k (0,k)(i/x)^k
    # with the Hankel symbol recurrence (0,k) = (0,k-1) * (-(2k-1)^2) / (8k).
    s = complex(1.0, 0.0)
    coef = 1.0
    ix = complex(0.0, 1.0 / x)
    p = complex(1.0, 0.0)
    for k in range(1, 14):
        coef *= -((2.0 * k - 1.0) ** 2) / (8.0 * k)
        p *= ix
        s += coef * p
    amp = math.sqrt(2.0 / (math.pi * x))
    phase = complex(math.cos(x - 0.25 * math.pi), math.sin(x - 0.25 * math.pi))
    return (amp * phase * s).real


def bessel_j0(x: float) -> float:
    """Bessel function of the first kind J0(x).

    Absolute error <= 1e-12 on |x| <= 100 (power series, then a backward
    recurrence for the mid range, then the large-argument expansion).
    """
    x = abs(_check_finite(x))
    if x == 0.0:
        return 1.0
    if x <= 12.0:
        return _j0_series(x)
    if x <= 100.0:
        return _j0_miller(x)
    return _j0_asymptotic(x)


# ---------------------------------------------------------------------------
# Modified Bessel I0
# ---------------------------------------------------------------------------

def _i0_series(x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    m = 0
    while True:
        m += 1
        term *= q / (m * m)
        total += term
        if term < 1e-18 * total:
            return total


def _i0_scaled_asymptotic(x: float) -> float:
    # e^{-x} I0(x) ~ (2 pi x)^{-1/2} * sum_k prod(2j-1)^2 / (k! (8x)^k)
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * (2.0 * k - 1.0) ** 2 / (8.0 * k * x)
        if nxt >= term or nxt < 1e-18 * total:
            total += min(nxt, term)
            break
        term = nxt
        total += term
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0_scaled(x: float) -> float:
    """Exponentially scaled modified Bessel function e^{-x} I0(x).

    Never overflows; lies in (0, 1] for x >= 0.
    """
    x = _check_finite(x)
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x!r}")
    if x <= 15.0:
        return _i0_series(x) * math.exp(-x)
    return _i0_scaled_asymptotic(x)


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind I0(x), x >= 0."""
    x = _check_finite(x)
    if x < 0.0:
        raise ValueError(f"x must be >= 0, got {x!r}")
    if x <= 15.0:
        return _i0_series(x)
    # assemble in log space so the representable range is not shrunk
    return math.exp(x + math.log(_i0_scaled_asymptotic(x)))


# ---------------------------------------------------------------------------
# Log-factorials
# ---------------------------------------------------------------------------

_LNF_TABLE_SIZE = 257
_lnf_table = [0.0] * _LNF_TABLE_SIZE
for _i in range(2, _LNF_TABLE_SIZE):
    _lnf_table[_i] = _lnf_table[_i - 1] + math.log(_i)


def ln_factorial(n: int) -> float:
    """ln(n!), exactly summed for n <= 256 and by a Stirling expansion beyond.

    Relative error <= 1e-12.
    """
    n = _check_index(n)
    if n < _LNF_TABLE_SIZE:
        return _lnf_table[n]
    fn = float(n)
    inv = 1.0 / fn
    inv2 = inv * inv
    return (
        fn * (math.log(fn) - 1.0)
        + 0.5 * math.log(2.0 * math.pi * fn)
        + inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
    )
