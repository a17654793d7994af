"""Rational Hilbert series in factored form ``h(t) / prod (1 - t^d)``.

Everything here is exact: numerators are coefficient lists (index = degree)
of ints or Fractions, and the order of the pole at t = 1 is obtained by
counting denominator factors and dividing the numerator by (1 - t), never by
numerical root finding.
"""

from __future__ import annotations

import itertools
import math
import re
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class UndefinedSeriesError(ValueError):
    pass


class NotAHilbertSeriesError(ValueError):
    pass


class FactorizationError(ValueError):
    pass


class InsufficientDataError(ValueError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _trim(coeffs) -> tuple:
    coeffs = [_norm(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def times_one_minus(coeffs: Sequence, d: int) -> list:
    """Multiply by (1 - t^d)."""
    out = list(coeffs) + [0] * d
    for i, c in enumerate(coeffs):
        out[i + d] -= c
    return out


def divide_one_minus_t(coeffs: Sequence) -> tuple[list, object]:
    """Synthetic division by (1 - t): returns (quotient, remainder)."""
    # (1 - t) q = h  <=>  q_i = h_i + q_{i-1}; remainder is h(1)
    q, run = [], 0
    for c in coeffs:
        run += c
        q.append(run)
    rem = q.pop() if q else 0
    # the last partial sum is h(1); the quotient has degree deg(h) - 1
    return q, rem


def vanishing_order_at_one(coeffs: Sequence) -> int:
    h = list(_trim(coeffs))
    if not h:
        raise UndefinedSeriesError("zero numerator")
    k = 0
    while True:
        q, rem = divide_one_minus_t(h)
        if rem != 0:
            return k
        h, k = q, k + 1


@dataclass(frozen=True)
class RationalSeries:
    """``numerator(t) / prod_{d in factors} (1 - t^d)``."""

    numerator: tuple
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "numerator", _trim(self.numerator))
        fs = tuple(sorted(int(d) for d in self.factors))
        if any(d < 1 for d in fs):
            raise ValueError("denominator exponents must be positive")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def polynomial(cls, coeffs) -> "RationalSeries":
        return cls(tuple(coeffs), ())

    def is_zero(self) -> bool:
        return not self.numerator

    def expand(self, N: int) -> list:
        return expand(self, N)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        """Sum over the common denominator (the multiset union of factors)."""
        fa, fb = list(self.factors), list(other.factors)
        common, extra_a, extra_b = [], [], []
        rest_b = list(fb)
        for d in fa:
            if d in rest_b:
                rest_b.remove(d)
                common.append(d)
            else:
                extra_a.append(d)
        extra_b = rest_b
        na, nb = list(self.numerator), list(other.numerator)
        for d in extra_b:
            na = times_one_minus(na, d)
        for d in extra_a:
            nb = times_one_minus(nb, d)
        n = max(len(na), len(nb))
        num = [(na[i] if i < len(na) else 0) + (nb[i] if i < len(nb) else 0) for i in range(n)]
        return RationalSeries(tuple(num), tuple(common + extra_a + extra_b))

    def same_function(self, other: "RationalSeries") -> bool:
        """Equality as rational functions (cross-multiplied numerators)."""
        a, b = list(self.numerator), list(other.numerator)
        for d in other.factors:
            a = times_one_minus(a, d)
        for d in self.factors:
            b = times_one_minus(b, d)
        return _trim(a) == _trim(b)

    def __str__(self):
        num = format_poly(self.numerator)
        if not self.factors:
            return num
        den = "*".join(
            f"(1-{_tpow(d)})" + (f"^{e}" if e > 1 else "")
            for d, e in ((d, len(list(g))) for d, g in itertools.groupby(self.factors))
        )
        return f"({num})/({den})"

    def to_dict(self) -> dict:
        return {
            "numerator": [str(c) if isinstance(c, Fraction) else c for c in self.numerator],
            "denominator_factors": list(self.factors),
            "text": str(self),
        }


def _tpow(d: int) -> str:
    return "t" if d == 1 else f"t^{d}"


def format_poly(coeffs: Sequence) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        elif mag == 1:
            body = _tpow(i)
        else:
            body = f"{mag}{_tpow(i)}" if isinstance(mag, int) else f"{mag}*{_tpow(i)}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return s


def expand(s: RationalSeries, N: int) -> list:
    """Coefficients a_0..a_N of the power series."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    a = [0] * (N + 1)
    for i, c in enumerate(s.numerator[: N + 1]):
        a[i] = c
    for d in s.factors:
        # multiply by 1/(1 - t^d) = 1 + t^d + t^2d + ...
        for n in range(d, N + 1):
            a[n] += a[n - d]
    return [_norm(x) for x in a]


def pole_multiplicity_at_one(s: RationalSeries) -> int:
    if s.is_zero():
        raise UndefinedSeriesError("the zero series has no pole order")
    return max(len(s.factors) - vanishing_order_at_one(s.numerator), 0)


def gkdim_from_series(s: RationalSeries, depth: int = 64) -> int:
    """Pole multiplicity at 1, after checking the first ``depth`` coefficients
    are nonnegative integers."""
    for n, c in enumerate(expand(s, depth)):
        if not isinstance(c, int) or c < 0:
            raise NotAHilbertSeriesError(f"coefficient of t^{n} is {c}")
    return pole_multiplicity_at_one(s)


def series_product(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    return RationalSeries(tuple(poly_mul(a.numerator, b.numerator)), a.factors + b.factors)


def free_ring_series(m: int) -> RationalSeries:
    """Hilbert series 1/(1-t)^m of a polynomial ring in m degree-1 variables."""
    return RationalSeries((1,), (1,) * m)


def series_divide_by_free_ring(a: RationalSeries, m: int) -> RationalSeries:
    """Divide by 1/(1-t)^m, i.e. multiply by (1-t)^m.

    A (1 - t) factor of the denominator is cancelled when present; otherwise
    the numerator is multiplied by (1 - t).
    """
    if m < 0:
        raise FactorizationError("cannot divide by a negative number of factors")
    factors = list(a.factors)
    num = list(a.numerator)
    for _ in range(m):
        if 1 in factors:
            factors.remove(1)
        else:
            num = times_one_minus(num, 1)
    return RationalSeries(tuple(num), tuple(factors))


def fit_numerator(table, factors: Sequence[int], guard: int = 2):
    """Fit ``h(t)/prod(1 - t^d)`` to a table of dims starting at degree 0.

    ``table`` is a GrowthTable or a sequence a_0..a_N.  The numerator of
    degree <= N - guard is read off the first N - guard + 1 rows; the last
    ``guard`` rows are held out and must be reproduced.  Returns None when
    they are not.
    """
    dims = list(table.coefficients() if hasattr(table, "coefficients") else table)
    N = len(dims) - 1
    if guard < 0:
        raise ValueError("guard must be nonnegative")
    if N - guard < 0:
        raise InsufficientDataError(f"{len(dims)} rows cannot hold out {guard} degrees")
    h = list(dims)
    for d in factors:
        h = times_one_minus(h, d)
    cand = RationalSeries(tuple(h[: N - guard + 1]), tuple(factors))
    if expand(cand, N) != dims:
        return None
    return cand


def denominator_hypotheses(twos: int, threes: int):
    """Multisets of 2's and 3's ordered by size, then by number of 3's."""
    out = []
    for a in range(twos + 1):
        for b in range(threes + 1):
            out.append((a + b, b, (2,) * a + (3,) * b))
    return [f for *_, f in sorted(out)]


def search_fit(table, hypotheses, guard: int = 2):
    """First hypothesis (in the given order) whose fit survives the held-out rows."""
    for factors in hypotheses:
        fit = fit_numerator(table, factors, guard)
        if fit is not None:
            return fit
    return None


# -- growth estimation ---------------------------------------------------------------


@dataclass(frozen=True)
class GrowthEstimate:
    exponent: float
    window: tuple
    method: str


def growth_exponent(dims, window: tuple | None = None, method: str = "log-partial-sums", stride: int = 1) -> GrowthEstimate:
    """Estimate the polynomial growth degree of the partial sums of ``dims``.

    ``log-partial-sums`` fits a least-squares line to (log n, log p_n) over
    the window (default: upper half of the table).  ``finite-differences``
    takes every ``stride``-th partial sum ending at the window end and counts
    the differences needed to reach a constant sequence.
    """
    if hasattr(dims, "coefficients"):
        dims = dims.coefficients()
    dims = list(dims)
    N = len(dims) - 1
    if window is None:
        window = (max(1, N // 2), N)
    lo, hi = window
    lo = max(lo, 1)
    if hi > N or lo > hi:
        raise InsufficientDataError(f"window {window} not inside degrees 1..{N}")
    partial = list(itertools.accumulate(dims))
    if method == "log-partial-sums":
        ns = list(range(lo, hi + 1))
        if len(ns) < 2:
            raise InsufficientDataError("window needs at least two degrees")
        if any(partial[n] <= 0 for n in ns):
            raise InsufficientDataError("partial sums must be positive")
        xs = [math.log(n) for n in ns]
        ys = [math.log(partial[n]) for n in ns]
        slope = statistics.linear_regression(xs, ys).slope
        return GrowthEstimate(max(slope, 0.0), (lo, hi), method)
    if method == "finite-differences":
        seq = [partial[n] for n in range(hi, lo - 1, -stride)][::-1]
        if len(seq) < 2:
            raise InsufficientDataError("window too short for the stride")
        k = 0
        while len(set(seq)) > 1:
            seq = [b - a for a, b in zip(seq, seq[1:])]
            k += 1
            if len(seq) < 2:
                break
        return GrowthEstimate(float(k), (lo, hi), method)
    raise ValueError(f"unknown method {method!r}")


# -- text parsing ----------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str) -> list:
    """Parse a univariate polynomial such as ``1+2t+t^2`` or ``-3/2*t^4``."""
    s = text.replace(" ", "")
    while s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
        s = s[1:-1]
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or mt.end() == pos or (mt.group(2) is None and mt.group(3) is None):
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign = -1 if mt.group(1) == "-" else 1
        if pos > 0 and not mt.group(1):
            raise ValueError(f"missing operator near {s[pos:]!r}")
        c = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        e = (int(mt.group(4)) if mt.group(4) else 1) if mt.group(3) else 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = mt.end()
    n = max(coeffs) + 1
    return [_norm(coeffs.get(i, Fraction(0))) for i in range(n)]


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


_FACTOR = re.compile(r"\(1-t(?:\^(\d+))?\)(?:\^(\d+))?")


def _split_summands(s: str) -> list[tuple[int, str]]:
    """Split at top-level + and - into (sign, text) pieces."""
    out, depth, cur, sign = [], 0, "", 1
    for i, ch in enumerate(s):
        if ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "^*/":
            if cur:
                out.append((sign, cur))
            cur, sign = "", (-1 if ch == "-" else 1)
            continue
        if ch == "-" and i == 0:
            sign = -1
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur:
        out.append((sign, cur))
    return out


def _parse_fraction(s: str) -> RationalSeries:
    depth, split = 0, None
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0 and s[i + 1 : i + 2] == "(":
            split = i
            break
    if split is None:
        return RationalSeries(tuple(parse_poly(s)), ())
    num, den = s[:split], s[split + 1 :]
    while den.startswith("(") and den.endswith(")") and _balanced(den[1:-1]) and not _FACTOR.fullmatch(den):
        den = den[1:-1]
    factors = []
    for part in den.split("*"):
        mt = _FACTOR.fullmatch(part)
        if not mt:
            raise ValueError(f"denominator factor {part!r} is not of the form (1-t^d)^e")
        d = int(mt.group(1) or 1)
        e = int(mt.group(2) or 1)
        factors.extend([d] * e)
    return RationalSeries(tuple(parse_poly(num)), tuple(factors))


def parse_series(text: str) -> RationalSeries:
    """Parse e.g. ``(1+2t+t^2)/((1-t^2)^3)`` or ``2t+(t^2+2t^3)/((1-t^2)^3)``.

    Denominators must be products of ``(1-t^d)`` powers; a summand without a
    denominator is a polynomial.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty series")
    total = RationalSeries((), ())
    for sign, piece in _split_summands(s):
        term = _parse_fraction(piece)
        if sign < 0:
            term = RationalSeries(tuple(-c for c in term.numerator), term.factors)
        total = total + term
    return total
