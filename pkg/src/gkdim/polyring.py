"""Exact scalars and sparse commutative polynomials.

Coefficients live either in the rationals (``QQ``) or in a prime field
``GF(p)`` with p > 3.  Rational coefficients are kept as ``int`` whenever
possible and as :class:`fractions.Fraction` otherwise; both hash and compare
consistently, so a term map never needs a separate normalization pass.

A monomial is a sorted tuple of :class:`VarId` with repetition, e.g.
``(x, x, y)`` for x^2*y.  For monomials of equal degree, ascending tuple order
is exactly graded-lex order with the first variable most significant, which
is why ``monomials_of_degree`` can return ``itertools`` output unchanged.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from typing import Iterable, NamedTuple


class ModeMismatchError(ValueError):
    """Operands carry coefficients from different fields."""


class IncompleteBasisError(ValueError):
    """A polynomial has a monomial that is missing from the requested basis."""


class UnsupportedFieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Field:
    """Coefficient domain: characteristic 0 (``p is None``) or GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not _is_prime(p):
                raise UnsupportedFieldError(f"{p} is not prime")
            if p <= 3:
                raise UnsupportedFieldError(
                    f"characteristic {p} is not supported (need p > 3 or 0)"
                )
        self.p = p

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_exact(self) -> bool:
        return self.p is None

    def __call__(self, value) -> int | Fraction:
        """Coerce an int / Fraction / 'a/b' string into this field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            if isinstance(value, Fraction):
                return value.numerator if value.denominator == 1 else value
            if isinstance(value, int):
                return value
            raise TypeError(f"cannot coerce {value!r} to QQ")
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} is not {self.p}-integral")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def normalize(self, value) -> int | Fraction:
        if self.p is None:
            if type(value) is Fraction and value.denominator == 1:
                return value.numerator
            return value
        return value % self.p

    def inv(self, value):
        if self.p is None:
            return self(Fraction(1) / value)
        return pow(value, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()
#: the fixed prime of the modular fast path
MODULAR_PRIME = 2**31 - 1


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse ``exact`` / ``QQ`` / ``mod:p`` into a field."""
    text = text.strip()
    if text.lower() in ("exact", "qq", "q", "rational"):
        return QQ
    if text.lower().startswith("mod:"):
        return Field(int(text[4:]))
    raise UnsupportedFieldError(f"unknown field {text!r}")


class VarId(NamedTuple):
    """Polynomial variable: entry (row, col) of matrix number ``matrix``."""

    matrix: int
    row: int
    col: int
    symbol: str = "y"

    def __str__(self):
        return f"{self.symbol}[{self.matrix}]({self.row},{self.col})"


Monomial = tuple  # sorted tuple of VarId, repeated by exponent

ONE: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(heapq.merge(a, b))


def mono_key(mono: Monomial):
    """Sort key realising graded-lex order (ascending = 'largest first')."""
    return (len(mono), mono)


def mono_str(mono: Monomial) -> str:
    if not mono:
        return "1"
    parts = []
    for var, group in itertools.groupby(mono):
        e = sum(1 for _ in group)
        parts.append(str(var) if e == 1 else f"{var}^{e}")
    return "*".join(parts)


def monomials_of_degree(variables: Iterable[VarId], n: int) -> list[Monomial]:
    """All monomials of total degree n over ``variables`` in canonical order."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return list(itertools.combinations_with_replacement(sorted(set(variables)), n))


def _fmt_coeff(c) -> str:
    return str(c)


class MultiPoly:
    """Immutable sparse polynomial: ``{monomial: nonzero coefficient}``."""

    __slots__ = ("terms", "field", "_hash")

    def __init__(self, terms=None, field: Field = QQ, *, _trusted: bool = False):
        self.field = field
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for mono, c in (terms or {}).items():
            c = field(c)
            mono = tuple(sorted(mono))
            if mono in clean:
                c = field.normalize(clean[mono] + c)
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field: Field = QQ) -> "MultiPoly":
        return cls({}, field, _trusted=True)

    @classmethod
    def constant(cls, c, field: Field = QQ) -> "MultiPoly":
        c = field(c)
        return cls({ONE: c} if c else {}, field, _trusted=True)

    @classmethod
    def var(cls, v: VarId, field: Field = QQ) -> "MultiPoly":
        return cls({(v,): 1}, field, _trusted=True)

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def is_homogeneous(self, n: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (n is None or n in ds)

    def variables(self) -> set[VarId]:
        return {v for m in self.terms for v in m}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]), reverse=False)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(sorted(mono)), 0)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.field != other.field:
            raise ModeMismatchError(f"{self.field} vs {other.field}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        norm = self.field.normalize
        for mono, c in small.items():
            s = out.get(mono)
            if s is None:
                out[mono] = c
            else:
                s = norm(s + c)
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return MultiPoly(out, self.field, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.normalize
        return MultiPoly({m: norm(-c) for m, c in self.terms.items()}, self.field, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "MultiPoly":
        s = self.field(s)
        if not s:
            return MultiPoly.zero(self.field)
        norm = self.field.normalize
        return MultiPoly({m: norm(c * s) for m, c in self.terms.items()}, self.field, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        norm = self.field.normalize
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = mono_mul(ma, mb)
                out[mono] = out.get(mono, 0) + ca * cb
        return MultiPoly(
            {m: c for m, c in ((m, norm(c)) for m, c in out.items()) if c},
            self.field,
            _trusted=True,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = MultiPoly.constant(1, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.field)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def substitute(self, values: dict) -> "MultiPoly":
        """Replace variables by scalars (or polynomials); others stay symbolic."""
        out = MultiPoly.zero(self.field)
        for mono, c in self.terms.items():
            term = MultiPoly.constant(c, self.field)
            rest = []
            for v in mono:
                if v in values:
                    val = values[v]
                    term = term * (val if isinstance(val, MultiPoly) else MultiPoly.constant(val, self.field))
                else:
                    rest.append(v)
            if rest:
                term = term * MultiPoly({tuple(rest): 1}, self.field, _trusted=True)
            out = out + term
        return out

    def reduce_mod(self, p: int) -> "MultiPoly":
        """Image in GF(p) of a rational polynomial (p-integral coefficients)."""
        if not self.field.is_exact:
            raise ModeMismatchError("reduce_mod expects a rational polynomial")
        return MultiPoly(dict(self.terms), Field(p))

    # -- text -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            neg = self.field.is_exact and c < 0
            mag = -c if neg else c
            if not mono:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = mono_str(mono)
            else:
                body = f"{_fmt_coeff(mag)}*{mono_str(mono)}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, {self.field!r})"


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def basis_index(basis: Iterable[Monomial]) -> dict:
    return {tuple(m): j for j, m in enumerate(basis)}


def coefficient_vector(p: MultiPoly, basis) -> list:
    """Dense coefficient vector of ``p`` over an ordered monomial basis."""
    index = basis if isinstance(basis, dict) else basis_index(basis)
    vec = [0] * len(index)
    for mono, c in p.terms.items():
        j = index.get(mono)
        if j is None:
            raise IncompleteBasisError(f"monomial {mono_str(mono)} not in basis")
        vec[j] = c
    return vec


def from_coefficient_vector(vec, basis, field: Field = QQ) -> MultiPoly:
    return MultiPoly({tuple(m): c for m, c in zip(basis, vec) if c}, field)
