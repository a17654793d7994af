"""Generic and generic traceless matrices, and their noncommutative algebra.

``generic_matrix(k, i)`` is the k x k matrix of independent variables
``y[i](p,q)``.  ``generic_traceless(2, i)`` uses three fresh variables
``z[i](1,1), z[i](1,2), z[i](2,1)`` with lower-right entry ``-z[i](1,1)``;
``traceless_projection(k, i)`` is the alternative ``y_i - tr(y_i)/k * I``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .polyring import QQ, Field, ModeMismatchError, MultiPoly, VarId


class UnsupportedSizeError(ValueError):
    pass


class SizeMismatchError(ValueError):
    pass


class GenericMatrix:
    """Immutable k x k matrix over :class:`MultiPoly`.

    ``degree`` is a homogeneity tag: ``None`` when unknown or mixed.
    """

    __slots__ = ("k", "entries", "field", "degree")

    def __init__(self, entries, field: Field = QQ, degree: int | None = None):
        rows = tuple(tuple(e for e in row) for row in entries)
        self.k = len(rows)
        if any(len(r) != self.k for r in rows):
            raise SizeMismatchError("matrix must be square")
        for row in rows:
            for e in row:
                if e.field != field:
                    raise ModeMismatchError(f"{e.field} entry in {field} matrix")
        self.entries = rows
        self.field = field
        self.degree = degree

    @classmethod
    def zero(cls, k: int, field: Field = QQ, degree: int | None = None):
        z = MultiPoly.zero(field)
        return cls([[z] * k for _ in range(k)], field, degree)

    @classmethod
    def scalar(cls, poly, k: int, field: Field | None = None, degree: int | None = None):
        """``poly * I_k``; ``poly`` may be a scalar or a MultiPoly."""
        if not isinstance(poly, MultiPoly):
            poly = MultiPoly.constant(poly, field or QQ)
        field = poly.field
        z = MultiPoly.zero(field)
        if degree is None and poly.is_homogeneous() and not poly.is_zero():
            (degree,) = poly.degrees()
        return cls([[poly if p == q else z for q in range(k)] for p in range(k)], field, degree)

    @classmethod
    def identity(cls, k: int, field: Field = QQ):
        return cls.scalar(MultiPoly.constant(1, field), k, degree=0)

    def __getitem__(self, pq):
        p, q = pq
        return self.entries[p][q]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_homogeneous(self, n: int | None = None) -> bool:
        ds = set()
        for row in self.entries:
            for e in row:
                ds |= e.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (n is None or n in ds)

    def variables(self) -> set:
        return {v for row in self.entries for e in row for v in e.variables()}

    def _check(self, other: "GenericMatrix"):
        if not isinstance(other, GenericMatrix):
            raise TypeError(f"expected GenericMatrix, got {type(other).__name__}")
        if self.k != other.k:
            raise SizeMismatchError(f"{self.k}x{self.k} vs {other.k}x{other.k}")
        if self.field != other.field:
            raise ModeMismatchError(f"{self.field} vs {other.field}")

    def _add_degree(self, other):
        if self.is_zero():
            return other.degree
        if other.is_zero():
            return self.degree
        return self.degree if self.degree == other.degree else None

    def __add__(self, other: "GenericMatrix") -> "GenericMatrix":
        self._check(other)
        rows = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return GenericMatrix(rows, self.field, self._add_degree(other))

    def __neg__(self):
        return GenericMatrix([[-a for a in r] for r in self.entries], self.field, self.degree)

    def __sub__(self, other: "GenericMatrix") -> "GenericMatrix":
        return self + (-other)

    def scale(self, s) -> "GenericMatrix":
        if isinstance(s, MultiPoly):
            deg = None
            if self.degree is not None and s.is_homogeneous() and not s.is_zero():
                deg = self.degree + next(iter(s.degrees()))
            return GenericMatrix([[s * a for a in r] for r in self.entries], self.field, deg)
        return GenericMatrix([[a.scale(s) for a in r] for r in self.entries], self.field, self.degree)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self.scale(other)
        self._check(other)
        k = self.k
        zero = MultiPoly.zero(self.field)
        rows = []
        for p in range(k):
            row = []
            for q in range(k):
                acc = zero
                for r in range(k):
                    a, b = self.entries[p][r], other.entries[r][q]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = self.degree + other.degree
        return GenericMatrix(rows, self.field, deg)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GenericMatrix):
            return NotImplemented
        return self.k == other.k and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        return hash((self.k, self.field, self.entries))

    def trace(self) -> MultiPoly:
        acc = MultiPoly.zero(self.field)
        for p in range(self.k):
            acc = acc + self.entries[p][p]
        return acc

    def to_text(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def __str__(self):
        return "[" + "; ".join(", ".join(r) for r in self.to_text()) + "]"

    def __repr__(self):
        return f"GenericMatrix({self}, {self.field!r})"


def generic_matrix(k: int, i: int, field: Field = QQ) -> GenericMatrix:
    if k < 2:
        raise UnsupportedSizeError(f"k={k}: generic matrices need k >= 2")
    if i < 1:
        raise ValueError("matrix index starts at 1")
    rows = [[MultiPoly.var(VarId(i, p, q, "y"), field) for q in range(1, k + 1)] for p in range(1, k + 1)]
    return GenericMatrix(rows, field, degree=1)


def generic_traceless(k: int, i: int, field: Field = QQ) -> GenericMatrix:
    """Generic traceless matrix with the minimal number of variables.

    For k = 2 the entries are ``(a, b; c, -a)``.  For larger k the diagonal
    uses k-1 fresh variables and the last diagonal entry is minus their sum.
    """
    if k < 2:
        raise UnsupportedSizeError(f"k={k}: generic matrices need k >= 2")
    if i < 1:
        raise ValueError("matrix index starts at 1")
    rows = []
    for p in range(1, k + 1):
        row = []
        for q in range(1, k + 1):
            if (p, q) == (k, k):
                acc = MultiPoly.zero(field)
                for d in range(1, k):
                    acc = acc - MultiPoly.var(VarId(i, d, d, "z"), field)
                row.append(acc)
            else:
                row.append(MultiPoly.var(VarId(i, p, q, "z"), field))
        rows.append(row)
    return GenericMatrix(rows, field, degree=1)


def traceless_projection(k: int, i: int, field: Field = QQ) -> GenericMatrix:
    """``y_i - (1/k) tr(y_i) I`` built from the 4-variable generic matrix."""
    y = generic_matrix(k, i, field)
    t = y.trace().scale(Fraction(1, k))
    out = y - GenericMatrix.scalar(t, k)
    return GenericMatrix(out.entries, field, degree=1)


def generators(m: int, k: int = 2, kind: str = "traceless", field: Field = QQ) -> tuple:
    """The first m generators: kind is 'traceless', 'projection' or 'generic'."""
    make = {
        "traceless": generic_traceless,
        "projection": traceless_projection,
        "generic": generic_matrix,
    }[kind]
    return tuple(make(k, i, field) for i in range(1, m + 1))


def mat_mul(a: GenericMatrix, b: GenericMatrix) -> GenericMatrix:
    return a * b


def mat_add(a: GenericMatrix, b: GenericMatrix) -> GenericMatrix:
    return a + b


def mat_scale(s, a: GenericMatrix) -> GenericMatrix:
    return a.scale(s)


def trace(a: GenericMatrix) -> MultiPoly:
    return a.trace()


def commutator(a: GenericMatrix, b: GenericMatrix) -> GenericMatrix:
    return a * b - b * a


def left_normed(indices: Sequence[int], gens: Sequence[GenericMatrix]) -> GenericMatrix:
    """``[[...[g_{i1}, g_{i2}], ...], g_{in}]`` with 1-based indices."""
    if len(indices) < 2:
        raise ValueError("a commutator needs at least two entries")
    acc = gens[indices[0] - 1]
    for i in indices[1:]:
        acc = commutator(acc, gens[i - 1])
    return acc


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def signed_permutations(n: int):
    """Pairs (sign, permutation of range(n))."""
    return [(_perm_sign(p), p) for p in itertools.permutations(range(n))]


def standard_s3(a: GenericMatrix, b: GenericMatrix, c: GenericMatrix) -> GenericMatrix:
    a._check(b)
    a._check(c)
    xs = (a, b, c)
    acc = GenericMatrix.zero(a.k, a.field)
    for sign, p in signed_permutations(3):
        term = xs[p[0]] * xs[p[1]] * xs[p[2]]
        acc = acc + term if sign > 0 else acc - term
    return acc


# -- Lie words ---------------------------------------------------------------

Tree = Union[int, tuple]


@dataclass(frozen=True)
class LieWord:
    """A bracketing of generator indices: a leaf is an int, a node a pair."""

    tree: Tree

    @property
    def letters(self) -> tuple:
        def walk(t):
            if isinstance(t, int):
                return (t,)
            return walk(t[0]) + walk(t[1])

        return walk(self.tree)

    @property
    def degree(self) -> int:
        return len(self.letters)

    @classmethod
    def left_normed(cls, indices: Sequence[int]) -> "LieWord":
        tree: Tree = indices[0]
        for i in indices[1:]:
            tree = (tree, i)
        return cls(tree)

    def evaluate(self, gens: Sequence[GenericMatrix], cache: dict | None = None) -> GenericMatrix:
        cache = {} if cache is None else cache

        def ev(t):
            if isinstance(t, int):
                return gens[t - 1]
            if t not in cache:
                cache[t] = commutator(ev(t[0]), ev(t[1]))
            return cache[t]

        return ev(self.tree)

    def __str__(self):
        def show(t):
            if isinstance(t, int):
                return f"z{t}"
            return f"[{show(t[0])},{show(t[1])}]"

        return show(self.tree)


def lyndon_words(m: int, n: int) -> list[tuple]:
    """Lyndon words of length exactly n over letters 1..m (Duval's algorithm)."""
    if m < 1 or n < 1:
        return []
    out = []
    w = [0]
    while w:
        if len(w) == n:
            out.append(tuple(x + 1 for x in w))
        # extend periodically to length n, then bump the last letter
        w = [w[i % len(w)] for i in range(n)]
        while w and w[-1] == m - 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def is_lyndon(word: Sequence[int]) -> bool:
    w = tuple(word)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def standard_bracketing(word: tuple) -> Tree:
    """Standard bracketing via the longest proper Lyndon suffix."""
    if len(word) == 1:
        return word[0]
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return (standard_bracketing(word[:i]), standard_bracketing(word[i:]))
    raise ValueError(f"{word} is not a Lyndon word")


def lyndon_brackets(m: int, n: int) -> list[LieWord]:
    return [LieWord(standard_bracketing(w)) for w in lyndon_words(m, n)]


def mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def necklace_count(m: int, n: int) -> int:
    """Number of Lyndon words of length n over m letters."""
    total = sum(mobius(d) * m ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n
