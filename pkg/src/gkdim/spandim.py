"""Graded dimensions of algebras generated by generic 2 x 2 matrices.

Every homogeneous component is computed the same way: build a spanning set
of degree-n elements, flatten each element to a sparse coefficient vector
(columns = canonical monomial order, then matrix entry), and take the rank.

Algebra selectors used throughout:

``assoc``   W, associative algebra generated by traceless z_1..z_m
``lie``     L, Lie algebra generated by z_1..z_m
``trace0``  C0, traces of products of the z_i
``trace``   C, traces of products of generic y_i
``mixed0``  T0, generated by W and C0
``mixed``   T, generated by the y_i and C
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import __version__
from .genmat import (
    GenericMatrix,
    LieWord,
    generators,
    lyndon_brackets,
    lyndon_words,
    necklace_count,
    standard_s3,
)
from .linalg import Echelon
from .polyring import MODULAR_PRIME, QQ, Field, MultiPoly, monomials_of_degree

ALGEBRAS = ("assoc", "lie", "trace0", "trace", "mixed0", "mixed")

#: default degree caps by generator count
DEFAULT_CAPS = {2: 8, 3: 6, 4: 4}
#: caps for the heavier computations with untraced 4-variable generic matrices
TRACE_CAPS = {2: 6, 3: 4}
MIXED_CAPS = {2: 5}


class ResourceError(RuntimeError):
    """A requested degree is beyond the configured cap."""

    def __init__(self, message, shape=None):
        super().__init__(message)
        self.shape = shape


class DegreeMismatchError(ValueError):
    pass


class BackendMismatchError(RuntimeError):
    """Modular prescreen and exact recomputation disagree."""


def backend_field(backend: str) -> Field:
    if backend == "exact":
        return QQ
    if backend == "modular":
        return Field(MODULAR_PRIME)
    if isinstance(backend, Field):
        return backend
    raise ValueError(f"unknown backend {backend!r}")


def _cap_for(algebra: str, m: int) -> int:
    if algebra == "trace":
        return TRACE_CAPS.get(m, 3)
    if algebra in ("mixed", "mixed0"):
        return MIXED_CAPS.get(m, 3)
    return DEFAULT_CAPS.get(m, 3)


def estimated_shape(algebra: str, m: int, n: int) -> tuple[int, int]:
    """Rough (rows, columns) of the coefficient matrix for one component."""
    nvars = 4 * m if algebra in ("trace", "mixed") else 3 * m
    cols = math.comb(nvars + n - 1, n) if n > 0 else 1
    if algebra in ("assoc", "lie", "mixed0", "mixed"):
        cols *= 4
    rows = {
        "assoc": m**n,
        "lie": necklace_count(m, n) if n > 0 else 0,
    }.get(algebra, cols)
    return rows, cols


def check_cap(algebra: str, m: int, n: int, allow_large: bool = False):
    cap = _cap_for(algebra, m)
    if n > cap and not allow_large:
        shape = estimated_shape(algebra, m, n)
        raise ResourceError(
            f"{algebra} component of degree {n} for m={m} exceeds the cap {cap}"
            f" (estimated matrix {shape[0]} x {shape[1]}); pass allow_large to override",
            shape,
        )


# -- flattening ----------------------------------------------------------------


@lru_cache(maxsize=64)
def _monomial_index(variables: frozenset, n: int) -> dict:
    return {mono: j for j, mono in enumerate(monomials_of_degree(variables, n))}


def _variables_of(objs) -> frozenset:
    out = set()
    for x in objs:
        out |= x.variables()
    return frozenset(out)


def flatten(x, index: dict) -> dict:
    """Sparse coefficient vector of a polynomial or matrix over ``index``.

    Matrix columns are ordered by monomial first, then entry position.
    """
    if isinstance(x, MultiPoly):
        return {index[mono]: c for mono, c in x.terms.items()}
    kk = x.k * x.k
    vec = {}
    for p, row in enumerate(x.entries):
        for q, e in enumerate(row):
            off = p * x.k + q
            for mono, c in e.terms.items():
                vec[index[mono] * kk + off] = c
    return vec


def span_rank(elements, n: int, field: Field) -> int:
    elements = list(elements)
    if not elements:
        return 0
    index = _monomial_index(_variables_of(elements), n)
    ech = Echelon(field)
    for x in elements:
        ech.add(flatten(x, index))
    return ech.rank


# -- spanning sets ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _gens(m: int, kind: str, field: Field) -> tuple:
    return generators(m, 2, kind, field)


@lru_cache(maxsize=None)
def words(m: int, n: int, kind: str = "traceless", field: Field = QQ) -> tuple:
    """All m^n products g_{i1}...g_{in} in lexicographic order of the index word."""
    gens = _gens(m, kind, field)
    if n == 0:
        return (GenericMatrix.identity(2, field),)
    if n == 1:
        return gens
    return tuple(w * g for w in words(m, n - 1, kind, field) for g in gens)


_LIE_CACHES: dict = {}


def lie_images(m: int, n: int, spanning: str = "lyndon", field: Field = QQ, kind: str = "traceless") -> list:
    """Matrix images of Lyndon bracketings (or of all left-normed words)."""
    gens = _gens(m, kind, field)
    cache = _LIE_CACHES.setdefault((m, kind, field), {})
    if spanning == "lyndon":
        lws = lyndon_brackets(m, n)
    elif spanning == "left-normed":
        if n == 1:
            lws = [LieWord(i) for i in range(1, m + 1)]
        else:
            lws = [LieWord.left_normed(w) for w in itertools.product(range(1, m + 1), repeat=n)]
    else:
        raise ValueError(f"unknown spanning set {spanning!r}")
    return [w.evaluate(gens, cache) for w in lws]


def trace0_generators(m: int, field: Field = QQ) -> list[tuple[str, int, MultiPoly]]:
    """(label, degree, tr(...)) for tr(z_i z_j), i<=j, and tr(z_i z_j z_k), i<j<k."""
    z = _gens(m, "traceless", field)
    out = []
    for i, j in itertools.combinations_with_replacement(range(m), 2):
        out.append((f"tr(z{i+1}z{j+1})", 2, (z[i] * z[j]).trace()))
    for i, j, k in itertools.combinations(range(m), 3):
        out.append((f"tr(z{i+1}z{j+1}z{k+1})", 3, (z[i] * z[j] * z[k]).trace()))
    return out


def sibirskii_generators(m: int, field: Field = QQ) -> list[tuple[str, int, MultiPoly]]:
    y = _gens(m, "generic", field)
    out = [(f"tr(y{i+1})", 1, y[i].trace()) for i in range(m)]
    for i, j in itertools.combinations_with_replacement(range(m), 2):
        out.append((f"tr(y{i+1}y{j+1})", 2, (y[i] * y[j]).trace()))
    for i, j, k in itertools.combinations(range(m), 3):
        out.append((f"tr(y{i+1}y{j+1}y{k+1})", 3, (y[i] * y[j] * y[k]).trace()))
    return out


def trace_word_generators(m: int, max_len: int, kind: str, field: Field = QQ):
    """tr(w) for every word w of length 1..max_len; identically zero traces dropped."""
    out = []
    for n in range(1, max_len + 1):
        for idx, w in zip(itertools.product(range(1, m + 1), repeat=n), words(m, n, kind, field)):
            t = w.trace()
            if t:
                out.append(("tr(" + "".join(f"g{i}" for i in idx) + ")", n, t))
    return out


def products_of_degree(gens, n: int, field: Field = QQ) -> list:
    """All products of generators (with repetition) of total degree n.

    ``gens`` is a list of (label, degree, poly); n = 0 gives the constant 1.
    """
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(acc)
            return
        for t in range(start, len(gens)):
            d = gens[t][1]
            if d <= remaining:
                rec(t, remaining - d, acc * gens[t][2])

    rec(0, n, MultiPoly.constant(1, field))
    return out


def drensky_generators(m: int, field: Field = QQ) -> list[tuple[str, int, GenericMatrix]]:
    """Matrix representatives 2z_i^2, z_iz_j + z_jz_i (i<j), s3(z_i,z_j,z_k) of C0."""
    z = _gens(m, "traceless", field)
    out = [(f"2z{i+1}^2", 2, z[i] * z[i] * 2) for i in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        out.append((f"z{i+1}z{j+1}+z{j+1}z{i+1}", 2, z[i] * z[j] + z[j] * z[i]))
    for i, j, k in itertools.combinations(range(m), 3):
        out.append((f"s3(z{i+1},z{j+1},z{k+1})", 3, standard_s3(z[i], z[j], z[k])))
    return out


# -- component dimensions --------------------------------------------------------


def assoc_component_dim(m: int, n: int, backend: str = "exact", allow_large: bool = False, kind: str = "traceless") -> int:
    """dim W^(n): rank of all m^n words in the traceless generators."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    check_cap("assoc", m, n, allow_large)
    return span_rank(words(m, n, kind, backend_field(backend)), n, backend_field(backend))


def lie_component_dim(m: int, n: int, backend: str = "exact", allow_large: bool = False, spanning: str = "lyndon") -> int:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return 0
    check_cap("lie", m, n, allow_large)
    field = backend_field(backend)
    return span_rank(lie_images(m, n, spanning, field), n, field)


def trace0_component_dim(m: int, n: int, backend: str = "exact", allow_large: bool = False, generating_set: str = "procesi") -> int:
    """dim C0^(n) from products of tr(z_iz_j), tr(z_iz_jz_k) (or of all trace words)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    check_cap("trace0", m, n, allow_large)
    field = backend_field(backend)
    if generating_set == "procesi":
        gens = trace0_generators(m, field)
    elif generating_set == "words":
        gens = trace_word_generators(m, n, "traceless", field)
    else:
        raise ValueError(f"unknown generating set {generating_set!r}")
    return span_rank(products_of_degree(gens, n, field), n, field)


def trace_component_dim(m: int, n: int, backend: str = "exact", allow_large: bool = False, generating_set: str = "sibirskii") -> int:
    """dim C^(n) from products of Sibirskii generators (or of all trace words)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    check_cap("trace", m, n, allow_large)
    field = backend_field(backend)
    if generating_set == "sibirskii":
        gens = sibirskii_generators(m, field)
    elif generating_set == "words":
        gens = trace_word_generators(m, n, "generic", field)
    else:
        raise ValueError(f"unknown generating set {generating_set!r}")
    return span_rank(products_of_degree(gens, n, field), n, field)


def mixed_trace_component_dim(
    m: int, n: int, traceless: bool, backend: str = "exact", allow_large: bool = False, generating_set: str = "words"
) -> int:
    """dim T^(n) (or T0^(n) when ``traceless``): rank of (trace product) x (word).

    The trace factor of degree j runs over products of traces of words (or of
    the standard generators when ``generating_set`` is ``"generators"``), the
    word factor over all words of length n - j, the empty word being I.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    check_cap("mixed0" if traceless else "mixed", m, n, allow_large)
    field = backend_field(backend)
    kind = "traceless" if traceless else "generic"
    if generating_set == "words":
        tgens = trace_word_generators(m, n, kind, field)
    elif generating_set == "generators":
        tgens = trace0_generators(m, field) if traceless else sibirskii_generators(m, field)
    else:
        raise ValueError(f"unknown generating set {generating_set!r}")
    elements = []
    for j in range(n + 1):
        scalars = products_of_degree(tgens, j, field)
        if not scalars:
            continue
        ws = words(m, n - j, kind, field)
        for s in scalars:
            for w in ws:
                elements.append(w.scale(s))
    return span_rank(elements, n, field)


def component_dim(algebra: str, m: int, n: int, backend: str = "exact", allow_large: bool = False) -> int:
    if algebra == "assoc":
        return assoc_component_dim(m, n, backend, allow_large)
    if algebra == "lie":
        return lie_component_dim(m, n, backend, allow_large)
    if algebra == "trace0":
        return trace0_component_dim(m, n, backend, allow_large)
    if algebra == "trace":
        return trace_component_dim(m, n, backend, allow_large)
    if algebra == "mixed0":
        return mixed_trace_component_dim(m, n, True, backend, allow_large)
    if algebra == "mixed":
        return mixed_trace_component_dim(m, n, False, backend, allow_large)
    raise ValueError(f"unknown algebra {algebra!r}; choose from {', '.join(ALGEBRAS)}")


# -- growth tables ---------------------------------------------------------------


@dataclass
class GrowthTable:
    """Graded dimensions ``rows = [(degree, dim), ...]`` of one algebra."""

    algebra: str
    m: int
    rows: list
    backend: str = "exact"
    meta: dict = dc_field(default_factory=dict)

    @property
    def degrees(self) -> list[int]:
        return [n for n, _ in self.rows]

    @property
    def dims(self) -> list[int]:
        return [d for _, d in self.rows]

    def dim(self, n: int) -> int:
        for deg, d in self.rows:
            if deg == n:
                return d
        raise KeyError(n)

    def coefficients(self) -> list[int]:
        """Dims indexed from degree 0; degrees below the first row count as 0."""
        if not self.rows:
            return []
        start = self.rows[0][0]
        if self.degrees != list(range(start, start + len(self.rows))):
            raise ValueError("table degrees are not contiguous")
        return [0] * start + self.dims

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "dim"])
        w.writerows(self.rows)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, algebra: str = "unknown", m: int = 0, backend: str = "exact") -> "GrowthTable":
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["degree", "dim"]:
            raise ValueError("expected CSV header 'degree,dim'")
        rows = [(int(r["degree"]), int(r["dim"])) for r in reader]
        return cls(algebra, m, rows, backend)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "m": self.m,
            "backend": self.backend,
            "rows": [{"degree": n, "dim": d} for n, d in self.rows],
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "GrowthTable":
        rows = [(int(r["degree"]), int(r["dim"])) for r in data["rows"]]
        return cls(data.get("algebra", "unknown"), int(data.get("m", 0)), rows, data.get("backend", "exact"), data.get("meta", {}))


def growth_table(
    algebra: str,
    m: int,
    max_degree: int,
    backend: str = "exact",
    allow_large: bool = False,
    min_degree: int | None = None,
    timings: bool = False,
) -> GrowthTable:
    """Compute a table of component dimensions.

    ``backend`` is ``exact``, ``modular`` or ``modular-then-exact``; the last
    computes each row both ways and raises :class:`BackendMismatchError` if a
    modular value differs from the exact one.
    """
    if algebra not in ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}; choose from {', '.join(ALGEBRAS)}")
    if min_degree is None:
        min_degree = 1 if algebra == "lie" else 0
    for n in range(min_degree, max_degree + 1):
        check_cap(algebra, m, n, allow_large)
    rows, seconds = [], {}
    for n in range(min_degree, max_degree + 1):
        t0 = time.perf_counter()
        if backend == "modular-then-exact":
            mod = component_dim(algebra, m, n, "modular", True)
            d = component_dim(algebra, m, n, "exact", True)
            if mod != d:
                raise BackendMismatchError(
                    f"{algebra} m={m} n={n}: modular rank {mod} != exact rank {d}"
                )
        else:
            d = component_dim(algebra, m, n, backend, True)
        seconds[n] = round(time.perf_counter() - t0, 3)
        rows.append((n, d))
    meta = {
        "cap": _cap_for(algebra, m),
        "engine_version": __version__,
        "prime": MODULAR_PRIME if backend != "exact" else None,
    }
    if timings:
        meta["seconds"] = seconds
    label = "exact" if backend == "modular-then-exact" else backend
    if backend == "modular-then-exact":
        meta["prescreen"] = f"modular({MODULAR_PRIME}) agreed"
    if label == "modular":
        label = f"modular({MODULAR_PRIME})"
    return GrowthTable(algebra, m, rows, label, meta)


# -- membership, module structure, sandwich ---------------------------------------


@dataclass
class SpanningSet:
    elements: list  # (label, GenericMatrix | MultiPoly)
    degree: int


def membership(x, span: SpanningSet, field: Field | None = None) -> str:
    """'inside' iff x lies in the linear span of ``span``'s elements."""
    if not (x.is_zero() or x.is_homogeneous(span.degree)):
        raise DegreeMismatchError(f"element is not homogeneous of degree {span.degree}")
    for label, e in span.elements:
        if not e.is_homogeneous(span.degree):
            raise DegreeMismatchError(f"spanning element {label} is not of degree {span.degree}")
    if x.is_zero():
        return "inside"
    field = field or x.field
    index = _monomial_index(_variables_of([x] + [e for _, e in span.elements]), span.degree)
    ech = Echelon(field)
    for _, e in span.elements:
        ech.add(flatten(e, index))
    return "inside" if ech.contains(flatten(x, index)) else "outside"


def lie_spanning_set(m: int, n: int, field: Field = QQ) -> SpanningSet:
    lws = lyndon_brackets(m, n)
    return SpanningSet(list(zip(map(str, lws), lie_images(m, n, "lyndon", field))), n)


@dataclass
class ModuleReport:
    m: int
    max_deg: int
    checks: list  # (u, v, degree, inside)

    @property
    def passed(self) -> bool:
        return all(inside for *_, inside in self.checks)

    @property
    def failures(self) -> list:
        return [(u, v, d) for u, v, d, inside in self.checks if not inside]


def module_check(m: int, max_deg: int, backend: str = "exact", allow_large: bool = False) -> ModuleReport:
    """Check that (Lyndon bracket of degree >= 2) * (C0 generator) stays in L."""
    field = backend_field(backend)
    check_cap("lie", m, max_deg, allow_large)
    vs = drensky_generators(m, field)
    lie_ech: dict[int, tuple] = {}

    def lie_space(n):
        if n not in lie_ech:
            imgs = lie_images(m, n, "lyndon", field)
            index = _monomial_index(frozenset(v for g in _gens(m, "traceless", field) for v in g.variables()), n)
            ech = Echelon(field)
            for x in imgs:
                ech.add(flatten(x, index))
            lie_ech[n] = (index, ech)
        return lie_ech[n]

    checks = []
    for a in range(2, max_deg + 1):
        us = [(lw, img) for lw, img in zip(lyndon_brackets(m, a), lie_images(m, a, "lyndon", field))]
        for vlabel, b, v in vs:
            if a + b > max_deg:
                continue
            index, ech = lie_space(a + b)
            for lw, u in us:
                prod = u * v
                checks.append((str(lw), vlabel, a + b, ech.contains(flatten(prod, index))))
    return ModuleReport(m, max_deg, checks)


@dataclass
class SandwichResult:
    n: int
    lower: int  # sum_{k <= n-2} c_k
    middle: int  # sum_{k <= n} l_k
    upper: int  # sum_{k <= n} w_k

    @property
    def holds(self) -> bool:
        return self.lower <= self.middle <= self.upper


def sandwich_from_tables(c: GrowthTable, l: GrowthTable, w: GrowthTable, n: int) -> SandwichResult:
    cc, lc, wc = c.coefficients(), l.coefficients(), w.coefficients()
    if n >= len(lc) or n >= len(wc) or max(n - 2, -1) >= len(cc):
        raise ValueError(f"tables do not reach degree {n}")
    return SandwichResult(n, sum(cc[: max(n - 1, 0)]), sum(lc[1 : n + 1]), sum(wc[: n + 1]))


def sandwich_check(m: int, n: int, backend: str = "exact", tables: dict | None = None, allow_large: bool = False) -> SandwichResult:
    """Exact-integer check of sum c_{<=n-2} <= sum l_{<=n} <= sum w_{<=n}."""
    tables = tables or {}
    c = tables.get("trace0") or growth_table("trace0", m, max(n - 2, 0), backend, allow_large)
    l = tables.get("lie") or growth_table("lie", m, max(n, 1), backend, allow_large)
    w = tables.get("assoc") or growth_table("assoc", m, n, backend, allow_large)
    return sandwich_from_tables(c, l, w, n)
