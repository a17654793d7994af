"""End-to-end GKdim pipeline for the Lie algebra of generic traceless 2 x 2 matrices.

Growth tables of C0, L and W are computed, the sandwich inequality and the
module property are checked degree by degree, rational Hilbert series are
fitted with held-out rows, and GKdim is read off as the pole order at t = 1.
A GKdim claim is only made through a fitted series (or, for L, through the
sandwich between two fitted series), never from a log-regression estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import __version__
from .hilbert import (
    RationalSeries,
    denominator_hypotheses,
    gkdim_from_series,
    growth_exponent,
    search_fit,
)
from .polyring import MODULAR_PRIME
from .spandim import (
    DEFAULT_CAPS,
    GrowthTable,
    ResourceError,
    growth_table,
    module_check,
    sandwich_from_tables,
)

SUPPORTED_M = (2, 3)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class ReproduceReport:
    m: int
    max_degree: int
    backend: str
    tables: dict
    fits: dict
    gkdim: dict
    estimates: dict
    checks: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def expected(self) -> int:
        return 3 * (self.m - 1)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "max_degree": self.max_degree,
            "backend": self.backend,
            "prime": MODULAR_PRIME if self.backend != "exact" else None,
            "engine_version": __version__,
            "expected_gkdim": self.expected,
            "tables": {k: t.to_dict() for k, t in self.tables.items()},
            "fits": {k: (f.to_dict() if f is not None else None) for k, f in self.fits.items()},
            "gkdim": self.gkdim,
            "estimates": self.estimates,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "passed": self.passed,
        }

    def to_text(self) -> str:
        lines = [f"m = {self.m}, degrees <= {self.max_degree}, backend {self.backend}", ""]
        names = {"trace0": "C0", "lie": "L", "assoc": "W"}
        for key in ("trace0", "lie", "assoc"):
            t = self.tables[key]
            lines.append(f"{names[key]:>3}: " + " ".join(str(d) for d in t.coefficients()))
        lines.append("")
        for key in ("trace0", "lie", "assoc"):
            fit = self.fits.get(key)
            g = self.gkdim.get(key)
            shown = str(fit) if fit is not None else "no fit"
            if key == "lie" and self.fits.get("lie_ideal") is not None:
                shown = f"{self.m}t + {self.fits['lie_ideal']}"
            lines.append(
                f"H({names[key]}) = {shown}"
                f"  GKdim = {g['value'] if g else '?'} ({g['method'] if g else '-'})"
            )
        lines.append("")
        width = max(len(c.name) for c in self.checks)
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.detail}")
        lines.append("")
        lines.append(f"verdict: {'all checks pass' if self.passed else 'CHECK FAILURE'}")
        return "\n".join(lines) + "\n"


def lie_ideal_coefficients(lie: GrowthTable) -> list:
    """Dims of the commutator ideal L': those of L with degree 1 removed."""
    c = lie.coefficients()
    return [0] * min(2, len(c)) + c[2:]


def reproduce(m: int, max_degree: int | None = None, backend: str = "modular-then-exact",
              allow_large: bool = False, guard: int = 2) -> ReproduceReport:
    if m not in SUPPORTED_M and not allow_large:
        raise ResourceError(f"m={m} is outside the supported range {SUPPORTED_M}; pass allow_large")
    N = max_degree if max_degree is not None else DEFAULT_CAPS.get(m, 3)
    tables = {
        "trace0": growth_table("trace0", m, N, backend, allow_large),
        "lie": growth_table("lie", m, N, backend, allow_large),
        "assoc": growth_table("assoc", m, N, backend, allow_large),
    }
    expected = 3 * (m - 1)
    report = ReproduceReport(m, N, tables["assoc"].backend, tables, {}, {}, {})
    checks = report.checks

    bad = [n for n in range(N + 1) if not sandwich_from_tables(tables["trace0"], tables["lie"], tables["assoc"], n).holds]
    checks.append(Check("sandwich", not bad, f"holds for n <= {N}" if not bad else f"violated at n = {bad}"))

    mod = module_check(m, N, "exact", allow_large)
    checks.append(Check(
        "module",
        mod.passed,
        f"{len(mod.checks)} products u*v inside L" if mod.passed else f"outside: {mod.failures[:3]}",
    ))

    hyps = denominator_hypotheses(m * (m + 1) // 2, math.comb(m, 3))
    fits = report.fits
    fits["trace0"] = search_fit(tables["trace0"], hyps, guard)
    fits["assoc"] = search_fit(tables["assoc"], hyps, guard)
    ideal = search_fit(lie_ideal_coefficients(tables["lie"]), hyps, guard)
    fits["lie_ideal"] = ideal
    fits["lie"] = None if ideal is None else RationalSeries((0, m), ()) + ideal

    for key in ("trace0", "assoc", "lie"):
        if fits[key] is not None:
            report.gkdim[key] = {"value": gkdim_from_series(fits[key]), "method": "pole order of fitted series"}
    if fits["lie"] is None and "trace0" in report.gkdim and "assoc" in report.gkdim:
        lo, hi = report.gkdim["trace0"]["value"], report.gkdim["assoc"]["value"]
        if lo == hi and not bad:
            report.gkdim["lie"] = {"value": lo, "method": "sandwich between fitted C0 and W"}

    labels = {"trace0": "C0", "assoc": "W", "lie": "L"}
    for key in ("trace0", "assoc", "lie"):
        g = report.gkdim.get(key)
        if g is None:
            checks.append(Check(f"GKdim({labels[key]})", False, f"no fitted series at depth {N}"))
        else:
            checks.append(Check(
                f"GKdim({labels[key]})", g["value"] == expected,
                f"{g['value']} vs 3(m-1) = {expected} via {g['method']}",
            ))

    for key, t in tables.items():
        try:
            est = growth_exponent(t)
            report.estimates[key] = {"exponent": round(est.exponent, 4), "window": list(est.window), "method": est.method}
        except ValueError:
            pass
    return report
