"""Sparse row-echelon forms for exact rank and membership tests.

Rows are dicts ``{column: coefficient}``.  Over QQ every row is scaled to a
primitive integer vector and elimination is fraction free (cross
multiplication followed by division by the content), so there is no
rational arithmetic inside the loop.  Over GF(p) pivot rows are made monic.
Pivoting is deterministic: the pivot of a row is its smallest column.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .polyring import QQ, Field


def _primitive(row: dict) -> dict:
    """Scale a rational row to coprime integers with positive leading entry."""
    den, frac = 1, False
    for c in row.values():
        if type(c) is Fraction:
            frac = True
            den = den * c.denominator // math.gcd(den, c.denominator)
    if frac:
        row = {j: int(c * den) for j, c in row.items()}
    g = 0
    for c in row.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {j: c // g for j, c in row.items()}
    return row


class Echelon:
    """Incrementally maintained echelon basis of a row space."""

    def __init__(self, field: Field = QQ):
        self.field = field
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return len(self.pivots)

    def _prepare(self, vec) -> dict:
        if not isinstance(vec, dict):
            vec = {j: c for j, c in enumerate(vec) if c}
        if self.field.is_exact:
            row = {j: c for j, c in vec.items() if c}
            return _primitive(row) if row else row
        conv = self.field
        row = {}
        for j, c in vec.items():
            c = conv(c)
            if c:
                row[j] = c
        return row

    def reduce(self, vec) -> dict:
        """Reduce ``vec`` against the current pivots; returns the remainder."""
        row = self._prepare(vec)
        if self.field.is_exact:
            return self._reduce_exact(row)
        return self._reduce_mod(row)

    def _reduce_exact(self, row: dict) -> dict:
        pivots = self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                break
            a, b = piv[c], row[c]
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            new = {j: v * fa for j, v in row.items()} if fa != 1 else dict(row)
            for j, v in piv.items():
                s = new.get(j, 0) - fb * v
                if s:
                    new[j] = s
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
        return row

    def _reduce_mod(self, row: dict) -> dict:
        p = self.field.p
        pivots = self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                break
            f = row[c]
            for j, v in piv.items():
                s = (row.get(j, 0) - f * v) % p
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
        return row

    def add(self, vec) -> bool:
        """Insert a row; True when the rank grew."""
        row = self.reduce(vec)
        if not row:
            return False
        lead = min(row)
        if not self.field.is_exact:
            p = self.field.p
            inv = pow(row[lead], -1, p)
            row = {j: v * inv % p for j, v in row.items()}
        self.pivots[lead] = row
        return True

    def extend(self, vecs: Iterable) -> int:
        for v in vecs:
            self.add(v)
        return self.rank

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def rank(rows: Iterable, field: Field = QQ) -> int:
    """Rank of a collection of sparse (dict) or dense (sequence) rows."""
    ech = Echelon(field)
    return ech.extend(rows)
