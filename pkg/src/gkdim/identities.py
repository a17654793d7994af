"""The seven matrix identities for generic traceless 2 x 2 matrices.

Each identity is a pair of callables taking a tuple ``(z1, z2, z3, z4)`` of
2 x 2 matrices.  Checking one means expanding ``lhs - rhs`` exactly and
testing it for zero; nothing is assumed about centrality of traces.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from .genmat import (
    GenericMatrix,
    commutator,
    generators,
    left_normed,
    signed_permutations,
    standard_s3,
)
from .polyring import QQ, Field

F = Fraction


def _anti(a, b):
    return a * b + b * a


def _tr(a: GenericMatrix) -> GenericMatrix:
    return GenericMatrix.scalar(a.trace(), a.k)


@dataclass(frozen=True)
class Identity:
    id: int
    description: str
    lhs: Callable[[Sequence[GenericMatrix]], GenericMatrix]
    rhs: Callable[[Sequence[GenericMatrix]], GenericMatrix]


def _id1_rhs(z):
    z1, z2, z3, _ = z
    return (left_normed([1, 2, 3, 3], z) - commutator(commutator(z1, z3), commutator(z2, z3))) * F(1, 4)


def _id2_rhs(z):
    z1, z2, z3, z4 = z
    return (
        left_normed([1, 2, 3, 4], z)
        + left_normed([1, 2, 4, 3], z)
        - commutator(commutator(z1, z3), commutator(z2, z4))
        - commutator(commutator(z1, z4), commutator(z2, z3))
    ) * F(1, 4)


def _id3_rhs(z):
    acc = GenericMatrix.zero(2, z[0].field)
    for sign, p in signed_permutations(3):
        term = left_normed([4, p[0] + 1, p[1] + 1, p[2] + 1], z)
        acc = acc + term if sign > 0 else acc - term
    return acc * F(3, 8)


CATALOG: dict[int, Identity] = {
    ident.id: ident
    for ident in [
        Identity(
            1,
            "[z1,z2] z3^2 = 1/4([z1,z2,z3,z3] - [[z1,z3],[z2,z3]])",
            lambda z: commutator(z[0], z[1]) * (z[2] * z[2]),
            _id1_rhs,
        ),
        Identity(
            2,
            "[z1,z2](z3z4+z4z3) = 1/4([z1,z2,z3,z4] + [z1,z2,z4,z3]"
            " - [[z1,z3],[z2,z4]] - [[z1,z4],[z2,z3]])",
            lambda z: commutator(z[0], z[1]) * _anti(z[2], z[3]),
            _id2_rhs,
        ),
        Identity(
            3,
            "z4 s3(z1,z2,z3) = 3/8 sum_sigma sign(sigma) [z4,z_s1,z_s2,z_s3]",
            lambda z: z[3] * standard_s3(z[0], z[1], z[2]),
            _id3_rhs,
        ),
        Identity(4, "tr(z1^2) I = 2 z1^2", lambda z: _tr(z[0] * z[0]), lambda z: z[0] * z[0] * 2),
        Identity(5, "tr(z1z2) I = z1z2 + z2z1", lambda z: _tr(z[0] * z[1]), lambda z: _anti(z[0], z[1])),
        Identity(
            6,
            "tr(z1z2z3) I = 1/3 s3(z1,z2,z3)",
            lambda z: _tr(z[0] * z[1] * z[2]),
            lambda z: standard_s3(z[0], z[1], z[2]) * F(1, 3),
        ),
        Identity(
            7,
            "[z1,z2,z3] = 2(z1(z2z3+z3z2) - z2(z1z3+z3z1))",
            lambda z: left_normed([1, 2, 3], z),
            lambda z: (z[0] * _anti(z[1], z[2]) - z[1] * _anti(z[0], z[2])) * 2,
        ),
    ]
}


@dataclass
class IdentityCheck:
    id: int
    description: str
    lhs: GenericMatrix
    rhs: GenericMatrix
    status: str
    difference: GenericMatrix | None = None
    seconds: float = dc_field(default=0.0, compare=False)

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def check(identity: Identity, z: Sequence[GenericMatrix]) -> IdentityCheck:
    """Evaluate both sides on the given matrices and compare exactly."""
    t0 = time.perf_counter()
    lhs = identity.lhs(z)
    rhs = identity.rhs(z)
    diff = lhs - rhs
    ok = diff.is_zero()
    return IdentityCheck(
        identity.id,
        identity.description,
        lhs,
        rhs,
        "verified" if ok else "failed",
        None if ok else diff,
        time.perf_counter() - t0,
    )


def verify_identity(id: int, field: Field = QQ, construction: str = "traceless") -> IdentityCheck:
    """Check catalog identity ``id`` on four independent generic traceless matrices.

    ``construction`` is ``"traceless"`` (three variables per matrix) or
    ``"projection"`` (``y - tr(y)/2 I`` with four variables per matrix).
    """
    if id not in CATALOG:
        raise KeyError(f"no identity with id {id}; the catalog has ids 1..7")
    z = generators(4, 2, construction, field)
    return check(CATALOG[id], z)


def verify_all(field: Field = QQ, construction: str = "traceless") -> list[IdentityCheck]:
    z = generators(4, 2, construction, field)
    return [check(CATALOG[i], z) for i in sorted(CATALOG)]
