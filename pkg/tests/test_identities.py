import random
from dataclasses import replace
from fractions import Fraction

import pytest

from gkdim.genmat import GenericMatrix, generators
from gkdim.identities import CATALOG, check, verify_all, verify_identity
from gkdim.polyring import GF, MultiPoly


@pytest.mark.parametrize("ident", range(1, 8))
def test_each_identity_verifies(ident):
    c = verify_identity(ident)
    assert c.verified, c.difference
    assert c.difference is None


def test_verify_all_exact_modular_projection():
    for kwargs in ({}, {"field": GF(7)}, {"field": GF(2**31 - 1)}, {"construction": "projection"}):
        checks = verify_all(**kwargs)
        assert [c.id for c in checks] == list(range(1, 8))
        assert all(c.verified for c in checks)


def test_negative_control_flipped_sign():
    ident = CATALOG[3]
    flipped = replace(ident, rhs=lambda z: -ident.rhs(z))
    c = check(flipped, generators(4))
    assert c.status == "failed"
    assert not c.difference.is_zero()


def test_unknown_id():
    with pytest.raises(KeyError):
        verify_identity(8)


def _random_traceless(rng):
    vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
    a, b, c = (MultiPoly.constant(v) for v in vals)
    return GenericMatrix([[a, b], [c, -a]])


@pytest.mark.parametrize("ident", range(1, 8))
def test_random_rational_specializations(ident):
    rng = random.Random(ident)
    for _ in range(10):
        z = tuple(_random_traceless(rng) for _ in range(4))
        assert check(CATALOG[ident], z).verified
