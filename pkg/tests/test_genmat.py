import itertools
import random
from fractions import Fraction

import pytest

from gkdim.genmat import (
    GenericMatrix,
    LieWord,
    UnsupportedSizeError,
    commutator,
    generators,
    generic_matrix,
    generic_traceless,
    left_normed,
    lyndon_brackets,
    lyndon_words,
    mat_add,
    mat_mul,
    mat_scale,
    necklace_count,
    standard_s3,
    trace,
    traceless_projection,
)
from gkdim.linalg import Echelon
from gkdim.polyring import MultiPoly, VarId
from gkdim.spandim import _monomial_index, assoc_component_dim, flatten, lie_images

from oracles import lyndon_brute_force

z1, z2, z3 = generators(3)


def test_generic_matrix():
    y1, y2 = generic_matrix(2, 1), generic_matrix(2, 2)
    assert len(y1.variables()) == 4
    assert not (y1.variables() & y2.variables())
    assert trace(y1) == MultiPoly.var(VarId(1, 1, 1)) + MultiPoly.var(VarId(1, 2, 2))
    assert y1.degree == 1
    with pytest.raises(UnsupportedSizeError):
        generic_matrix(1, 1)


def test_generic_traceless():
    for i in (1, 2, 3):
        z = generic_traceless(2, i)
        assert trace(z).is_zero()
        assert len(z.variables()) == 3
    assert trace(traceless_projection(2, 1)).is_zero()
    assert trace(generic_traceless(3, 1)).is_zero()
    assert trace(traceless_projection(3, 1)).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projection_gives_same_ranks(n):
    assert assoc_component_dim(2, n, kind="projection") == assoc_component_dim(2, n)


def test_matrix_arithmetic():
    one = GenericMatrix.identity(2)
    assert mat_mul(z1, one) == z1
    assert mat_add(z1, mat_scale(-1, z1)).is_zero()
    assert mat_add(GenericMatrix.zero(2), z1) == z1
    assert mat_scale(Fraction(1, 2), mat_scale(2, z1)) == z1
    assert (z1 * z2) * z3 == z1 * (z2 * z3)
    assert (z1 * z2 * z3).degree == 3


def test_square_of_traceless_is_scalar():
    sq = z1 * z1
    assert sq[0, 1].is_zero() and sq[1, 0].is_zero()
    a, b, c = (MultiPoly.var(VarId(1, p, q, "z")) for p, q in ((1, 1), (1, 2), (2, 1)))
    det = -a * a - b * c
    assert sq == GenericMatrix.scalar(-det, 2)


def test_cayley_hamilton_traceless():
    rng = random.Random(3)
    for _ in range(5):
        u = z1.scale(rng.randint(-3, 3)) + z2.scale(rng.randint(-3, 3)) + z3.scale(Fraction(rng.randint(-3, 3), 2))
        assert (u * u - GenericMatrix.scalar((u * u).trace().scale(Fraction(1, 2)), 2)).is_zero()


def test_trace_is_cyclic():
    y = generators(3, kind="generic")
    rng = random.Random(1)
    for _ in range(5):
        a = y[rng.randrange(3)] * y[rng.randrange(3)]
        b = y[rng.randrange(3)] * y[rng.randrange(3)] * y[rng.randrange(3)]
        assert trace(a * b) == trace(b * a)


def test_commutators():
    assert commutator(z1, z1).is_zero()
    assert (commutator(z1, z2) + commutator(z2, z1)).is_zero()
    jac = commutator(commutator(z1, z2), z3) + commutator(commutator(z2, z3), z1) + commutator(commutator(z3, z1), z2)
    assert jac.is_zero()
    assert left_normed([1, 2, 3], (z1, z2, z3)) == commutator(commutator(z1, z2), z3)
    with pytest.raises(ValueError):
        left_normed([1], (z1,))


def test_s3():
    assert standard_s3(z1, z1, z2).is_zero()
    assert standard_s3(z2, z1, z3) == -standard_s3(z1, z2, z3)
    assert standard_s3(z1, z2, z3) == GenericMatrix.scalar((z1 * z2 * z3).trace(), 2).scale(3)


def test_lyndon_examples():
    assert len(lyndon_brackets(2, 1)) == 2
    assert [str(w) for w in lyndon_brackets(2, 2)] == ["[z1,z2]"]
    assert len(lyndon_brackets(2, 6)) == 9


@pytest.mark.parametrize("m,n", [(m, n) for m in (1, 2, 3) for n in range(1, 8)])
def test_lyndon_words_match_brute_force_and_necklace_formula(m, n):
    assert lyndon_words(m, n) == lyndon_brute_force(m, n)
    assert len(lyndon_words(m, n)) == necklace_count(m, n)


def test_lie_word_shape():
    w = LieWord.left_normed([1, 2, 2])
    assert w.letters == (1, 2, 2) and w.degree == 3
    assert w.evaluate((z1, z2)) == left_normed([1, 2, 2], (z1, z2))
    for lw in lyndon_brackets(3, 5):
        assert lw.degree == 5


@pytest.mark.parametrize("m,n", [(2, n) for n in range(2, 7)] + [(3, n) for n in range(2, 6)])
def test_lyndon_images_lie_in_left_normed_span(m, n):
    gens = generators(m)
    index = _monomial_index(frozenset(v for g in gens for v in g.variables()), n)
    ech = Echelon()
    for w in itertools.product(range(1, m + 1), repeat=n):
        ech.add(flatten(left_normed(w, gens), index))
    r = ech.rank
    for img in lie_images(m, n):
        ech.add(flatten(img, index))
    assert ech.rank == r


def test_degree_tags():
    assert (z1 * z2).degree == 2
    assert commutator(z1, z2 * z3).degree == 3
    assert (z1 * z2).is_homogeneous(2)
    s = (z1 * z1).trace()
    assert z2.scale(s).degree == 3


def test_no_zero_divisors_witness():
    # products of random nonzero elements of W (m = 2, degree <= 2) stay nonzero
    rng = random.Random(7)
    z = generators(2)
    basis = [GenericMatrix.identity(2)] + list(z) + [a * b for a in z for b in z]
    for _ in range(20):
        a, b = (
            sum((w.scale(rng.randint(-3, 3)) for w in basis[1:]), basis[0].scale(rng.randint(-3, 3)))
            for _ in range(2)
        )
        if a.is_zero() or b.is_zero():
            continue
        assert not (a * b).is_zero()
