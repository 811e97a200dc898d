import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bhlab.core import (BasisSet, FockState, Representation, enumerate_basis,
                        hilbert_dimension, quasimomentum_of)
from bhlab.errors import CapacityError, RepresentationError


def test_dimension_examples():
    assert enumerate_basis(5, 5).dim == 126
    assert enumerate_basis(2, 2).dim == 3
    assert enumerate_basis(7, 9).dim == 6435


def test_small_basis_exhaustive():
    b = enumerate_basis(2, 2)
    assert b.occupations.tolist() == [[2, 0], [1, 1], [0, 2]]


def test_dimension_formula_range():
    # closed form against math.comb over the documented range
    for n in range(0, 17):
        for l in range(2, 11):
            assert hilbert_dimension(n, l) == math.comb(n + l - 1, n)


@given(st.integers(min_value=0, max_value=12), st.integers(min_value=2, max_value=7))
@settings(max_examples=40, deadline=None)
def test_enumeration_matches_formula(n, l):
    if hilbert_dimension(n, l) > 30000:
        return
    b = enumerate_basis(n, l)
    assert b.dim == hilbert_dimension(n, l)
    assert (b.occupations.sum(axis=1) == n).all()
    # descending lexicographic and duplicate-free
    rows = [tuple(r) for r in b.occupations]
    assert rows == sorted(set(rows), reverse=True)


@given(st.integers(min_value=0, max_value=10), st.integers(min_value=2, max_value=6))
@settings(max_examples=25, deadline=None)
def test_index_roundtrip(n, l):
    b = enumerate_basis(n, l)
    ranks = b.index_of_batch(b.occupations)
    assert np.array_equal(ranks, np.arange(b.dim))


def test_index_rejects_foreign_state():
    b = enumerate_basis(3, 3)
    with pytest.raises(ValueError):
        b.index_of([1, 1, 0])
    with pytest.raises(ValueError):
        b.index_of([4, -1, 0])


def test_capacity_error():
    with pytest.raises(CapacityError):
        BasisSet(60, 30)


def test_quasimomentum_examples():
    assert quasimomentum_of(FockState((4, 0, 0, 0, 0), Representation.BLOCH)) == 0
    assert quasimomentum_of(FockState((3, 1, 0, 0, 0), Representation.BLOCH)) == 1
    # L=4 with n_1 = 2, n_3 = 2: mod_4(2*1 + 2*3) = 0
    assert quasimomentum_of(FockState((0, 2, 0, 2), Representation.BLOCH)) == 0


def test_quasimomentum_needs_bloch_representation():
    with pytest.raises(RepresentationError):
        quasimomentum_of(FockState((1, 0, 0), Representation.SITE))


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=2, max_value=6),
       st.randoms())
@settings(max_examples=30, deadline=None)
def test_quasimomentum_additive_mod_L(n, l, rnd):
    occ = [0] * l
    total = 0
    for _ in range(n):
        k = rnd.randrange(l)
        occ[k] += 1
        total += k
    state = FockState(tuple(occ), Representation.BLOCH)
    assert quasimomentum_of(state) == total % l
