import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import box_counts, box_size, det_cofactor, level_by_search, shortest_nonzero_value
from thetanf import linalg, qform
from thetanf.errors import SingularForm, UnsupportedRank
from thetanf.qform import QuadraticForm, ThetaSeries

BOX_LIMIT = 400_000


def random_pd_form(rng, max_rank=3, max_entry=20, B=50):
    """Symmetric, even diagonal, |entries| <= max_entry, positive definite, box small enough."""
    while True:
        r = rng.randint(1, max_rank)
        G = [[0] * r for _ in range(r)]
        for i in range(r):
            G[i][i] = 2 * rng.randint(1, max_entry // 2)
            for j in range(i):
                G[i][j] = G[j][i] = rng.randint(-max_entry, max_entry)
        F = QuadraticForm(G)
        if qform.is_positive_definite(F) and box_size(G, B) <= BOX_LIMIT:
            return G


@st.composite
def pd_forms(draw, max_rank=3):
    r = draw(st.integers(1, max_rank))
    diag = [2 * draw(st.integers(1, 10)) for _ in range(r)]
    G = [[0] * r for _ in range(r)]
    for i in range(r):
        G[i][i] = diag[i]
        for j in range(i):
            G[i][j] = G[j][i] = draw(st.integers(-20, 20))
    assume(qform.is_positive_definite(QuadraticForm(G)))
    assume(box_size(G, 30) <= BOX_LIMIT)
    return G


def test_form_validation():
    with pytest.raises(ValueError):
        QuadraticForm(((1, 0), (0, 2)))
    F = QuadraticForm(((4, 2), (2, 4)))
    assert F((1, -1)) == 2
    assert F.rank == 2


@pytest.mark.parametrize("G, disc", [([[10]], 10), ([[4, 2], [2, 4]], -12), ([[2, 1, 0], [1, 2, 1], [0, 1, 2]], -4)])
def test_form_disc(G, disc):
    assert qform.form_disc(QuadraticForm(G)) == disc


@pytest.mark.parametrize("G, N", [([[10]], 20), ([[2, 1], [1, 2]], 3), ([[4, 2], [2, 4]], 6), ([[2, 1], [1, 4]], 7)])
def test_level_examples(G, N):
    assert qform.level(QuadraticForm(G)) == N


@given(pd_forms())
def test_level_matches_search(G):
    assert qform.level(QuadraticForm(G)) == level_by_search(G)


def test_level_rejects_singular():
    with pytest.raises(SingularForm):
        qform.level(QuadraticForm(((2, 2), (2, 2))))


def test_representation_counts_examples():
    assert qform.representation_counts(QuadraticForm(((2, 0), (0, 2))), 10) == [0, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8]
    assert qform.representation_counts(QuadraticForm(((2, 1), (1, 2))), 7) == [0, 6, 0, 6, 6, 0, 0, 12]


@given(pd_forms())
def test_representation_counts_match_box(G):
    assert qform.representation_counts(QuadraticForm(G), 30) == box_counts(G, 30)


def test_representation_counts_random_seeded():
    rng = random.Random(20261016)
    for _ in range(25):
        G = random_pd_form(rng)
        assert qform.representation_counts(QuadraticForm(G), 50) == box_counts(G, 50)


def test_theta_series_and_format():
    T = qform.theta_series(QuadraticForm(((4,),)), 12)
    assert T.coeffs == (1, 0, 2, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0)
    assert T.format() == "1 + 2q^2 + 2q^8 + O(q^13)"
    assert T.format(below=5) == "1 + 2q^2 + O(q^5)"
    assert T.support() == [0, 2, 8]
    assert T.truncate(4) == ThetaSeries((1, 0, 2, 0, 0))
    with pytest.raises(ValueError):
        T.truncate(13)
    assert ThetaSeries((1, 1, 0)).format() == "1 + q + O(q^3)"


@given(pd_forms())
def test_minimum_matches_box(G):
    assert qform.minimum(QuadraticForm(G)) == shortest_nonzero_value(G)


def test_minimum_of_diagonal_form():
    assert qform.minimum(QuadraticForm(((200, 0), (0, 300)))) == 100


def test_smallest_prime():
    assert qform.smallest_represented_prime(ThetaSeries((1, 0, 0, 0, 2, 0, 4, 2))) == 7
    assert qform.smallest_represented_prime(ThetaSeries((1, 2, 0, 0, 2))) is None


def test_short_vectors_are_correct():
    F = QuadraticForm(((6, 5, 1), (5, 6, 2), (1, 2, 8)))
    found = {}
    for v, val in qform.short_vectors(F, 15):
        assert F(v) == val <= 15
        found[v] = val
    assert len(found) == sum(box_counts(F.matrix(), 15))


def test_invariants_bundle():
    inv = qform.invariants(QuadraticForm(((2, 1), (1, 2))))
    assert (inv.det, inv.disc, inv.level, inv.minimum, inv.character_disc) == (3, -3, 3, 1, -3)
    # odd rank halves the determinant
    assert qform.character_disc(QuadraticForm(((2, 1, 0), (1, 2, 1), (0, 1, 2)))) == 2


def random_unimodular(rng, n, lo=-2, hi=2):
    while True:
        P = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
        if abs(det_cofactor(P)) == 1:
            return P


def test_isometry_random_unimodular():
    rng = random.Random(7)
    for _ in range(15):
        G = random_pd_form(rng, max_rank=3, max_entry=12, B=30)
        P = random_unimodular(rng, len(G))
        G2 = linalg.congruent(G, P)
        U = qform.isometry(QuadraticForm(G), QuadraticForm(G2))
        assert U is not None
        assert linalg.congruent(G, U) == G2
        assert abs(det_cofactor(U)) == 1


def test_isometry_negative_cases():
    # same determinant, same rank, different minima
    assert qform.isometry(QuadraticForm(((2, 0), (0, 6))), QuadraticForm(((4, 2), (2, 4)))) is None
    assert qform.isometry(QuadraticForm(((2,),)), QuadraticForm(((2, 0), (0, 2)))) is None
    assert qform.isometry(QuadraticForm(((2, 0), (0, 2))), QuadraticForm(((2, 1), (1, 2)))) is None


def test_isometry_rank_limit():
    I5 = tuple(tuple(2 * (i == j) for j in range(5)) for i in range(5))
    with pytest.raises(UnsupportedRank):
        qform.isometry(QuadraticForm(I5), QuadraticForm(I5))
