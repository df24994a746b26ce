from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import companion_traces, det_cofactor
from thetanf import linalg, qform
from thetanf.errors import (
    DiscMismatch,
    NonMonic,
    NotAnOrder,
    NotMaximal,
    NotSeparable,
    NotTotallyReal,
)
from thetanf.numfield import (
    FieldRecord,
    Polynomial,
    count_real_roots,
    dedekind_is_p_maximal,
    disc_poly,
    field_lattice,
    is_irreducible,
    make_order,
    power_traces,
    trace_gram,
    trace_zero_lattice,
)
from thetanf.pipeline import load_corpus

X = sympy.Symbol("x")

monic = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(-6, 6), min_size=n, max_size=n).map(lambda c: tuple(c) + (1,)))


def sympy_poly(f):
    return sympy.Poly(list(reversed(f.coeffs)), X)


def oracle_trace_gram(f, basis):
    """Tr(b_i b_j) via polynomial remainders and companion-matrix traces."""
    n = f.degree
    ctr = companion_traces(f.coeffs, n - 1)
    F = sympy_poly(f)
    elems = [sympy.Poly(list(reversed([sympy.Rational(x.numerator, x.denominator) for x in row])), X)
             for row in basis]

    def tr(p):
        c = list(reversed(p.rem(F).all_coeffs()))
        return sum(ci * ctr[k] for k, ci in enumerate(c))
    return [[tr(a * b) for b in elems] for a in elems]


def test_polynomial_basics():
    f = Polynomial.parse("16,5,-9,-2,1")
    assert f.degree == 4
    assert str(f) == "x^4 - 2x^3 - 9x^2 + 5x + 16"
    assert f(2) == 16 + 10 - 36 - 16 + 16
    assert Polynomial((1, 0, 1, 0, 0)).coeffs == (1, 0, 1)
    with pytest.raises(NonMonic):
        Polynomial((1, 2))
    with pytest.raises(ValueError):
        Polynomial((1,))


@given(monic, st.integers(-3, 3), st.integers(-4, 4))
def test_translate_matches_substitution(c, shift, x):
    f = Polynomial(c)
    assert f.translate(shift)(x) == f(x - shift)


@pytest.mark.parametrize("coeffs, disc", [
    ((-5, 0, 1), 20),
    ((-1, -1, 1), 5),
    ((-1, -4, 0, 1), 229),
    ((16, 5, -9, -2, 1), 35537),
    ((20, 46, -37, -1, 1), 788713604),
])
def test_disc_poly_examples(coeffs, disc):
    assert disc_poly(Polynomial(coeffs)) == disc


@given(monic)
def test_disc_poly_matches_sympy(c):
    f = Polynomial(c)
    d = sympy.discriminant(sympy_poly(f))
    if d == 0:
        with pytest.raises(NotSeparable):
            disc_poly(f)
    else:
        assert disc_poly(f) == d


@given(monic)
def test_real_root_count_matches_sympy(c):
    f = Polynomial(c)
    assume(sympy.discriminant(sympy_poly(f)) != 0)
    assert count_real_roots(f) == sympy_poly(f).count_roots()


def test_real_root_examples():
    assert count_real_roots(Polynomial((-1, -4, 0, 1))) == 3
    assert count_real_roots(Polynomial((1, 0, 1))) == 0
    assert count_real_roots(Polynomial((-2, 0, 0, 1))) == 1


@given(monic, st.integers(0, 10))
def test_power_traces_match_companion_matrix(c, K):
    assert power_traces(Polynomial(c), K) == companion_traces(c, K)


def test_power_traces_example():
    assert power_traces(Polynomial((-1, -4, 0, 1)), 6) == [3, 0, 8, 3, 32, 20, 131]


def test_irreducibility():
    assert is_irreducible(Polynomial((-1, -4, 0, 1)))
    assert not is_irreducible(Polynomial((-2, -1, 2, 1)))  # (x - 1)(x + 1)(x + 2)


def test_dedekind():
    K1 = Polynomial((20, 46, -37, -1, 1))
    assert not dedekind_is_p_maximal(K1, 2)
    assert not dedekind_is_p_maximal(K1, 7)
    assert not dedekind_is_p_maximal(Polynomial((-5, 0, 1)), 2)
    assert dedekind_is_p_maximal(Polynomial((-1, -1, 1)), 5)
    assert dedekind_is_p_maximal(Polynomial((-2, 0, 1)), 2)
    # Z[2i] inside Z[i] has index 2
    assert not dedekind_is_p_maximal(Polynomial((4, 0, 1)), 2)


def test_make_order_rejects_non_maximal_power_order():
    with pytest.raises(NotMaximal) as exc:
        make_order(FieldRecord(Polynomial((-5, 0, 1))))
    assert exc.value.p == 2


def test_make_order_with_basis():
    rec = FieldRecord(Polynomial((-5, 0, 1)), basis=((1, 0), (Fraction(1, 2), Fraction(1, 2))))
    order = make_order(rec)
    assert order.disc == 5
    assert order.trace_gram == ((2, 1), (1, 3))
    assert trace_gram(order) == [[2, 1], [1, 3]]


def test_make_order_rejects_bad_bases():
    f = Polynomial((-5, 0, 1))
    with pytest.raises(NotAnOrder):
        make_order(FieldRecord(f, basis=((1, 0), (0, Fraction(1, 2)))))
    with pytest.raises(NotAnOrder):
        make_order(FieldRecord(f, basis=((2, 0), (0, 1))))
    with pytest.raises(DiscMismatch):
        make_order(FieldRecord(Polynomial((-1, -4, 0, 1)), claimed_disc=230))


def test_trace_gram_matches_oracle(data_dir):
    for rec in load_corpus(data_dir / "curated.jsonl"):
        order = make_order(rec)
        assert [list(r) for r in order.trace_gram] == oracle_trace_gram(rec.poly, order.basis_matrix)


@pytest.mark.parametrize("coeffs, gram, m", [
    ((-2, 0, 1), [[4]], 2),
    ((-3, 0, 1), [[6]], 2),
    ((-1, -4, 0, 1), [[8, 9], [9, 96]], 1),
])
def test_trace_zero_examples(coeffs, gram, m):
    L = field_lattice(FieldRecord(Polynomial(coeffs)))
    assert [list(r) for r in L.gram] == gram
    assert L.m == m


def test_trace_zero_rejects_complex_fields():
    with pytest.raises(NotTotallyReal):
        field_lattice(FieldRecord(Polynomial((-2, 0, 0, 1))))


def test_trace_zero_determinant_on_corpus(data_dir):
    for rec in load_corpus(data_dir / "curated.jsonl"):
        L = field_lattice(rec)
        n, d = rec.degree, L.order.disc
        det = det_cofactor([list(r) for r in L.gram])
        assert abs(det) * L.m ** 2 == n * d
        assert all(L.gram[i][i] % 2 == 0 for i in range(n - 1))
        t = L.order.trace_vector
        assert all(sum(a * b for a, b in zip(row, t)) == 0 for row in L.basis)


@pytest.mark.parametrize("coeffs", [
    (-1, -4, 0, 1),
    (1, -2, -1, 1),
    (1, -1, -4, 0, 1),
    (16, 5, -9, -2, 1),
    (-1, 3, 3, -4, -1, 1),
])
def test_theta_invariant_under_translation(coeffs):
    f = Polynomial(coeffs)
    ref = qform.theta_series(qform.QuadraticForm(field_lattice(FieldRecord(f)).gram), 200)
    for c in (-2, -1, 1, 2):
        L = field_lattice(FieldRecord(f.translate(c)))
        assert L.order.disc == disc_poly(f)
        assert qform.theta_series(qform.QuadraticForm(L.gram), 200) == ref


def test_trace_zero_basis_lives_in_kernel():
    order = make_order(FieldRecord(Polynomial((16, 5, -9, -2, 1))))
    L = trace_zero_lattice(order)
    K = [list(r) for r in L.basis]
    assert linalg.matmul(K, [[t] for t in order.trace_vector]) == [[0]] * 3


def test_sextic_real_cyclotomic_field():
    f = Polynomial((-1, -3, 6, 4, -5, -1, 1))
    L = field_lattice(FieldRecord(f))
    assert L.order.disc == 13 ** 5
    assert abs(det_cofactor([list(r) for r in L.gram])) * L.m ** 2 == 6 * 13 ** 5
    T = qform.theta_series(qform.QuadraticForm(L.gram), 30)
    assert T.support() == [0, 13, 26]
