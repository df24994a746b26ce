"""Polynomials over Z, orders of number fields and their trace-zero lattices.

Everything is exact: traces come from Newton's identities on the defining
polynomial, never from numerical embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import Poly, Symbol, factorint

from . import linalg
from .errors import (
    DiscMismatch,
    DimensionError,
    InvariantViolation,
    NonMonic,
    NotAnOrder,
    NotMaximal,
    NotSeparable,
    NotTotallyReal,
)


@dataclass(frozen=True)
class Polynomial:
    """Monic integer polynomial, coefficients stored constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise NonMonic(f"leading coefficient is {coeffs[-1]}, expected 1")

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        """Parse ``"16,5,-9,-2,1"`` (constant term first)."""
        return cls(tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def translate(self, c: int) -> "Polynomial":
        """Return ``f(x - c)``, a defining polynomial of the same field."""
        out = [0]
        for a in reversed(self.coeffs):
            # out <- out * (x - c) + a
            out = [0] + out
            for i in range(len(out) - 1):
                out[i] -= c * out[i + 1]
            out[0] += a
        return Polynomial(tuple(out[:self.degree + 1]))

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)


# -- dense polynomial helpers over Q (lists of Fractions, constant first) --

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a, b):
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] / lb
        q[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] -= coef * bc
        a = _trim(a)
    return q, a


def _derivative(a):
    return [i * a[i] for i in range(1, len(a))]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(f: Polynomial) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in f.coeffs], [Fraction(c) for c in _derivative(f.coeffs)]]
    while True:
        _, r = _qdivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    if len(seq[-1]) > 1:
        raise NotSeparable(f"{f} has a repeated factor")
    return seq


def is_irreducible(f: Polynomial) -> bool:
    """Irreducibility over Q (delegated to sympy's factorization)."""
    return Poly(list(reversed(f.coeffs)), Symbol("x")).is_irreducible


def count_real_roots(f: Polynomial) -> int:
    """Number of distinct real roots, from sign changes of the Sturm sequence at -inf and +inf."""
    seq = sturm_sequence(f)

    def changes(signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_pos = [_sign(p[-1]) for p in seq]
    at_neg = [_sign(p[-1]) * (-1) ** (len(p) - 1) for p in seq]
    return changes(at_neg) - changes(at_pos)


def resultant(a, b) -> int:
    """Resultant of two integer polynomials via the Sylvester determinant."""
    a, b = _trim(a), _trim(b)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return linalg.det_bareiss(rows)


def disc_poly(f: Polynomial) -> int:
    n = f.degree
    res = resultant(f.coeffs, _derivative(f.coeffs))
    if res == 0:
        raise NotSeparable(f"{f} is not squarefree")
    return (-1) ** (n * (n - 1) // 2) * res


def power_traces(f: Polynomial, K: int) -> list[int]:
    """``p_k = Tr(theta^k)`` for ``k = 0..K`` by Newton's identities."""
    n = f.degree
    # f = x^n + a[n-1] x^(n-1) + ... + a[0]
    a = f.coeffs
    p = [n]
    for k in range(1, K + 1):
        s = sum(a[n - i] * p[k - i] for i in range(1, min(k - 1, n) + 1))
        if k <= n:
            s += k * a[n - k]
        p.append(-s)
    return p


# -- polynomials over F_p (lists of ints in [0, p), constant first) --

def _ptrim(a, p):
    a = [x % p for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmonic(a, p):
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _pdivmod(a, b, p):
    a = _ptrim(a, p)
    b = _ptrim(b, p)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] * inv % p
        q[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        a = _ptrim(a, p)
    return q, a


def _pgcd(a, b, p):
    a, b = _ptrim(a, p), _ptrim(b, p)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _pmonic(a, p) if a else a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out, p)


def _pradical(a, p):
    """Product of the distinct monic irreducible factors of ``a`` over F_p."""
    a = _pmonic(_ptrim(a, p), p)
    if len(a) <= 1:
        return [1]
    da = _ptrim(_derivative(a), p)
    if not da:
        # a(x) = b(x^p) = b(x)^p over F_p
        return _pradical(a[::p], p)
    g = _pgcd(a, da, p)
    r = _pdivmod(a, g, p)[0]
    rg = _pradical(g, p)
    common = _pgcd(r, rg, p)
    return _pmonic(_pdivmod(_pmul(r, rg, p), common, p)[0], p)


def dedekind_is_p_maximal(f: Polynomial, p: int) -> bool:
    """Dedekind's criterion: is ``Z[theta]`` maximal at the prime ``p``?"""
    fbar = _ptrim(f.coeffs, p)
    g = _pradical(fbar, p)
    h = _pdivmod(fbar, g, p)[0]
    gh = [0] * (len(g) + len(h) - 1)
    for i, x in enumerate(g):
        for j, y in enumerate(h):
            gh[i + j] += x * y
    diff = [c - (gh[i] if i < len(gh) else 0) for i, c in enumerate(f.coeffs)]
    assert all(c % p == 0 for c in diff)
    F = [c // p for c in diff]
    t = _pgcd(_pgcd(F, g, p) if _ptrim(F, p) else g, h, p)
    return len(t) == 1


@dataclass(frozen=True)
class FieldRecord:
    poly: Polynomial
    basis: tuple[tuple[Fraction, ...], ...] | None = None
    label: str | None = None
    galois_group: str | None = None
    claimed_disc: int | None = None

    def __post_init__(self):
        if self.basis is not None:
            basis = tuple(tuple(Fraction(x) for x in row) for row in self.basis)
            object.__setattr__(self, "basis", basis)
            n = self.poly.degree
            if len(basis) != n or any(len(row) != n for row in basis):
                raise DimensionError(f"basis must be {n}x{n}")
            if linalg.rank_exact(_scale_to_int(basis)) != n:
                raise NotAnOrder("basis is not invertible")

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def name(self) -> str:
        return self.label or str(self.poly)


@dataclass(frozen=True)
class OrderBasis:
    field: FieldRecord
    basis_matrix: tuple[tuple[Fraction, ...], ...]
    trace_vector: tuple[int, ...]
    trace_gram: tuple[tuple[int, ...], ...]
    disc: int


@dataclass(frozen=True)
class TraceZeroLattice:
    order: OrderBasis
    basis: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]
    m: int


def _scale_to_int(rows):
    den = 1
    for row in rows:
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in rows]


def _mulmod(a, b, f: Polynomial):
    """Product of two power-basis coordinate vectors, reduced modulo ``f``."""
    n = f.degree
    prod = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            prod[k] = Fraction(0)
            for i in range(n):
                prod[k - n + i] -= c * f.coeffs[i]
    return prod[:n]


def _rational_trace_gram(basis, ptr):
    n = len(basis)
    P = [[ptr[i + j] for j in range(n)] for i in range(n)]
    return linalg.matmul(linalg.matmul([list(r) for r in basis], P), linalg.transpose([list(r) for r in basis]))


def trace_gram(order: OrderBasis) -> list[list[int]]:
    """``T_ij = Tr(b_i b_j)`` for the basis of ``order``."""
    f = order.field.poly
    T = _rational_trace_gram(order.basis_matrix, power_traces(f, 2 * f.degree - 2))
    if any(Fraction(x).denominator != 1 for row in T for x in row):
        raise NotAnOrder("trace pairing is not integral on the supplied basis")
    return [[int(x) for x in row] for row in T]


def _check_ring(rec: FieldRecord, basis):
    f = rec.poly
    n = f.degree
    inv = linalg.inverse_rat([list(r) for r in basis])

    def coords(v):
        return [sum(v[k] * inv[k][j] for k in range(n)) for j in range(n)]

    one = [Fraction(1)] + [Fraction(0)] * (n - 1)
    if any(c.denominator != 1 for c in coords(one)):
        raise NotAnOrder("basis does not span 1 over Z")
    for i in range(n):
        for j in range(i, n):
            prod = _mulmod(basis[i], basis[j], f)
            if any(c.denominator != 1 for c in coords(prod)):
                raise NotAnOrder(f"basis is not closed under multiplication (b{i} * b{j})")


def make_order(rec: FieldRecord) -> OrderBasis:
    """Build the order of ``rec``: its explicit basis, or a certified-maximal power basis."""
    f = rec.poly
    n = f.degree
    dpoly = disc_poly(f)
    if rec.basis is None:
        for p, e in sorted(factorint(abs(dpoly)).items()):
            if e >= 2 and not dedekind_is_p_maximal(f, p):
                raise NotMaximal(p)
        basis = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    else:
        basis = rec.basis
        _check_ring(rec, basis)
    ptr = power_traces(f, 2 * n - 2)
    traces = [sum(Fraction(b) * ptr[k] for k, b in enumerate(row)) for row in basis]
    if any(t.denominator != 1 for t in traces):
        raise NotAnOrder("basis element with non-integral trace")
    T = _rational_trace_gram(basis, ptr)
    if any(x.denominator != 1 for row in T for x in row):
        raise NotAnOrder("trace pairing is not integral on the supplied basis")
    T = tuple(tuple(int(x) for x in row) for row in T)
    disc = linalg.det_bareiss([list(r) for r in T])
    if rec.claimed_disc is not None and rec.claimed_disc != disc:
        raise DiscMismatch(rec.claimed_disc, disc)
    return OrderBasis(rec, basis, tuple(int(t) for t in traces), T, disc)


def trace_zero_lattice(order: OrderBasis) -> TraceZeroLattice:
    """The trace-zero sublattice of ``order`` with its even Gram matrix."""
    f = order.field.poly
    n = f.degree
    if count_real_roots(f) != n:
        raise NotTotallyReal(f"{f} has non-real roots")
    t = list(order.trace_vector)
    K = linalg.kernel_saturated([t])
    T = [list(r) for r in order.trace_gram]
    gram = linalg.matmul(linalg.matmul(K, T), linalg.transpose(K))
    m = linalg.content(t)

    if len(K) != n - 1 or any(sum(x * y for x, y in zip(row, t)) for row in K):
        raise InvariantViolation("trace-zero basis is wrong")
    if any(gram[i][i] % 2 for i in range(n - 1)):
        raise InvariantViolation("trace-zero Gram has an odd diagonal entry")
    det = linalg.det_bareiss(gram) if n > 1 else 1
    if det * m * m != n * order.disc:
        raise InvariantViolation(
            f"det of trace-zero Gram is {det}, expected n*d/m^2 = {n}*{order.disc}/{m}^2")
    return TraceZeroLattice(order, tuple(map(tuple, K)), tuple(map(tuple, gram)), m)


def field_lattice(rec: FieldRecord) -> TraceZeroLattice:
    return trace_zero_lattice(make_order(rec))
