#!/usr/bin/env python
"""Compute an integral basis for a monic polynomial by naive p-enlargement.

Corpus preparation only: the library rejects non-maximal power orders, so
records whose power order fails Dedekind's test need an explicit basis.
For each prime p with p^2 | disc, every element beta/p with beta running over
O/pO is tested for integrality; integral ones are adjoined until none remain,
which makes the order p-maximal.

    python scripts/integral_basis.py "20,46,-37,-1,1"
"""

import argparse
import itertools
import json
from fractions import Fraction

import sympy
from sympy import factorint

from thetanf import linalg
from thetanf.numfield import Polynomial, _mulmod, disc_poly, power_traces


def charpoly_is_integral(alpha, f):
    n = f.degree
    cols = []
    power = [Fraction(int(i == 0)) for i in range(n)]
    for _ in range(n):
        cols.append(_mulmod(alpha, power, f))
        power = _mulmod(power, [Fraction(int(i == 1)) for i in range(n)], f)
    M = sympy.Matrix(n, n, lambda i, j: sympy.Rational(cols[j][i].numerator, cols[j][i].denominator))
    return all(c.is_integer for c in M.charpoly().all_coeffs())


def span(rows):
    """HNF basis of the Z-span of rational row vectors."""
    den = 1
    for row in rows:
        for x in row:
            den = sympy.ilcm(den, x.denominator)
    H, _ = linalg.hnf_with_transform([[int(x * den) for x in row] for row in rows])
    return [[Fraction(x, den) for x in row] for row in H if any(row)]


def order_disc(basis, f):
    ptr = power_traces(f, 2 * f.degree - 2)
    n = f.degree
    P = [[ptr[i + j] for j in range(n)] for i in range(n)]
    T = linalg.matmul(linalg.matmul(basis, P), linalg.transpose(basis))
    return int(linalg.det_bareiss([[int(x) for x in row] for row in T]))


def ring_closure(basis, f):
    while True:
        prods = [_mulmod(a, b, f) for a in basis for b in basis]
        new = span(basis + prods)
        if order_disc(new, f) == order_disc(basis, f):
            return new
        basis = new


def enlarge(f):
    n = f.degree
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for p in sorted(factorint(abs(disc_poly(f)))):
        while order_disc(basis, f) % (p * p) == 0:
            for coeffs in itertools.product(range(p), repeat=n):
                if not any(coeffs):
                    continue
                alpha = [sum(c * b[k] for c, b in zip(coeffs, basis)) / p for k in range(n)]
                if charpoly_is_integral(alpha, f):
                    basis = ring_closure(span(basis + [alpha]), f)
                    break
            else:
                break
    return basis


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("poly", help="coefficients, constant term first")
    args = ap.parse_args()
    f = Polynomial.parse(args.poly)
    basis = enlarge(f)
    print(json.dumps({"poly": list(f.coeffs), "disc": order_disc(basis, f),
                      "basis": [[str(x) for x in row] for row in basis]}))


if __name__ == "__main__":
    main()
