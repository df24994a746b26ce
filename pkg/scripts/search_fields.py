#!/usr/bin/env python
"""Search small monic polynomials for totally real fields with maximal power order.

Prints one JSON line per isomorphism class, sorted by discriminant. Isomorphic
duplicates are removed with sympy's field_isomorphism, independently of any
theta-series computation.

    python scripts/search_fields.py --degree 4 --bound 5 --max-disc 20000
"""

import argparse
import itertools
import json

import sympy
from sympy.polys.numberfields.subfield import field_isomorphism

from thetanf.errors import ThetaNFError
from thetanf.numfield import FieldRecord, Polynomial, count_real_roots, is_irreducible, make_order

x = sympy.Symbol("x")


def candidates(n, bound, max_disc):
    found = {}
    # f(x) -> f(x + c) lets us fix the x^(n-1) coefficient to 0 or -1 ... (n//2) without loss
    for a1 in range(-(n // 2), 1):
        for rest in itertools.product(range(-bound, bound + 1), repeat=n - 1):
            coeffs = tuple(reversed(rest)) + (a1, 1)
            if coeffs[0] == 0:
                continue
            try:
                f = Polynomial(coeffs)
                if count_real_roots(f) != n or not is_irreducible(f):
                    continue
                order = make_order(FieldRecord(f))
            except ThetaNFError:
                continue
            if order.disc > max_disc:
                continue
            found.setdefault(order.disc, []).append(f)
    return found


def dedupe(polys):
    classes = []
    for f in sorted(polys, key=lambda f: (sum(abs(c) for c in f.coeffs), f.coeffs)):
        expr = sympy.Poly(list(reversed(f.coeffs)), x).as_expr()
        if not any(field_isomorphism(expr, g) is not None for _, g in classes):
            classes.append((f, expr))
    return [f for f, _ in classes]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, required=True)
    ap.add_argument("--bound", type=int, default=5)
    ap.add_argument("--max-disc", type=int, default=10**5)
    ap.add_argument("--multi-only", action="store_true", help="only discriminants with >1 field")
    args = ap.parse_args()
    found = candidates(args.degree, args.bound, args.max_disc)
    for d in sorted(found):
        fields = dedupe(found[d])
        if args.multi_only and len(fields) < 2:
            continue
        for f in fields:
            print(json.dumps({"poly": list(f.coeffs), "disc": d, "label": f"{args.degree}.{d}.{fields.index(f) + 1}"}))


if __name__ == "__main__":
    main()
