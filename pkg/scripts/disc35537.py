#!/usr/bin/env python
"""Recompute the three quartics of discriminant 35537: Gram matrices, invariants, theta to q^29."""

from thetanf.numfield import FieldRecord, Polynomial
from thetanf.pipeline import RunConfig, analyze_field, collisions, independence

POLYS = ["16,5,-9,-2,1", "4,-3,-8,-1,1", "4,5,-5,-2,1"]


def main():
    cfg = RunConfig(precision=30)
    results = [analyze_field(FieldRecord(Polynomial.parse(p)), cfg) for p in POLYS]
    for r in results:
        inv = r.invariants
        print(r.label)
        print(f"  disc {r.order.disc}  det {inv.det}  level {inv.level}  min {inv.minimum}")
        for row in r.form.matrix():
            print("   ", row)
        print("  theta", r.theta.format(below=30))
    ind = independence(results, 30)
    print(f"independence at q^30: {ind.verdict} (rank {ind.rank})")
    for c in collisions(results):
        print(f"shared {c.kind} {c.value}: {c.fields[0]} / {c.fields[1]}")


if __name__ == "__main__":
    main()
