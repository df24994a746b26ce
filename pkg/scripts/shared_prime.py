#!/usr/bin/env python
"""The two quartics of discriminant 4024049: theta to q^200, minima and the prime they share."""

import sys
from pathlib import Path

from thetanf.pipeline import RunConfig, analyze_field, collisions, compare_fields, load_corpus

DATA = Path(__file__).resolve().parents[1] / "data" / "disc4024049.jsonl"


def main(path=DATA):
    cfg = RunConfig(precision=200)
    r1, r2 = [analyze_field(rec, cfg) for rec in load_corpus(path, cfg)]
    for r in (r1, r2):
        print(f"{r.label}: {r.record.poly}  m={r.lattice.m}  min {r.invariants.minimum}")
        print("  theta", r.theta.format(below=200))
    print("theta equal to q^200:", compare_fields(r1, r2, 200).equal)
    for c in collisions([r1, r2]):
        print(f"shared {c.kind} {c.value}")


if __name__ == "__main__":
    main(*sys.argv[1:])
