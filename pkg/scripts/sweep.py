#!/usr/bin/env python
"""Run the curated corpus at several precisions and report the first precision where each group separates.

    python scripts/sweep.py data/curated.jsonl --precisions 30 60 100 200
"""

import argparse
import time

from thetanf.pipeline import RunConfig, independence, load_corpus, run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus")
    ap.add_argument("--precisions", type=int, nargs="+", default=[30, 60, 100, 200])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    top = max(args.precisions)
    t0 = time.perf_counter()
    out = run(load_corpus(args.corpus), RunConfig(precision=top, workers=args.workers))
    print(f"{len(out.results)} fields analyzed to q^{top} in {time.perf_counter() - t0:.1f}s, "
          f"{len(out.skipped)} skipped")
    by_group = {}
    for r in out.results:
        by_group.setdefault((r.order.disc, r.record.degree), []).append(r)
    for (d, n), members in sorted(by_group.items()):
        if len(members) < 2:
            continue
        first = next((B for B in sorted(args.precisions) if independence(members, B).independent), None)
        status = f"independent from q^{first}" if first else "undetermined"
        print(f"disc {d} (n={n}, {len(members)} fields): {status}")
    singles = sum(1 for m in by_group.values() if len(m) == 1)
    print(f"{singles} groups with a single field (trivially independent)")


if __name__ == "__main__":
    main()
