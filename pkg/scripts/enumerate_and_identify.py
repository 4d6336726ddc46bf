"""Enumerate minimal log canonical systems of one class and match each
against the catalog.

    python scripts/enumerate_and_identify.py --class elliptic --max-size 5 --max-weight 6
"""
import argparse
from collections import Counter

from lcsystems import enumerate_minimal
from lcsystems.catalog import identify
from lcsystems.logcanonical import parse_target


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--class", dest="target", required=True)
    ap.add_argument("--max-size", type=int, required=True)
    ap.add_argument("--max-weight", type=int, required=True)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    found = enumerate_minimal(parse_target(args.target), args.max_size, args.max_weight, jobs=args.jobs)
    hits: Counter = Counter()
    missing = []
    for s in found:
        ms = identify(s)
        if ms:
            hits.update({m.family for m in ms})
        else:
            missing.append(s)
    print(f"{len(found)} systems; {len(found) - len(missing)} identified")
    for fam, k in sorted(hits.items()):
        print(f"  {fam}: {k}")
    for s in missing:
        print("unidentified:", s.int_matrix)


if __name__ == "__main__":
    main()
