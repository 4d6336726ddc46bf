"""Audit every catalog family against the classifiers and print a summary.

    python scripts/audit_catalog.py --budget 200 --cap 12 --jobs 4

Exit status is 1 when an unflagged family disagrees with its claims.
"""
import argparse
import sys

from lcsystems.catalog import validate_catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=200, help="samples per unbounded family")
    ap.add_argument("--cap", type=int, default=12, help="largest sampled unbounded parameter")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    report = validate_catalog(sample_budget=args.budget, seed=args.seed, jobs=args.jobs, cap=args.cap)
    print(f"{'family':<10} {'checked':>7} {'rejected':>8}  disagreements")
    for f in report.families:
        flag = " (flagged)" if f.ambiguous else ""
        print(f"{f.family:<10} {f.checked:>7} {f.rejected:>8}  {len(f.discrepancies)}{flag}")
    for d in report.questions:
        print(f"open question: {d.family} {d.params} {d.field}: claimed {d.expected}, computed {d.got}")
    for d in report.discrepancies:
        print(f"DISAGREEMENT: {d.family} {d.params} {d.field}: claimed {d.expected}, computed {d.got}")
    print(f"checked {report.checked} instances; ok={report.ok}")
    sys.exit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
