"""Print l(X) for the Hirzebruch and elliptic ruled families and a finite
sequence report for each, as CSV-ish lines.

    python scripts/sweep_lengths.py --n-to 1000 --e-to 100
"""
import argparse

from lcsystems.surface import elliptic_ruled_length, hirzebruch_length, sequence_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-to", type=int, default=50)
    ap.add_argument("--e-to", type=int, default=20)
    args = ap.parse_args()
    hz = [hirzebruch_length(n) for n in range(2, args.n_to + 1)]
    el = [elliptic_ruled_length(e) for e in range(2, args.e_to + 1)]
    print("family,parameter,value")
    for v in hz + el:
        print(f"{v.family},{v.parameter},{v.value}")
    for name, vals in (("hirzebruch", hz), ("elliptic-ruled", el)):
        r = sequence_report([v.value for v in vals])
        print(f"# {name}: decreasing={r.strictly_decreasing} constant={r.constant} "
              f"longest increasing run={r.strictly_increasing_run_max} inf={r.limit_candidate}")


if __name__ == "__main__":
    main()
