"""Rebuild the three worked examples and print each table next to its verdict.

    python demos/worked_examples.py          # verdicts and diffs only
    python demos/worked_examples.py --show   # also print every computed table
"""
import sys

from tenselat.worked_examples import run_example


def main(show=False):
    for n in (1, 2, 3):
        res = run_example(n)
        print(res.report(show=show))
        print(f"example {n}: {'PASS' if res.passed else 'FAIL'} ({res.seconds:.2f}s)\n")


if __name__ == "__main__":
    main(show="--show" in sys.argv)
