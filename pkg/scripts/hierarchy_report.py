"""Separation terms for n = 1..N with their counterexamples and small-alphabet evidence."""

import argparse
import os

from kacd import automata as fa
from kacd.hierarchy import check_membership_side, separation_counterexample, separation_terms
from kacd.semantics import evaluate, render_word
from kacd.terms import render_term


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    args = p.parse_args()
    seed = int(os.environ.get("KACD_SEED", "0"))
    for n in range(1, args.max_n + 1):
        t1, t2 = separation_terms(n)
        v, w = separation_counterexample(n)
        ok = fa.membership(evaluate(t1, v), w) and not fa.membership(evaluate(t2, v), w)
        report = check_membership_side(n, args.samples, seed)
        print(f"n={n}\n  t1 = {render_term(t1)}\n  t2 = {render_term(t2)}")
        print(f"  witness {render_word(w, v.alphabet)!r} over {len(v.alphabet)} letters: "
              f"{'separates' if ok else 'FAILS'}")
        print(f"  {report.samples} valuations over ≤{n} letters, "
              f"{len(report.violations)} violations")


if __name__ == "__main__":
    main()
