"""Bounded search for inequations that hold over n letters but fail over n+1,
among small terms without full complement.

A hit only says that the bounded oracle found no counterexample over n letters;
it is a candidate for a separating inequation, not a proof.
"""

import argparse

from kacd.corpus import terms_up_to
from kacd.decide import OracleBudget
from kacd.hierarchy import search_separating_pairs
from kacd.semantics import render_word
from kacd.terms import render_term


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--lhs-size", type=int, default=3)
    p.add_argument("--rhs-size", type=int, default=3)
    p.add_argument("--max-value-len", type=int, default=2)
    p.add_argument("--limit", type=int, default=20)
    args = p.parse_args()
    pairs = ((a, b) for a in terms_up_to(args.lhs_size) for b in terms_up_to(args.rhs_size))
    budget = OracleBudget(max_value_len=args.max_value_len)
    found = 0
    for t1, t2, v, w in search_separating_pairs(pairs, args.n, budget):
        print(f"{render_term(t1)} ≤ {render_term(t2)}: fails with witness "
              f"{render_word(w, v.alphabet)!r} over {len(v.alphabet)} letters")
        found += 1
        if found >= args.limit:
            break
    print(f"{found} candidates")


if __name__ == "__main__":
    main()
