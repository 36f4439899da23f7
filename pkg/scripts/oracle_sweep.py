"""Compare the star-free procedure (both enumeration modes) with the brute-force
oracle on every pair of small terms over two variables."""

import argparse
import time

from kacd.corpus import terms_up_to
from kacd.decide import DecideConfig, EnumerationMode, OracleBudget, decide_starfree_inclusion, oracle_refute
from kacd.semantics import Holds
from kacd.terms import render_term, sup_length


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lhs-size", type=int, default=4)
    p.add_argument("--rhs-size", type=int, default=5)
    p.add_argument("--stride", type=int, default=1, help="only every k-th left side")
    args = p.parse_args()
    lhs = terms_up_to(args.lhs_size, star=False)[::args.stride]
    rhs = terms_up_to(args.rhs_size)
    inclusion = DecideConfig(enumeration_mode=EnumerationMode.FULL_INCLUSION)
    start = time.monotonic()
    pairs = holds = bad = 0
    for t1 in lhs:
        budget = OracleBudget(max_alphabet=int(sup_length(t1)))
        for t2 in rhs:
            a = isinstance(decide_starfree_inclusion(t1, t2), Holds)
            b = isinstance(decide_starfree_inclusion(t1, t2, inclusion), Holds)
            c = oracle_refute(t1, t2, budget) is None
            pairs += 1
            holds += a
            if not a == b == c:
                bad += 1
                print(f"disagreement: {render_term(t1)} ≤ {render_term(t2)}: "
                      f"fullword={a} inclusion={b} oracle={c}")
    print(f"{pairs} pairs, {holds} hold, {bad} disagreements, {time.monotonic() - start:.1f}s")


if __name__ == "__main__":
    main()
