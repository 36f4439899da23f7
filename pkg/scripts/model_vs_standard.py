"""Equations that fail in language models although their regular-expression
languages agree: print both verdicts for each row."""

from kacd import decide_auto, parse_term, std_lang_equiv, std_lang_includes
from kacd.formats import verdict_record

ROWS = [
    ("y", "le", "!x"),
    ("x x", "le", "!x"),
    ("x y", "le", "!x"),
    ("y", "le", "!1"),
    ("!x", "eq", "!x ; !x"),
    ("1 + !1", "eq", "!x ; !y"),
    ("1 + !1", "eq", "!x + !y"),
]


def main() -> None:
    for lhs, rel, rhs in ROWS:
        t1, t2 = parse_term(lhs), parse_term(rhs)
        models = decide_auto(t1, rel, t2)
        standard = std_lang_includes(t1, t2) if rel == "le" else std_lang_equiv(t1, t2)
        rec = verdict_record(models)
        print(f"{lhs} {'≤' if rel == 'le' else '='} {rhs}")
        print(f"  language models: {rec['verdict']}"
              + (f", witness {rec['witness']!r} under {rec['valuation']}" if "witness" in rec else ""))
        print(f"  standard languages: {verdict_record(standard)['verdict']}")


if __name__ == "__main__":
    main()
