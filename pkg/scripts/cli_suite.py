"""Run a fixed list of kacd invocations and print every command, exit code and output.

Two runs with the same KACD_SEED must print identical bytes; the acceptance
tests compare runs made under different hash seeds.
"""

from __future__ import annotations

import contextlib
import io
import shlex
import sys
from pathlib import Path

from kacd.cli import run

DATA = Path(__file__).resolve().parent / "data" / "sample_valuation.json"

SUITE = [
    ["check", "!x", "eq", "!x ; !x", "--verify"],
    ["check", "y", "le", "!x", "--verify"],
    ["check", "y", "le", "!1"],
    ["check", "1 + !1", "eq", "!x ; !y"],
    ["check", "1 + !1", "eq", "!x + !y"],
    ["check", "1", "le", "(x ; !y) + !x + y", "--fragment", "identity"],
    ["check", "!x ; y + x", "le", "y ; !x + x ; x", "--mode", "inclusion"],
    ["check", "x ; !y ; x", "le", "x ; (!y + 1) ; x", "--parallel"],
    ["check", "x*", "le", "x"],
    ["lang-equiv", "!x", "!x ; !x"],
    ["lang-equiv", "1 + !1", "!x + !y"],
    ["lang-equiv", "x ; y", "y ; x"],
    ["word-theory", "--level", "0", "x", "y"],
    ["word-theory", "--level", "1", "x", "x x"],
    ["word-theory", "--level", "2", "!1 x !x !1", "!1 !x x !1"],
    ["word-theory", "--level", "2", "!1 z !z z !1", "!1 !z z z !1", "--verify"],
    ["word-theory", "--level", "2", "x y", "y x"],
    ["eval", "--valuation", str(DATA), "--term", "x ; !y + z"],
    ["eval", "--valuation", str(DATA), "--term", "x ; y", "--member", "aab"],
    ["w2l", "--valuation", str(DATA), "--words", "a,b,ab"],
    ["hierarchy", "--n", "1"],
    ["hierarchy", "--n", "2", "--samples", "10"],
    ["oracle-refute", "!x", "!x ; !x"],
    ["oracle-refute", "x ; y", "y ; x", "--max-alphabet", "2"],
    ["oracle-refute", "x", "x + y", "--max-alphabet", "1", "--max-value-len", "1"],
]


def transcript() -> str:
    out = io.StringIO()
    for argv in SUITE:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = run(argv)
        shown = [a if a != str(DATA) else "sample_valuation.json" for a in argv]
        out.write(f"$ kacd {shlex.join(shown)}\n[exit {code}]\n{buf.getvalue()}")
    return out.getvalue()


if __name__ == "__main__":
    sys.stdout.write(transcript())
