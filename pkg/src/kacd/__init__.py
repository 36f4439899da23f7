"""Decision procedures for Kleene algebra with variable and constant complements."""

from .terms import (
    FragmentClass, ParseError, FragmentError, Var, CoVar, One, Zero, CoOne, Plus, Seq, Star,
    Compl, ONE, ZERO, CO_ONE, TOP, TOP_FULL, parse_term, render_term, classify_fragment,
    is_star_free, sup_length, ext_language, parse_ext_word, render_ext_word,
)
from .semantics import (
    Valuation, Holds, Refuted, UnsupportedFragment, evaluate, membership_dp, eps_membership,
    words_to_letters, restrict_alphabet, standard_valuation, std_lang_includes, std_lang_equiv,
)
from .decide import (
    DecideConfig, EnumerationMode, Relation, BudgetExceeded, OracleBudget,
    decide_identity_inclusion, decide_variable_inclusion, decide_word_inclusion,
    decide_starfree_inclusion, decide_universality, decide_auto, oracle_refute,
)

__version__ = "0.1.0"
