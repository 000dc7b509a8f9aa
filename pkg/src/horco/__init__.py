"""Path orderings and computability closures for termination checking of
first- and higher-order rewrite systems."""

from .derivations import (
    Budget,
    Derivation,
    derivation_from_json,
    derivation_to_json,
    format_derivation,
)
from .enumeration import enumerate_terms, subterm_closure
from .fo import cc_fo_member, rco_fixpoint_oracle, rco_gt, rpo_gt
from .ho import (
    cc_ho_member,
    horco_chain_gt,
    horco_gt,
    horpo_case6_trips,
    horpo_gt,
    orient_rule,
    reset_horpo_case6_trips,
    size_approx_gt,
    whorco_gt,
    whorco_pairs,
)
from .order import (
    Cmp,
    Precedence,
    Status,
    lex_ext,
    mul_ext,
    prec_cmp,
    stat_cmp,
    status_ext,
    status_of,
    validate_precedence,
)
from .report import (
    CheckConfig,
    CheckReport,
    RuleResult,
    emit_report,
    run_check,
    run_compare,
    search_precedence,
)
from .rewriting import Rule, Trs
from .terms import App, Lam, Sym, Term, Var, alpha_eq, typeof
from .text import TrsParseError, format_term, format_trs, parse_term, parse_trs
from .types import Arrow, Base, SimpleType, acc
from .validate import ValidationFailure, validate_derivation

__all__ = [
    "App",
    "Arrow",
    "Base",
    "Budget",
    "CheckConfig",
    "CheckReport",
    "Cmp",
    "Derivation",
    "Lam",
    "Precedence",
    "Rule",
    "RuleResult",
    "SimpleType",
    "Status",
    "Sym",
    "Term",
    "Trs",
    "TrsParseError",
    "ValidationFailure",
    "Var",
    "acc",
    "alpha_eq",
    "cc_fo_member",
    "cc_ho_member",
    "derivation_from_json",
    "derivation_to_json",
    "emit_report",
    "enumerate_terms",
    "format_derivation",
    "format_term",
    "format_trs",
    "horco_chain_gt",
    "horco_gt",
    "horpo_case6_trips",
    "horpo_gt",
    "lex_ext",
    "mul_ext",
    "orient_rule",
    "parse_term",
    "parse_trs",
    "prec_cmp",
    "rco_fixpoint_oracle",
    "rco_gt",
    "reset_horpo_case6_trips",
    "rpo_gt",
    "run_check",
    "run_compare",
    "search_precedence",
    "size_approx_gt",
    "stat_cmp",
    "status_ext",
    "status_of",
    "subterm_closure",
    "typeof",
    "validate_derivation",
    "validate_precedence",
    "whorco_gt",
    "whorco_pairs",
]
