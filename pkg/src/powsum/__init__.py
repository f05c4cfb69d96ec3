"""Power sums 1^n + ... + m^n modulo k, fast for astronomically large inputs.

The fast path rests on two facts about S_n mod a prime power q^a: the sum
over a full block 1..q^a has a two-case closed form (Euler phi or zero),
and the residue sequence in m is periodic with a short, exactly known
period.  `eval_sum` exploits both; `naive_sum` is the direct oracle; the
`verify` module certifies every claimed identity empirically on finite
grids and reports counterexamples if it ever finds any.
"""

from .arith import (
    MAX_MODULUS,
    PrimePower,
    Residue,
    crt_combine,
    divisors,
    factorize,
    is_prime,
    mod_pow,
    nu,
    phi_prime_power,
)
from .powersum import (
    PHI_CASE,
    ZERO_CASE,
    CongruenceCase,
    EvalPart,
    PeriodBreakdown,
    PrimePowerPeriod,
    eval_parts,
    eval_sum,
    naive_sum,
    period,
    period_prime_power,
    prime_power_congruence,
    row_period,
    valuation_lower_bound,
)
from .verify import (
    VerificationRecord,
    VerificationReport,
    check_congruence_theorems,
    check_generator_block,
    check_generator_permutation,
    check_lemma_binomial,
    check_period_formulas,
    check_power_congruence,
    check_row_period,
    emit_report,
    merge_reports,
    minimal_period_bruteforce,
    parse_report,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_MODULUS",
    "PrimePower",
    "Residue",
    "crt_combine",
    "divisors",
    "factorize",
    "is_prime",
    "mod_pow",
    "nu",
    "phi_prime_power",
    "PHI_CASE",
    "ZERO_CASE",
    "CongruenceCase",
    "EvalPart",
    "PeriodBreakdown",
    "PrimePowerPeriod",
    "eval_parts",
    "eval_sum",
    "naive_sum",
    "period",
    "period_prime_power",
    "prime_power_congruence",
    "row_period",
    "valuation_lower_bound",
    "VerificationRecord",
    "VerificationReport",
    "check_congruence_theorems",
    "check_generator_block",
    "check_generator_permutation",
    "check_lemma_binomial",
    "check_period_formulas",
    "check_power_congruence",
    "check_row_period",
    "emit_report",
    "merge_reports",
    "minimal_period_bruteforce",
    "parse_report",
    "__version__",
]
