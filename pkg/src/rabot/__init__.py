"""Exact arithmetic for the run-shortening (raboter) operation on base-b
digit strings: moment sums by brute force and by recurrence, proven
exponential closed forms in k, and conjectured forms uniform in b."""

from .closedform import (
    ExponentialForm,
    PolyTermForm,
    Verdict,
    candidate_bases,
    closed_form,
    fit_closed_form,
    fit_recurrence_form,
    minimal_recurrence,
    state_dimension_bound,
    verify,
)
from .digits import (
    DigitString,
    RunLengthForm,
    from_value,
    raboter,
    shorten_runs,
    to_runs,
    to_value,
)
from .errors import (
    DepthError,
    EnumerationCapError,
    ExcludedBaseError,
    InvalidBaseError,
    InvalidDigitError,
    NoFitError,
)
from .generalform import (
    GeneralForm,
    PolyInB,
    RationalFnInB,
    base_families,
    guess_general_form,
    specialize,
)
from .oeis import LookupResult, lookup
from .oracle import (
    DEFAULT_ENUM_CAP,
    MomentQuery,
    brute_moment,
    brute_moment_parallel,
)
from .recurrence import MomentTable, build_table, extend, moment_value, seed_base_case

__version__ = "0.1.0"

__all__ = [
    "DigitString",
    "RunLengthForm",
    "from_value",
    "to_value",
    "to_runs",
    "shorten_runs",
    "raboter",
    "MomentQuery",
    "brute_moment",
    "brute_moment_parallel",
    "DEFAULT_ENUM_CAP",
    "MomentTable",
    "seed_base_case",
    "extend",
    "build_table",
    "moment_value",
    "ExponentialForm",
    "PolyTermForm",
    "Verdict",
    "candidate_bases",
    "fit_closed_form",
    "verify",
    "closed_form",
    "minimal_recurrence",
    "fit_recurrence_form",
    "state_dimension_bound",
    "GeneralForm",
    "PolyInB",
    "RationalFnInB",
    "base_families",
    "guess_general_form",
    "specialize",
    "LookupResult",
    "lookup",
    "InvalidBaseError",
    "InvalidDigitError",
    "EnumerationCapError",
    "NoFitError",
    "DepthError",
    "ExcludedBaseError",
    "__version__",
]
