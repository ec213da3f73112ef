"""Exact computation and machine verification of Rado-type numbers for the
k-term sum equation, its unit-fraction counterpart, and the
fractional-power lift."""

from .colorability import (
    Coloring,
    ColorSearchResult,
    SearchStats,
    WitnessVerdict,
    brute_force_is_witness,
    export_cnf,
    find_coloring,
    is_witness,
)
from .equations import (
    Equation,
    Family,
    SolutionInstance,
    check_solution,
    enumerate_solutions_in_interval,
    enumerate_solutions_in_set,
    exists_mono_solution,
    solution_supports,
)
from .errors import (
    BudgetExceeded,
    CapExceeded,
    DomainError,
    EdgeOutsideDomain,
    FractionalPowerNotAPower,
    NotAWitness,
    RadoError,
    SetTooLarge,
)
from .exact import (
    Exhausted,
    RadoResult,
    lower_bound_coloring,
    rado_number,
    verify_no_mono,
)
from .reduce import (
    BoundCertificate,
    certificate_from_json,
    certificate_to_json,
    closed_form_bound,
    lcm_of_set,
    power_lift_bound,
    upper_bound_from_witness,
    verify_certificate,
)
from .witness_families import (
    FamilySpec,
    chi_collisions,
    chi_set,
    dual_set,
    family_set,
    interval_set,
    lemma31_set,
    lemma33_set,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate",
    "BudgetExceeded",
    "CapExceeded",
    "Coloring",
    "ColorSearchResult",
    "DomainError",
    "EdgeOutsideDomain",
    "Equation",
    "Exhausted",
    "Family",
    "FamilySpec",
    "FractionalPowerNotAPower",
    "NotAWitness",
    "RadoError",
    "RadoResult",
    "SearchStats",
    "SetTooLarge",
    "SolutionInstance",
    "WitnessVerdict",
    "brute_force_is_witness",
    "certificate_from_json",
    "certificate_to_json",
    "check_solution",
    "chi_collisions",
    "chi_set",
    "closed_form_bound",
    "dual_set",
    "enumerate_solutions_in_interval",
    "enumerate_solutions_in_set",
    "exists_mono_solution",
    "export_cnf",
    "family_set",
    "find_coloring",
    "interval_set",
    "is_witness",
    "lcm_of_set",
    "lemma31_set",
    "lemma33_set",
    "lower_bound_coloring",
    "power_lift_bound",
    "rado_number",
    "solution_supports",
    "upper_bound_from_witness",
    "verify_certificate",
    "verify_no_mono",
]
