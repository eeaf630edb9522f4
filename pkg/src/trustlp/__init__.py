"""Exact analysis of trust-constrained sender-receiver persuasion games."""

__version__ = "0.1.0"

from .equilibrium import (
    EpsSesStep,
    EquilibriumReport,
    eps_ses_sequence,
    full_disclosure_check,
    kernel_to_strategies,
    sgv_info_bounds,
    solve_game,
)
from .game import (
    BestResponseStructure,
    ReceiverStrategy,
    RecoveryKernel,
    SenderStrategy,
    UtilityMatrix,
    bceu,
    best_response_structure,
    choice_utility,
    expected_utility,
    induced_kernel,
    kernel_value,
    recovery_value,
    validate,
    wceu,
)

__all__ = [
    "__version__",
    "UtilityMatrix",
    "SenderStrategy",
    "ReceiverStrategy",
    "RecoveryKernel",
    "BestResponseStructure",
    "recovery_value",
    "expected_utility",
    "choice_utility",
    "kernel_value",
    "induced_kernel",
    "best_response_structure",
    "wceu",
    "bceu",
    "validate",
    "EquilibriumReport",
    "EpsSesStep",
    "solve_game",
    "kernel_to_strategies",
    "eps_ses_sequence",
    "full_disclosure_check",
    "sgv_info_bounds",
]
