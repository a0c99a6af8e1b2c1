from ._core import (
    Analysis,
    CheckResult,
    ConfigError,
    DomainError,
    Mode,
    ModeStats,
    NetworkConfig,
    NumericalError,
    Scenario,
    ValidationReport,
    format_config,
    load_config,
    mode_stats,
    parse_config,
    simulate_activity,
    sweep_csv,
    validate,
)

__all__ = [
    "Analysis",
    "CheckResult",
    "ConfigError",
    "DomainError",
    "Mode",
    "ModeStats",
    "NetworkConfig",
    "NumericalError",
    "Scenario",
    "ValidationReport",
    "format_config",
    "load_config",
    "mode_stats",
    "parse_config",
    "simulate_activity",
    "sweep_csv",
    "validate",
]
