"""Exceptions with CLI exit-code semantics."""


class ConfigError(ValueError):
    """Invalid scenario/configuration input (CLI exit code 2)."""


class InfeasibleError(ValueError):
    """Physically infeasible request, e.g. frame overhead exceeding the
    coherence interval (CLI exit code 3)."""
