"""Exception and warning types shared across the package."""


class ParameterError(ValueError):
    """Invalid physical parameter or geometry (non-positive, NaN, wrong dim)."""


class DomainError(ValueError):
    """Argument outside a special function's domain (origin, branch cut)."""


class DivergenceError(ArithmeticError):
    """The requested signal diverges for these inputs (e.g. gamma = 0 at
    zero detuning, where the coherence never decays)."""


class ConfigError(ValueError):
    """Malformed run configuration (unknown key, bad value, missing field)."""


class AnalysisError(RuntimeError):
    """A profile metric could not be extracted (no half-maximum crossing,
    non-positive peak)."""


class RegimeWarning(UserWarning):
    """An approximation is being used outside its stated validity regime."""
