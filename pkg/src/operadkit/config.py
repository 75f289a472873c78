import os

DEFAULT_BUDGET = 10**6
DEFAULT_SAMPLES = 48
DEFAULT_SEED = 0


def enumeration_budget(override=None):
    """Budget for exhaustive enumeration; ``OPERADKIT_BUDGET`` overrides the default."""
    if override is not None:
        if override <= 0:
            raise ValueError("budget must be positive")
        return int(override)
    env = os.environ.get("OPERADKIT_BUDGET")
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError("OPERADKIT_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET
