"""Resource caps, overridable through the environment."""

import os

DIMENSION_CAP = 4096
TUPLE_CAP = 10**6

ENV_DIMENSION_CAP = "FUSIONLAB_DIMENSION_CAP"
ENV_TUPLE_CAP = "FUSIONLAB_TUPLE_CAP"


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def dimension_cap(cap=None):
    """Explicit cap if given, else the environment override, else 4096."""
    return cap if cap is not None else _env_int(ENV_DIMENSION_CAP, DIMENSION_CAP)


def tuple_cap(cap=None):
    return cap if cap is not None else _env_int(ENV_TUPLE_CAP, TUPLE_CAP)
