import os

DEFAULT_TOL = 1e-9
DEFAULT_DPS = 40


def working_dps():
    """Decimal digits for mpmath work; the PRECISION env var overrides."""
    raw = os.environ.get("PRECISION")
    if raw:
        try:
            dps = int(raw)
        except ValueError:
            return DEFAULT_DPS
        # never drop below a 64-bit mantissa (~20 digits)
        return max(dps, 20)
    return DEFAULT_DPS
