"""Global working precision for all numeric evaluation.

Everything numeric in this package runs on mpmath's global context, so
setting the precision here changes every downstream evaluation.  The
default of 16 significant digits is enough for all bundled checks; a few
ill-conditioned identities are verified at elevated precision by callers
that bump it temporarily.
"""

from contextlib import contextmanager

from mpmath import mp

DEFAULT_DPS = 16

mp.dps = DEFAULT_DPS


def set_precision(dps):
    """Set global working precision to `dps` significant digits (min 15)."""
    if dps < 15:
        raise ValueError("working precision below 15 digits is not supported")
    mp.dps = int(dps)


def get_precision():
    return mp.dps


@contextmanager
def extra_precision(extra=10):
    """Temporarily raise working precision by `extra` digits."""
    saved = mp.dps
    mp.dps = saved + extra
    try:
        yield
    finally:
        mp.dps = saved


def series_eps():
    """Stop threshold for infinite sums: one digit below working precision."""
    return mp.mpf(10) ** (-(mp.dps + 1))
