"""Soccer action valuation toolkit.

Turns provider event logs into a unified on-ball action table, learns
near-future goal probabilities from windowed game states, and converts
the probability shifts into per-action, per-player and per-team ratings.
"""

from __future__ import annotations

__version__ = "0.1.0"

from . import errors  # noqa: F401
