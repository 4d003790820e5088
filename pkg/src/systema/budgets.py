"""Search budgets with SYSTEMA_BUDGET overrides.

Every exhaustive search in the package reads its cap from here.  The
environment variable ``SYSTEMA_BUDGET`` overrides the defaults: either a
single integer (replaces the two generic enumeration caps ``search_nodes``
and ``solve_candidates``) or a comma list of ``name=value`` assignments,
e.g. ``SYSTEMA_BUDGET="det_size=8,search_nodes=500000"``.
"""

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Budgets:
    det_size: int = 7            # largest n for n! determinant expansion
    characteristic: int = 64     # largest characteristic probed
    height: int = 8              # sum-of-tangibles search depth
    iso_size: int = 12           # carrier size cap for isomorphism search
    search_nodes: int = 1_000_000   # dependence / coefficient search cap
    solve_candidates: int = 1_000_000  # tangible-solve enumeration cap
    matroid_ground: int = 8      # |E| cap for valuated-matroid checks
    matroid_rank: int = 4        # rank cap for valuated-matroid checks
    bend_depth: int = 12         # chain-search path length cap


DEFAULTS = Budgets()

_NAMES = {f for f in Budgets.__dataclass_fields__}


def from_env(env=None):
    """Budgets after applying any SYSTEMA_BUDGET override."""
    raw = (env if env is not None else os.environ).get("SYSTEMA_BUDGET")
    if not raw:
        return DEFAULTS
    raw = raw.strip()
    if "=" not in raw:
        cap = int(raw)
        return replace(DEFAULTS, search_nodes=cap, solve_candidates=cap)
    updates = {}
    for part in raw.split(","):
        name, _, value = part.partition("=")
        name = name.strip()
        if name not in _NAMES:
            raise ValueError(f"unknown budget name {name!r}")
        updates[name] = int(value)
    return replace(DEFAULTS, **updates)
