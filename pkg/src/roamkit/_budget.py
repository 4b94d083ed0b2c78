"""Resource budgets.  ROAMKIT_BUDGET caps every budget below when set."""

import os

VERTICES = 2_000_000
TRIANGLES = 10_000_000
PATHS = 200_000


def _cap(default):
    env = os.environ.get("ROAMKIT_BUDGET")
    if env:
        try:
            return min(default, int(env))
        except ValueError:
            pass
    return default


def vertex_budget():
    return _cap(VERTICES)


def triangle_budget():
    return _cap(TRIANGLES)


def path_budget():
    return _cap(PATHS)


class BudgetExceeded(RuntimeError):
    pass
