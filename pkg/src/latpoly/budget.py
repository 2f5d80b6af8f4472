"""Evaluation-budget guard shared by every exhaustive scan.

A single limit (point evaluations per operation) bounds all exhaustive
loops; exceeding it raises instead of silently sampling.
"""

from .errors import BudgetExceededError

DEFAULT_BUDGET = 10_000_000


def resolve_budget(budget):
    """Map None to the default budget, otherwise pass through as int."""
    return DEFAULT_BUDGET if budget is None else int(budget)


def ensure_budget(required, budget, what="operation"):
    """Raise BudgetExceededError if `required` evaluations exceed the budget."""
    allowed = resolve_budget(budget)
    if required > allowed:
        raise BudgetExceededError(required, allowed, what)
    return allowed
