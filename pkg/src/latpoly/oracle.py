"""Ground truth by clone closure, exhaustive equivalence verification, and
counterexample search on non-distributive lattices.

``closure_polynomials`` generates every function obtainable from the
projections and the constants by pointwise meets and joins; that fixed
point is the set of polynomial functions on *any* bounded lattice, so it
serves as the oracle against which the cheaper 0/1-reconstruction test and
all condition checkers are cross-validated.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .budget import ensure_budget, resolve_budget
from .conditions import check_condition, evaluate_all_conditions
from .dnf import DNFMap, dnf_evaluate, subset_masks
from .errors import (
    BudgetExceededError,
    InvalidParamsError,
    NotDistributiveError,
    NotNonDistributiveError,
)
from .terms import FunctionTable


class FunctionSet:
    """Deduplicated set of same-arity tables over one lattice.

    Iteration is canonical (ascending table encoding); membership accepts a
    FunctionTable or a raw value tuple.
    """

    def __init__(self, lattice, arity, tables=()):
        self.lattice = lattice
        self.arity = arity
        self._by_values = {}
        for t in tables:
            self.add(t)

    def add(self, table):
        if not isinstance(table, FunctionTable):
            table = FunctionTable(self.lattice, self.arity, table)
        if table.arity != self.arity:
            raise InvalidParamsError(
                f"table arity {table.arity} differs from the set arity {self.arity}"
            )
        self._by_values.setdefault(table.values, table)

    def __contains__(self, item):
        values = item.values if isinstance(item, FunctionTable) else tuple(item)
        return values in self._by_values

    def __iter__(self):
        for values in sorted(self._by_values):
            yield self._by_values[values]

    def __len__(self):
        return len(self._by_values)

    def __eq__(self, other):
        return (
            isinstance(other, FunctionSet)
            and self.lattice is other.lattice
            and self.arity == other.arity
            and self._by_values.keys() == other._by_values.keys()
        )

    def value_tuples(self):
        return frozenset(self._by_values)

    def __repr__(self):
        return f"FunctionSet(n={self.arity}, size={len(self)})"


# -- monotone table enumeration ----------------------------------------------


def _point_lower_covers(lattice, n):
    """For each grid index, the indices covered by it in the product order."""
    sp = lattice.point_space(n)
    strides = sp.strides
    covers_down = lattice.covers_down
    out = []
    for i, x in enumerate(sp.points):
        row = []
        for k in range(n):
            sk = strides[k]
            xk = x[k]
            for c in covers_down[xk]:
                row.append(i + (c - xk) * sk)
        out.append(row)
    return out


def iter_monotone_tables(lattice, n):
    """All order-preserving tables L^n -> L, in canonical order.

    Values are assigned along the grid's linear extension; at each point
    the admissible values are the up-set of the join of the values already
    fixed on its lower covers, which is exactly monotonicity.
    """
    sp = lattice.point_space(n)
    size = sp.size
    join_t = lattice._join_t
    ups = [tuple(lattice.upset_ids(v)) for v in range(lattice.m)]
    lower = _point_lower_covers(lattice, n)
    values = [0] * size

    def options(i):
        lo = 0
        for j in lower[i]:
            lo = join_t[lo][values[j]]
        return ups[lo]

    iters = [None] * size
    iters[0] = iter(options(0))
    pos = 0
    while pos >= 0:
        nxt = next(iters[pos], None)
        if nxt is None:
            pos -= 1
            continue
        values[pos] = nxt
        if pos + 1 == size:
            yield tuple(values)
        else:
            pos += 1
            iters[pos] = iter(options(pos))


def count_monotone_tables(lattice, n, stop_after=None):
    """Number of order-preserving tables; stops early past `stop_after`."""
    count = 0
    for _ in iter_monotone_tables(lattice, n):
        count += 1
        if stop_after is not None and count > stop_after:
            return count
    return count


def random_monotone_table(lattice, n, rng):
    """One order-preserving table drawn with a seeded generator."""
    sp = lattice.point_space(n)
    join_t = lattice._join_t
    ups = [tuple(lattice.upset_ids(v)) for v in range(lattice.m)]
    lower = _point_lower_covers(lattice, n)
    values = [0] * sp.size
    for i in range(sp.size):
        lo = 0
        for j in lower[i]:
            lo = join_t[lo][values[j]]
        values[i] = rng.choice(ups[lo])
    return tuple(values)


# -- polynomial function generation -------------------------------------------


def closure_polynomials(lattice, n, budget=None):
    """All polynomial functions L^n -> L, by closing the projections and
    constants under pointwise meet and join.  Valid on any lattice."""
    key = ("closure", n)
    cached = lattice._cache.get(key)
    if cached is not None:
        return cached
    sp = lattice.point_space(n)
    size = sp.size
    m = lattice.m
    allowed = resolve_budget(budget)
    ensure_budget(size * (n + m), budget, "clone generator construction")

    tables = set()
    for k in range(n):
        tables.add(tuple(x[k] for x in sp.points))
    for c in range(m):
        tables.add((c,) * size)

    meet_t, join_t = lattice._meet_t, lattice._join_t
    queue = deque(tables)
    ops = 0
    while queue:
        t = queue.popleft()
        ops += 2 * size * len(tables)
        if ops > allowed:
            raise BudgetExceededError(ops, allowed, "clone closure")
        for s in list(tables):
            lo = tuple(meet_t[a][b] for a, b in zip(t, s))
            if lo not in tables:
                tables.add(lo)
                queue.append(lo)
            hi = tuple(join_t[a][b] for a, b in zip(t, s))
            if hi not in tables:
                tables.add(hi)
                queue.append(hi)
    result = FunctionSet(lattice, n, tables)
    lattice._cache[key] = result
    return result


def enumerate_polynomials_distributive(lattice, n, budget=None):
    """All polynomial functions via normal forms: materialize the normal
    form of every inclusion-monotone coefficient map.

    On a distributive lattice the monotone coefficient maps are exactly
    the canonical maps alpha_f of the polynomial functions, so this must
    coincide with the clone closure; non-monotone maps would only repeat
    tables and are skipped.
    """
    if not lattice.distributive:
        raise NotDistributiveError(
            "normal-form enumeration of polynomial functions needs a "
            "distributive lattice"
        )
    sp = lattice.point_space(n)
    order = subset_masks(n)
    total = len(order)
    ups = [tuple(lattice.upset_ids(v)) for v in range(lattice.m)]
    join_t = lattice._join_t
    allowed = resolve_budget(budget)
    ops = 0

    by_mask = [0] * (1 << n)
    out = FunctionSet(lattice, n)

    def options(pos):
        mask = order[pos]
        lo = 0
        for k in range(n):
            if mask >> k & 1:
                lo = join_t[lo][by_mask[mask ^ (1 << k)]]
        return ups[lo]

    iters = [None] * total
    iters[0] = iter(options(0))
    pos = 0
    while pos >= 0:
        nxt = next(iters[pos], None)
        if nxt is None:
            pos -= 1
            continue
        by_mask[order[pos]] = nxt
        if pos + 1 == total:
            alpha = DNFMap(lattice, n, tuple(by_mask))
            ops += sp.size * max(1, total)
            if ops > allowed:
                raise BudgetExceededError(ops, allowed, "normal-form image enumeration")
            out.add(tuple(dnf_evaluate(alpha, x) for x in sp.iter_points()))
        else:
            pos += 1
            iters[pos] = iter(options(pos))
    return out


# -- exhaustive verification ----------------------------------------------


@dataclass
class VerificationReport:
    lattice_name: str
    arity: int
    mode: str  # "exhaustive" or "sampled"
    seed: int | None
    checked: int
    polynomial_count: int
    inconsistencies: list

    def format_text(self):
        mode = self.mode
        if mode == "sampled":
            mode = f"sampled seed={self.seed}"
        lines = [
            f"verify {self.lattice_name} n={self.arity} mode={mode}",
            f"checked={self.checked} polynomial={self.polynomial_count} "
            f"inconsistent={len(self.inconsistencies)}",
        ]
        for values, report in self.inconsistencies:
            verdicts = " ".join(
                f"{cond}={report.entries[cond].holds}" for cond in report.entries
            )
            lines.append(
                f"inconsistent: f=[{' '.join(str(v) for v in values)}] "
                f"{verdicts} polynomial={report.polynomial}"
            )
        return "\n".join(lines)


# rough per-table cost of running every condition checker, in units of
# |L|^n point evaluations; used only to pick exhaustive vs sampled mode
_COST_FACTOR = 12


def verify_equivalence(lattice, n, budget=None, seed=0, max_sample=1000):
    """Check that conditions ii..vi and closure membership agree on every
    order-preserving table (a seeded sample when that is over budget).

    Any disagreement on a distributive lattice indicates an implementation
    bug (the equivalence is a theorem), so callers should treat a non-empty
    inconsistency list as a failure.
    """
    sp = lattice.point_space(n)
    allowed = resolve_budget(budget)
    closure = closure_polynomials(lattice, n, budget=budget)
    max_tables = max(1, allowed // (sp.size * _COST_FACTOR))
    total = count_monotone_tables(lattice, n, stop_after=max_tables)
    if total <= max_tables:
        mode = "exhaustive"
        source = iter_monotone_tables(lattice, n)
        used_seed = None
    else:
        mode = "sampled"
        rng = random.Random(seed)
        used_seed = seed
        source = (
            random_monotone_table(lattice, n, rng)
            for _ in range(min(max_sample, max_tables))
        )

    checked = 0
    polynomial_count = 0
    inconsistencies = []
    for values in source:
        f = FunctionTable(lattice, n, values)
        report = evaluate_all_conditions(
            f, budget=budget, known_polynomial=values in closure
        )
        checked += 1
        if report.polynomial:
            polynomial_count += 1
        if not report.consistent:
            inconsistencies.append((values, report))
    return VerificationReport(
        lattice_name=lattice.name,
        arity=n,
        mode=mode,
        seed=used_seed,
        checked=checked,
        polynomial_count=polynomial_count,
        inconsistencies=inconsistencies,
    )


# -- counterexample search on non-distributive lattices -----------------------


@dataclass(frozen=True)
class NondistributiveWitness:
    """Either a polynomial function violating a condition, or an
    order-preserving non-polynomial function satisfying it."""

    condition: str
    direction: str  # "polynomial-violates" or "nonpolynomial-satisfies"
    table: FunctionTable
    detail: object | None = None


def find_nondistributive_witness(lattice, n, condition, budget=None):
    """Search for a failure of the polynomiality equivalence on a
    non-distributive lattice; returns None when the scan finds nothing."""
    if condition not in ("iii", "iv", "v", "vi"):
        raise InvalidParamsError(
            f"condition must be one of iii, iv, v, vi; got {condition!r}"
        )
    if lattice.distributive:
        raise NotNonDistributiveError(
            f"lattice {lattice.name!r} is distributive, so no witness can exist"
        )
    sp = lattice.point_space(n)
    allowed = resolve_budget(budget)
    closure = closure_polynomials(lattice, n, budget=budget)

    for f in closure:
        ok, witness = check_condition(f, condition, budget=budget)
        if not ok:
            return NondistributiveWitness(condition, "polynomial-violates", f, witness)

    ops = 0
    for values in iter_monotone_tables(lattice, n):
        ops += sp.size * _COST_FACTOR
        if ops > allowed:
            raise BudgetExceededError(ops, allowed, "witness search")
        if values in closure:
            continue
        f = FunctionTable(lattice, n, values)
        ok, _ = check_condition(f, condition, budget=budget)
        if ok:
            return NondistributiveWitness(condition, "nonpolynomial-satisfies", f, None)
    return None
