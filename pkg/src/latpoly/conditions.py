"""Checkers for the functional equations characterizing polynomial functions.

An order-preserving f: L^n -> L on a bounded distributive lattice is a
polynomial function exactly when any one of these holds:

  ii   median decomposition     f(x) = med(f(x_k^0), x_k, f(x_k^1))
  iii  diagonal preservation (meet+join) and convex ranges and
       composition absorption  f(..., f(x), ...) = f(x)
  iv   meet-homogeneity f(x ^ c) = f(x) ^ c and its join dual,
       for c between f(bottom) and f(top)
  v    diagonal join-preservation, meet-homogeneity, and the horizontal
       split f(x) = f(x ^ c) v f([x]_c)
  vi   diagonal preservation (both), both horizontal splits, and range
       idempotency f(c, ..., c) = c on the bound interval

Each checker scans the point grid in canonical order and reports the first
failure as a witness.  Witness tags in reports: "(1)" median
decomposition, "(2)" composition absorption, "(3)"/"(3d)" meet/join
homogeneity, "(4)"/"(4d)" horizontal splits, "(5)" range idempotency,
plus "delta-meet"/"delta-join" and "range-convex"/"section-convex".
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .budget import ensure_budget
from .errors import HypothesisViolatedError, InvalidParamsError
from .dnf import reconstruct, subset_masks

CONDITION_IDS = ("ii", "iii", "iv", "v", "vi")


@dataclass(frozen=True)
class Witness:
    """First failure of a scan: point, coordinate, threshold, equation tag."""

    x: tuple | None = None
    k: int | None = None
    c: int | None = None
    eq: str | None = None


@dataclass(frozen=True)
class ConditionEntry:
    """Verdict for one condition; holds=None marks 'hypothesis not met'."""

    holds: bool | None
    witness: Witness | None = None

    @property
    def skipped(self):
        return self.holds is None


@dataclass
class ConditionReport:
    table: object
    order_preserving: bool
    order_witness: Witness | None
    entries: dict
    polynomial: bool
    consistent: bool


@dataclass(frozen=True)
class Classification:
    polynomial: bool
    term_function: bool
    sugeno: bool


# -- individual checkers ----------------------------------------------------


def is_order_preserving(f, budget=None):
    """Componentwise monotonicity, checked on cover-adjacent point pairs
    (sufficient by transitivity)."""
    lat = f.lattice
    n = f.arity
    sp = lat.point_space(n)
    ensure_budget(sp.size * max(n, 1), budget, "monotonicity scan")
    leq = lat._leq
    vals = f.values
    strides = sp.strides
    covers_up = lat.covers_up
    for i, x in enumerate(sp.points):
        fi = vals[i]
        row = leq[fi]
        for k in range(n):
            sk = strides[k]
            xk = x[k]
            for c in covers_up[xk]:
                if not row[vals[i + (c - xk) * sk]]:
                    return False, Witness(x=x, k=k + 1)
    return True, None


def check_median_decomposition(f, budget=None):
    """f(x) = med(f(x with x_k := bottom), x_k, f(x with x_k := top))
    for every point x and coordinate k."""
    lat = f.lattice
    n = f.arity
    sp = lat.point_space(n)
    ensure_budget(sp.size * max(n, 1), budget, "median decomposition scan")
    vals = f.values
    meet_t, join_t = lat._meet_t, lat._join_t
    top = lat.top_id
    strides = sp.strides
    for i, x in enumerate(sp.points):
        fx = vals[i]
        for k in range(n):
            sk = strides[k]
            xk = x[k]
            f0 = vals[i - xk * sk]
            f1 = vals[i + (top - xk) * sk]
            med = meet_t[meet_t[join_t[f0][xk]][join_t[f0][f1]]][join_t[xk][f1]]
            if med != fx:
                return False, Witness(x=x, k=k + 1)
    return True, None


def check_self_composition(f, budget=None):
    """f(x_1, ..., f(x), ..., x_n) = f(x) for every point and slot; for
    n = 1 this is the idempotency equation f(f(x)) = f(x)."""
    lat = f.lattice
    n = f.arity
    sp = lat.point_space(n)
    ensure_budget(sp.size * max(n, 1), budget, "composition absorption scan")
    vals = f.values
    strides = sp.strides
    for i, x in enumerate(sp.points):
        fx = vals[i]
        for k in range(n):
            if vals[i + (fx - x[k]) * strides[k]] != fx:
                return False, Witness(x=x, k=k + 1)
    return True, None


def _bound_interval(f, what):
    lat = f.lattice
    f0 = f.values[0]
    f1 = f.values[-1]
    if not lat._leq[f0][f1]:
        raise HypothesisViolatedError(
            f"{what} needs f(bottom,...) below f(top,...); "
            f"got {lat.elements[f0].name!r} and {lat.elements[f1].name!r}"
        )
    return lat.interval(f0, f1)


def check_homogeneity(f, direction="meet", scope="interval", budget=None):
    """Threshold homogeneity f(x ^ c) = f(x) ^ c (or the join dual).

    scope='interval' ranges c over [f(bottom), f(top)] (requires that
    interval to be well formed); scope='all' is the stronger variant with
    c ranging over the whole lattice.
    """
    if direction not in ("meet", "join"):
        raise InvalidParamsError(f"direction must be 'meet' or 'join', got {direction!r}")
    if scope not in ("interval", "all"):
        raise InvalidParamsError(f"scope must be 'interval' or 'all', got {scope!r}")
    lat = f.lattice
    n = f.arity
    m = lat.m
    sp = lat.point_space(n)
    ensure_budget(sp.size * m, budget, "homogeneity scan")
    cs = _bound_interval(f, "homogeneity") if scope == "interval" else range(m)
    op = lat._meet_t if direction == "meet" else lat._join_t
    vals = f.values
    for i, x in enumerate(sp.points):
        fi = vals[i]
        for c in cs:
            idx = 0
            for d in x:
                idx = idx * m + op[d][c]
            if vals[idx] != op[fi][c]:
                return False, Witness(x=x, c=c)
    return True, None


def check_horizontal(f, direction="meet", budget=None):
    """Horizontal split f(x) = f(x ^ c) v f([x]_c) (meet direction) or the
    dual f(x) = f(x v c) ^ f([x]^c), for c in [f(bottom), f(top)]."""
    if direction not in ("meet", "join"):
        raise InvalidParamsError(f"direction must be 'meet' or 'join', got {direction!r}")
    lat = f.lattice
    n = f.arity
    m = lat.m
    sp = lat.point_space(n)
    ensure_budget(sp.size * m, budget, "horizontal split scan")
    cs = _bound_interval(f, "horizontal split")
    leq = lat._leq
    meet_t, join_t = lat._meet_t, lat._join_t
    top = lat.top_id
    vals = f.values
    for i, x in enumerate(sp.points):
        fi = vals[i]
        for c in cs:
            a = 0
            b = 0
            if direction == "meet":
                for d in x:
                    a = a * m + meet_t[d][c]
                    b = b * m + (0 if leq[d][c] else d)
                if join_t[vals[a]][vals[b]] != fi:
                    return False, Witness(x=x, c=c)
            else:
                for d in x:
                    a = a * m + join_t[d][c]
                    b = b * m + (top if leq[c][d] else d)
                if meet_t[vals[a]][vals[b]] != fi:
                    return False, Witness(x=x, c=c)
    return True, None


def check_range_idempotency(f, budget=None):
    """f(c, ..., c) = c for every c in [f(bottom), f(top)]."""
    lat = f.lattice
    sp = lat.point_space(f.arity)
    ensure_budget(lat.m, budget, "range idempotency scan")
    for c in _bound_interval(f, "range idempotency"):
        if f.values[sp.diag_index(c)] != c:
            return False, Witness(c=c)
    return True, None


def _convexity_gap(values, leq, m):
    """Smallest element strictly between members of `values` yet missing."""
    for y in range(m):
        if y in values:
            continue
        if any(leq[u][y] for u in values) and any(leq[y][v] for v in values):
            return y
    return None


def check_range_convexity(f, budget=None):
    """The global range and every one-coordinate section range are convex
    (contain everything between two of their members)."""
    lat = f.lattice
    n = f.arity
    m = lat.m
    sp = lat.point_space(n)
    ensure_budget(sp.size * m * max(n, 1), budget, "range convexity scan")
    leq = lat._leq
    vals = f.values
    gap = _convexity_gap(set(vals), leq, m)
    if gap is not None:
        return False, Witness(c=gap, eq="range-convex")
    strides = sp.strides
    for i, a in enumerate(sp.points):
        for k in range(n):
            if a[k] != 0:
                continue  # same section as the representative with a_k = bottom
            sk = strides[k]
            section = {vals[i + v * sk] for v in range(m)}
            if len(section) == m:
                continue
            gap = _convexity_gap(section, leq, m)
            if gap is not None:
                return False, Witness(x=a, k=k + 1, c=gap, eq="section-convex")
    return True, None


def _delta_failures(f, budget=None):
    """First meet- and join-preservation failures over the diagonals of f
    and of every constant-substitution of f (deduplicated by table).

    Returns a pair (meet_failure, join_failure); each is None or
    (scan_index, Witness).
    """
    lat = f.lattice
    n = f.arity
    m = lat.m
    sp = lat.point_space(n)
    ensure_budget(sp.size * (1 << n), budget, "diagonal preservation scan")
    meet_t, join_t = lat._meet_t, lat._join_t
    vals = f.values
    points = sp.points
    seen = set()
    meet_fail = None
    join_fail = None
    g_index = 0
    full = (1 << n) - 1
    for kmask in subset_masks(n):
        if kmask == full and n > 0:
            continue  # keep at least one free coordinate
        if meet_fail is not None and join_fail is not None:
            break
        kcoords = [k for k in range(n) if kmask >> k & 1]
        free = [k for k in range(n) if not kmask >> k & 1]
        g_arity = len(free)
        g_size = m ** g_arity
        groups = {}
        for i, x in enumerate(points):
            key = tuple(x[k] for k in kcoords)
            ridx = 0
            for k in free:
                ridx = ridx * m + x[k]
            g = groups.get(key)
            if g is None:
                g = groups[key] = [0] * g_size
            g[ridx] = vals[i]
        diag = (g_size - 1) // (m - 1) if m > 1 else 0
        for key in sorted(groups):
            gv = tuple(groups[key])
            if (g_arity, gv) in seen:
                continue
            seen.add((g_arity, gv))
            d = [gv[v * diag] for v in range(m)]
            if meet_fail is None:
                for u in range(m):
                    du = d[u]
                    for v in range(m):
                        if d[meet_t[u][v]] != meet_t[du][d[v]]:
                            meet_fail = (g_index, Witness(x=(u, v), eq="delta-meet"))
                            break
                    if meet_fail is not None:
                        break
            if join_fail is None:
                for u in range(m):
                    du = d[u]
                    for v in range(m):
                        if d[join_t[u][v]] != join_t[du][d[v]]:
                            join_fail = (g_index, Witness(x=(u, v), eq="delta-join"))
                            break
                    if join_fail is not None:
                        break
            g_index += 1
            if meet_fail is not None and join_fail is not None:
                break
    return meet_fail, join_fail


def check_delta_preservation(f, which="both", budget=None):
    """Do the diagonals of f and of all its constant-substitutions preserve
    meet, join, or both?"""
    if which not in ("meet", "join", "both"):
        raise InvalidParamsError(f"which must be 'meet', 'join', or 'both', got {which!r}")
    mf, jf = _delta_failures(f, budget=budget)
    if which == "meet":
        fail = mf
    elif which == "join":
        fail = jf
    else:
        fail = _earlier(mf, jf)
    return (fail is None), (fail[1] if fail else None)


def _earlier(mf, jf):
    if mf is None:
        return jf
    if jf is None:
        return mf
    return mf if mf[0] <= jf[0] else jf


# -- composite conditions ----------------------------------------------------


class _Pieces:
    """Memoized sub-checks for one table, shared across composite conditions."""

    def __init__(self, f, budget=None, scope="interval"):
        self.f = f
        self.budget = budget
        self.scope = scope
        self._memo = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def med(self):
        return self._get("med", lambda: check_median_decomposition(self.f, budget=self.budget))

    def selfcomp(self):
        return self._get("selfcomp", lambda: check_self_composition(self.f, budget=self.budget))

    def hom_meet(self):
        return self._get(
            "hom_meet",
            lambda: check_homogeneity(self.f, "meet", scope=self.scope, budget=self.budget),
        )

    def hom_join(self):
        return self._get(
            "hom_join",
            lambda: check_homogeneity(self.f, "join", scope=self.scope, budget=self.budget),
        )

    def hor_meet(self):
        return self._get("hor_meet", lambda: check_horizontal(self.f, "meet", budget=self.budget))

    def hor_join(self):
        return self._get("hor_join", lambda: check_horizontal(self.f, "join", budget=self.budget))

    def idem(self):
        return self._get("idem", lambda: check_range_idempotency(self.f, budget=self.budget))

    def convex(self):
        return self._get("convex", lambda: check_range_convexity(self.f, budget=self.budget))

    def delta(self):
        return self._get("delta", lambda: _delta_failures(self.f, budget=self.budget))

    def delta_both(self):
        fail = _earlier(*self.delta())
        return (fail is None), (fail[1] if fail else None)

    def delta_join(self):
        fail = self.delta()[1]
        return (fail is None), (fail[1] if fail else None)


# sub-checks per condition, in the order the equivalence states them; the
# tag is attached to untagged witnesses for the report (condition ii has a
# single equation, so its witness stays untagged)
_COMPOSITES = {
    "ii": (("med", None),),
    "iii": (("delta_both", None), ("convex", None), ("selfcomp", "(2)")),
    "iv": (("hom_meet", "(3)"), ("hom_join", "(3d)")),
    "v": (("delta_join", None), ("hom_meet", "(3)"), ("hor_meet", "(4)")),
    "vi": (
        ("delta_both", None),
        ("hor_meet", "(4)"),
        ("hor_join", "(4d)"),
        ("idem", "(5)"),
    ),
}


def _condition_verdict(pieces, cond):
    for piece, tag in _COMPOSITES[cond]:
        ok, w = getattr(pieces, piece)()
        if not ok:
            if w is not None and w.eq is None and tag is not None:
                w = replace(w, eq=tag)
            return False, w
    return True, None


def check_condition(f, cond, budget=None, scope="interval"):
    """Evaluate a single equivalence condition (ii..vi) on a table."""
    if cond not in CONDITION_IDS:
        raise InvalidParamsError(f"unknown condition {cond!r}; expected one of {CONDITION_IDS}")
    return _condition_verdict(_Pieces(f, budget=budget, scope=scope), cond)


def _designated_polynomial_test(f, budget=None):
    """Polynomiality: 0/1 reconstruction on distributive lattices, clone
    closure membership otherwise."""
    lat = f.lattice
    if lat.distributive:
        ok, _ = reconstruct(f, budget=budget)
        return ok
    from .oracle import closure_polynomials  # deferred: oracle imports us

    return f.values in closure_polynomials(lat, f.arity, budget=budget)


def evaluate_all_conditions(f, budget=None, known_polynomial=None, scope="interval"):
    """Full report: monotonicity, conditions ii..vi, and the polynomial verdict.

    Conditions iii..vi assume an order-preserving function (their bound
    interval may be ill-formed otherwise) and are marked as skipped when
    the hypothesis fails; ii is hypothesis-free.  `known_polynomial`
    short-circuits the polynomiality test when the caller already knows it.
    """
    op_ok, op_w = is_order_preserving(f, budget=budget)
    pieces = _Pieces(f, budget=budget, scope=scope)
    entries = {}
    ok, w = _condition_verdict(pieces, "ii")
    entries["ii"] = ConditionEntry(ok, w)
    for cond in ("iii", "iv", "v", "vi"):
        if op_ok:
            ok, w = _condition_verdict(pieces, cond)
            entries[cond] = ConditionEntry(ok, w)
        else:
            entries[cond] = ConditionEntry(None, None)
    if known_polynomial is None:
        polynomial = _designated_polynomial_test(f, budget=budget)
    else:
        polynomial = bool(known_polynomial)
    verdicts = {e.holds for e in entries.values() if e.holds is not None}
    verdicts.add(polynomial)
    return ConditionReport(
        table=f,
        order_preserving=op_ok,
        order_witness=op_w,
        entries=entries,
        polynomial=polynomial,
        consistent=len(verdicts) == 1,
    )


def classify(f, budget=None):
    """Polynomial / term-function / normalized-aggregation classification.

    A term function is a polynomial function under which {bottom}, {top},
    and {bottom, top} are closed; the normalized aggregation functions
    ("sugeno") are the polynomial functions fixing bottom and top.
    """
    lat = f.lattice
    poly = _designated_polynomial_test(f, budget=budget)
    bottom, top = lat.bottom_id, lat.top_id
    sugeno = poly and f.values[0] == bottom and f.values[-1] == top
    term_function = sugeno
    if term_function:
        n = f.arity
        m = lat.m
        for mask in range(1 << n):
            idx = 0
            for k in range(n):
                idx = idx * m + (top if mask >> k & 1 else bottom)
            if f.values[idx] not in (bottom, top):
                term_function = False
                break
    return Classification(polynomial=poly, term_function=term_function, sugeno=sugeno)


# -- report rendering ---------------------------------------------------------


def format_witness(lattice, w):
    parts = []
    if w.x is not None:
        parts.append("x=(" + ",".join(lattice.elements[d].name for d in w.x) + ")")
    if w.k is not None:
        parts.append(f"k={w.k}")
    if w.c is not None:
        parts.append(f"c={lattice.elements[w.c].name}")
    if w.eq is not None:
        parts.append(f"eq={w.eq}")
    return " ".join(parts)


def format_entry(lattice, entry):
    if entry.holds is None:
        return "SKIP(hypothesis)"
    if entry.holds:
        return "PASS"
    if entry.witness is None:
        return "FAIL"
    return f"FAIL at {format_witness(lattice, entry.witness)}"


def report_lines(report, conditions=None):
    """Stable line-oriented rendering of a ConditionReport."""
    lat = report.table.lattice
    lines = []
    if not report.order_preserving:
        suffix = ""
        if report.order_witness is not None:
            suffix = f" at {format_witness(lat, report.order_witness)}"
        lines.append(f"order-preserving: FAIL{suffix}")
    lines.append(f"polynomial: {'PASS' if report.polynomial else 'FAIL'}")
    for cond in conditions or CONDITION_IDS:
        lines.append(f"{cond}: {format_entry(lat, report.entries[cond])}")
    return lines
