import itertools
import random

import pytest

from latpoly import (
    FunctionTable,
    Witness,
    check_condition,
    check_delta_preservation,
    check_homogeneity,
    check_horizontal,
    check_median_decomposition,
    check_range_convexity,
    check_range_idempotency,
    check_self_composition,
    classify,
    delta,
    evaluate_all_conditions,
    is_order_preserving,
    materialize,
    parse_term,
    random_term,
    report_lines,
    substitute,
)
from latpoly.errors import HypothesisViolatedError
from latpoly.oracle import closure_polynomials, iter_monotone_tables


def step_table(chain3):
    """The standard negative control on the 3-chain: 0->0, m->0, 1->1."""
    return FunctionTable(chain3, 1, (0, 0, 2))


def all_unary_tables(lat):
    for values in itertools.product(range(lat.m), repeat=lat.m):
        yield FunctionTable(lat, 1, values)


def preserves(lat, f, op):
    combine = lat.meet if op == "meet" else lat.join
    return all(
        f.values[combine(x, y)] == combine(f.values[x], f.values[y])
        for x in range(lat.m)
        for y in range(lat.m)
    )


# -- monotonicity ---------------------------------------------------------


def test_terms_are_order_preserving(chain3):
    f = materialize(chain3, parse_term("med(x1, x2, 'm')", chain3, 2), 2)
    assert is_order_preserving(f) == (True, None)


def test_antitone_witness(chain2):
    f = FunctionTable(chain2, 1, (1, 0))
    ok, w = is_order_preserving(f)
    assert not ok and w == Witness(x=(0,), k=1)


def test_constant_is_order_preserving(b2):
    f = FunctionTable(b2, 2, (b2.element("a").id,) * 16)
    assert is_order_preserving(f)[0]


# -- median decomposition -------------------------------------------------


def test_median_decomposition_of_median(chain3):
    f = materialize(chain3, parse_term("med(x1, x2, x3)", chain3, 3), 3)
    assert check_median_decomposition(f) == (True, None)


def test_median_decomposition_step_witness(chain3):
    ok, w = check_median_decomposition(step_table(chain3))
    assert not ok and w == Witness(x=(chain3.element("m").id,), k=1)


def test_median_decomposition_constant(b2):
    f = FunctionTable(b2, 2, (b2.element("b").id,) * 16)
    assert check_median_decomposition(f)[0]


def test_median_decomposition_implies_monotone(chain3):
    # every unary table satisfying the decomposition is order-preserving
    for f in all_unary_tables(chain3):
        if check_median_decomposition(f)[0]:
            assert is_order_preserving(f)[0]


# -- composition absorption -------------------------------------------------


def test_self_composition_of_and(chain2):
    f = materialize(chain2, parse_term("x1 & x2", chain2, 2), 2)
    assert check_self_composition(f) == (True, None)


def test_self_composition_alone_is_insufficient(chain3):
    # the step table is idempotent under composition yet not polynomial
    f = step_table(chain3)
    assert check_self_composition(f) == (True, None)
    assert classify(f).polynomial is False


def test_self_composition_witness(chain3):
    m1 = chain3.element("m").id
    f = FunctionTable(chain3, 1, (m1, 2, 2))
    ok, w = check_self_composition(f)
    assert not ok and w == Witness(x=(0,), k=1)


# -- homogeneity -------------------------------------------------------------


def test_homogeneity_of_terms(chain3):
    rng = random.Random(2)
    for _ in range(15):
        f = materialize(chain3, random_term(rng, chain3, 2, 4), 2)
        for direction in ("meet", "join"):
            assert check_homogeneity(f, direction)[0]


def test_homogeneity_step_witness(chain3):
    ok, w = check_homogeneity(step_table(chain3), "meet")
    m1 = chain3.element("m").id
    assert not ok and w == Witness(x=(chain3.top_id,), c=m1)


def test_homogeneity_fails_for_pentagon_polynomial(pentagon):
    f = materialize(pentagon, parse_term("(x1 | 'a') & 'b'", pentagon, 1), 1)
    ok, w = check_homogeneity(f, "meet")
    assert not ok
    assert w.x == (pentagon.element("c").id,)
    assert w.c == pentagon.element("b").id


def test_homogeneity_hypothesis_violated(chain2):
    f = FunctionTable(chain2, 1, (1, 0))
    with pytest.raises(HypothesisViolatedError):
        check_homogeneity(f, "meet")
    # the all-elements scope has no interval hypothesis
    ok, _ = check_homogeneity(f, "meet", scope="all")
    assert not ok


def test_homogeneity_all_scope_is_stronger(chain3):
    # x v m satisfies the interval variant but fails at thresholds below f(0)
    f = materialize(chain3, parse_term("x1 | 'm'", chain3, 1), 1)
    assert check_homogeneity(f, "meet", scope="interval")[0]
    assert not check_homogeneity(f, "meet", scope="all")[0]


# -- horizontal splits ----------------------------------------------------


def brute_horizontal(lat, f, direction):
    sp = lat.point_space(f.arity)
    lo, hi = f.values[0], f.values[-1]
    for x in sp.iter_points():
        for c in lat.interval(lo, hi):
            if direction == "meet":
                low = tuple(lat.meet(d, c) for d in x)
                cut = lat.truncate(x, c, "below")
                if lat.join(f(low), f(cut)) != f(x):
                    return False
            else:
                high = tuple(lat.join(d, c) for d in x)
                cut = lat.truncate(x, c, "above")
                if lat.meet(f(high), f(cut)) != f(x):
                    return False
    return True


def test_horizontal_of_terms(chain3, b2):
    rng = random.Random(4)
    for lat in (chain3, b2):
        for _ in range(15):
            f = materialize(lat, random_term(rng, lat, 2, 4), 2)
            for direction in ("meet", "join"):
                assert check_horizontal(f, direction)[0]


def test_horizontal_step_table_passes(chain3):
    assert check_horizontal(step_table(chain3), "meet") == (True, None)


def test_horizontal_matches_brute_force(chain3):
    # checked against an independently written scan, for all monotone tables
    for values in iter_monotone_tables(chain3, 1):
        f = FunctionTable(chain3, 1, values)
        for direction in ("meet", "join"):
            assert check_horizontal(f, direction)[0] == brute_horizontal(
                chain3, f, direction
            )


# -- range idempotency and convexity -------------------------------------


def test_range_idempotency(chain3):
    rng = random.Random(6)
    for _ in range(10):
        f = materialize(chain3, random_term(rng, chain3, 2, 4), 2)
        assert check_range_idempotency(f)[0]
    ok, w = check_range_idempotency(step_table(chain3))
    assert not ok and w == Witness(c=chain3.element("m").id)


def test_range_convexity(chain3, b2):
    ok, w = check_range_convexity(step_table(chain3))
    assert not ok
    assert w.c == chain3.element("m").id and w.eq == "range-convex"
    constant = FunctionTable(b2, 1, (b2.element("a").id,) * 4)
    assert check_range_convexity(constant) == (True, None)


def test_section_convexity_witness(b2):
    # f(x, y) = x on the square except f(1, 1) = 1 breaks a section range
    a, b, top = b2.element("a").id, b2.element("b").id, b2.top_id
    values = []
    for x in range(4):
        for y in range(4):
            values.append(top if (x, y) == (a, top) else 0 if x == a else x)
    f = FunctionTable(b2, 2, values)
    ok, w = check_range_convexity(f)
    assert not ok


# -- diagonal preservation --------------------------------------------------


def brute_delta_preservation(lat, f, op):
    """Independent scan via the public substitute/delta operations."""
    n = f.arity
    seen = set()
    coords = list(range(1, n + 1))
    for r in range(n):
        for k_set in itertools.combinations(coords, r):
            for a in itertools.product(range(lat.m), repeat=n):
                g = substitute(f, k_set, a)
                if g.values in seen:
                    continue
                seen.add(g.values)
                if not preserves(lat, delta(g), op):
                    return False
    return True


def test_delta_preservation_examples(chain2, b2):
    f = materialize(chain2, parse_term("x1 & x2", chain2, 2), 2)
    assert check_delta_preservation(f, "both") == (True, None)
    identity = FunctionTable(b2, 1, tuple(range(4)))
    assert check_delta_preservation(identity, "both") == (True, None)


def test_delta_preservation_matches_brute_force(b2):
    rng = random.Random(8)
    tables = [tuple(rng.randrange(4) for _ in range(16)) for _ in range(20)]
    for values in tables:
        f = FunctionTable(b2, 2, values)
        for op in ("meet", "join"):
            assert (
                check_delta_preservation(f, op)[0]
                == brute_delta_preservation(b2, f, op)
            )


def test_delta_preservation_of_terms(b2):
    rng = random.Random(9)
    for _ in range(15):
        f = materialize(b2, random_term(rng, b2, 2, 4), 2)
        assert check_delta_preservation(f, "both")[0]


# -- derived laws -------------------------------------------------------------


def test_homogeneity_forces_idempotency_and_full_range(chain4, b2):
    # for monotone f: either homogeneity direction pins the range to the
    # bound interval and makes it idempotent there
    for lat in (chain4, b2):
        for values in iter_monotone_tables(lat, 1):
            f = FunctionTable(lat, 1, values)
            if check_homogeneity(f, "meet")[0] or check_homogeneity(f, "join")[0]:
                assert check_range_idempotency(f)[0]
                assert set(values) == set(lat.interval(values[0], values[-1]))


def test_both_homogeneities_force_delta_preservation(chain4, b2):
    for lat in (chain4, b2):
        for values in iter_monotone_tables(lat, 1):
            f = FunctionTable(lat, 1, values)
            if check_homogeneity(f, "meet")[0] and check_homogeneity(f, "join")[0]:
                d = delta(f)
                assert preserves(lat, d, "meet") and preserves(lat, d, "join")


def test_unary_idempotency_characterization(chain3):
    # polynomial <=> convex range, f(f(x)) = f(x), and both preservations
    poly = closure_polynomials(chain3, 1)
    for f in all_unary_tables(chain3):
        candidate = (
            check_range_convexity(f)[0]
            and check_self_composition(f)[0]
            and preserves(chain3, f, "meet")
            and preserves(chain3, f, "join")
        )
        assert candidate == (f.values in poly)


def test_unary_homogeneity_characterizations(chain3):
    poly = closure_polynomials(chain3, 1)
    for f in all_unary_tables(chain3):
        via_join = preserves(chain3, f, "join") and check_homogeneity(f, "meet")[0]
        via_both = (
            preserves(chain3, f, "meet")
            and preserves(chain3, f, "join")
            and check_range_idempotency(f)[0]
        )
        assert via_join == (f.values in poly)
        assert via_both == (f.values in poly)


# -- full reports -------------------------------------------------------------


def test_report_for_term(chain3):
    f = materialize(chain3, parse_term("med(x1, 'm', x2)", chain3, 2), 2)
    report = evaluate_all_conditions(f)
    assert report.order_preserving and report.polynomial and report.consistent
    assert all(report.entries[c].holds for c in report.entries)


def test_report_for_step_table(chain3):
    report = evaluate_all_conditions(step_table(chain3))
    assert report.order_preserving
    assert not report.polynomial
    assert all(report.entries[c].holds is False for c in report.entries)
    assert report.consistent
    lines = report_lines(report)
    assert "ii: FAIL at x=(m) k=1" in lines
    assert "iv: FAIL at x=(1) c=m eq=(3)" in lines
    assert "v: FAIL at x=(1) c=m eq=(3)" in lines
    assert "vi: FAIL at c=m eq=(5)" in lines
    assert "iii: FAIL at c=m eq=range-convex" in lines


def test_report_skips_hypothesis_for_non_monotone(chain2):
    f = FunctionTable(chain2, 1, (1, 0))
    report = evaluate_all_conditions(f)
    assert not report.order_preserving
    assert report.entries["ii"].holds is False
    for cond in ("iii", "iv", "v", "vi"):
        assert report.entries[cond].holds is None
    assert not report.polynomial
    assert report.consistent  # the computed verdicts all agree: not polynomial
    lines = report_lines(report)
    assert lines[0].startswith("order-preserving: FAIL")
    assert "iii: SKIP(hypothesis)" in lines


def test_report_inconsistent_on_pentagon(pentagon):
    f = materialize(pentagon, parse_term("(x1 | 'a') & 'b'", pentagon, 1), 1)
    report = evaluate_all_conditions(f)
    assert report.polynomial  # closure membership
    assert report.entries["iv"].holds is False
    assert not report.consistent


def test_check_condition_single(chain3):
    ok, w = check_condition(step_table(chain3), "iv")
    assert not ok and w.eq == "(3)"


# -- classification -----------------------------------------------------------


def test_classify_median(chain3):
    f = materialize(chain3, parse_term("med(x1, x2, x3)", chain3, 3), 3)
    c = classify(f)
    assert c.polynomial and c.term_function and c.sugeno


def test_classify_join_with_constant(chain3):
    f = materialize(chain3, parse_term("x1 | 'm'", chain3, 1), 1)
    c = classify(f)
    assert c.polynomial and not c.sugeno and not c.term_function


def test_classify_median_with_constant(chain3):
    # med(x, m, y) fixes bottom and top, so it is a normalized aggregation,
    # but its 0/1 restriction takes the value m, so it is no term function
    f = materialize(chain3, parse_term("med(x1, 'm', x2)", chain3, 2), 2)
    c = classify(f)
    assert c.polynomial and c.sugeno and not c.term_function


def test_classify_on_non_distributive_uses_closure(pentagon):
    f = materialize(pentagon, parse_term("x1 & 'b' | 'a'", pentagon, 1), 1)
    assert classify(f).polynomial
    g = FunctionTable(pentagon, 1, (0, 0, 0, 0, 4))
    # med(0, x, 1) = x differs from g, and g is not in the pentagon's closure
    assert not classify(g).polynomial
