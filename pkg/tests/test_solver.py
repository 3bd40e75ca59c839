import random
from fractions import Fraction

import pytest

from zeroext.corpus import random_instance, random_modular_metric
from zeroext.errors import DomainTooLarge, InfeasibleStart, UnknownLabel
from zeroext.orientation import classify
from zeroext.rationals import INF
from zeroext.solver import (
    Instance,
    PairwiseTerm,
    UnaryTerm,
    brute_force_min,
    default_start,
    dsda,
    iteration_count_expected,
    local_minimize,
    sda,
)

from tests.fixtures import (
    C4F1,
    c4_metric,
    c4f1_classified,
    p3_complex,
    p3_metric,
)

F = Fraction


def chain_instance_2var():
    m = p3_metric()
    return Instance(
        m,
        [],
        2,
        [UnaryTerm(0, "anchor", "1", F(1)), UnaryTerm(1, "anchor", "3", F(1))],
        [PairwiseTerm(0, 1, F(1))],
    )


def anchor_instance_1var():
    return Instance(p3_metric(), [], 1, [UnaryTerm(0, "anchor", "3", F(1))], [])


def test_evaluate_examples():
    inst = Instance(p3_metric(), [], 2, [], [PairwiseTerm(0, 1, F(1))])
    assert inst.evaluate(("1", "3")) == 2
    hard = Instance(p3_metric(), [], 1, [UnaryTerm(0, "hard_anchor", "2", F(1))], [])
    assert hard.evaluate(("1",)) == INF
    assert hard.evaluate(("2",)) == 0
    c4 = c4_metric()
    pair = Instance(
        c4, C4F1, 1, [UnaryTerm(0, "pair", frozenset(("a", "c")), F(1))], []
    )
    assert pair.evaluate(("b",)) == 1
    with pytest.raises(UnknownLabel):
        pair.evaluate(("zz",))


def test_instance_validation():
    with pytest.raises(ValueError):
        Instance(p3_metric(), [], 1, [UnaryTerm(0, "anchor", "1", F(-1))], [])
    with pytest.raises(ValueError):
        Instance(p3_metric(), [], 2, [], [PairwiseTerm(1, 0, F(1))])
    with pytest.raises(ValueError):
        Instance(
            p3_metric(), [], 1, [UnaryTerm(0, "pair", frozenset(("1", "3")), F(1))], []
        )


def test_local_minimize_regions():
    cx = p3_complex("precedes")
    inst = anchor_instance_1var()
    # a maximal point has a singleton upper region
    assert local_minimize(inst, cx, ("3",), "plus", method="brute") == ("3",)
    assert local_minimize(inst, cx, ("1",), "plus", method="brute") == ("3",)
    assert local_minimize(inst, cx, ("1",), "plus", method="blp") == ("3",)
    assert local_minimize(
        inst, cx, ("1",), "box", box=(("1",), ("3",)), method="blp"
    ) == ("3",)


def test_local_minimize_blp_vs_brute_randomized():
    rng = random.Random(1234)
    done = 0
    while done < 100:
        m = random_modular_metric(rng, max_vertices=6)
        res = classify(m, [])
        inst = random_instance(rng, m, [], max_vars=3, max_terms=5)
        try:
            x = default_start(inst)
        except InfeasibleStart:
            continue
        region = rng.choice(["plus", "minus"])
        a = local_minimize(inst, res.complex, x, region, method="blp")
        b = local_minimize(inst, res.complex, x, region, method="brute")
        assert inst.evaluate(a) == inst.evaluate(b)
        assert a == b  # both sides break ties lexicographically
        done += 1


def test_dsda_chain_examples():
    cx = p3_complex("precedes")
    inst = anchor_instance_1var()
    r = dsda(inst, cx, start=("1",))
    assert r.assignment == ("3",) and r.value == 0 and r.iterations == 2
    r0 = dsda(inst, cx, start=("3",))
    assert r0.iterations == 1
    inst2 = chain_instance_2var()
    r2 = dsda(inst2, cx, start=("3", "1"))
    assert r2.value == 2 and r2.iterations == 2
    assert [step.value for step in r2.trace][:1] == [F(2)]


def test_sda_step_counts():
    inst = anchor_instance_1var()
    full = p3_complex("precedes")
    edge = p3_complex("boolean_pair")
    assert sda(inst, full, start=("1",)).iterations == 2
    r = sda(inst, edge, start=("1",))
    assert r.iterations == 3 and r.assignment == ("3",)
    # constant objective stops immediately
    flat = Instance(p3_metric(), [], 1, [], [])
    assert sda(flat, full, start=("2",)).iterations == 1


def test_dsda_infeasible_start():
    inst = Instance(p3_metric(), [], 1, [UnaryTerm(0, "hard_anchor", "2", F(1))], [])
    with pytest.raises(InfeasibleStart):
        dsda(inst, p3_complex("precedes"), start=("1",))
    assert default_start(inst) == ("2",)


def test_brute_force_examples():
    inst = Instance(p3_metric(), [], 2, [], [PairwiseTerm(0, 1, F(1))])
    assert brute_force_min(inst) == (("1", "1"), 0)
    contradictory = Instance(
        p3_metric(),
        [],
        1,
        [
            UnaryTerm(0, "hard_anchor", "1", F(1)),
            UnaryTerm(0, "hard_anchor", "3", F(1)),
        ],
        [],
    )
    assert brute_force_min(contradictory)[1] == INF
    with pytest.raises(DomainTooLarge):
        brute_force_min(chain_instance_2var(), limit=3)


def test_iteration_count_examples():
    cx = p3_complex("precedes")
    inst2 = chain_instance_2var()
    assert iteration_count_expected(cx, ("1", "1"), inst2) == 1
    assert iteration_count_expected(cx, ("3", "1"), inst2) == 2
    inst1 = anchor_instance_1var()
    assert iteration_count_expected(cx, ("1",), inst1) == 2
    assert iteration_count_expected(cx, ("3",), inst1) == 1


def test_iteration_count_matches_runs_exhaustively():
    cx = p3_complex("precedes")
    for inst in (anchor_instance_1var(), chain_instance_2var()):
        labels = sorted(inst.metric.labels)
        from itertools import product

        for start in product(labels, repeat=inst.n):
            expected = iteration_count_expected(cx, start, inst)
            got = dsda(inst, cx, start=start, method="brute").iterations
            assert got == expected, (start, got, expected)


def test_dsda_trace_strictly_decreasing():
    inst = chain_instance_2var()
    cx = p3_complex("precedes")
    r = dsda(inst, cx, start=("3", "1"))
    values = [inst.evaluate(("3", "1"))] + [s.value for s in r.trace]
    for a, b in zip(values, values[1:-1]):
        assert b < a
    assert values[-1] == values[-2] if len(values) > 2 else True


def test_dsda_iterates_are_delta_neighbors():
    rng = random.Random(5150)
    cx = c4f1_classified().complex
    inst = Instance(
        c4_metric(),
        C4F1,
        2,
        [UnaryTerm(0, "anchor", "a", F(1)), UnaryTerm(1, "anchor", "c", F(1))],
        [PairwiseTerm(0, 1, F(1))],
    )
    for start_seed in range(5):
        labels = sorted(c4_metric().labels)
        start = (rng.choice(labels), rng.choice(labels))
        r = dsda(inst, cx, start=start, method="brute")
        chain = [start] + [s.x_diamond for s in r.trace[: r.iterations - 1]]
        for a, b in zip(chain, chain[1:]):
            assert max(cx.delta_distance(a[i], b[i]) for i in range(2)) <= 1


def test_opt_stats_reporting():
    cx = p3_complex("precedes")
    r = dsda(chain_instance_2var(), cx, start=("3", "1"), include_opt_stats=True)
    stats = r.opt_projection
    assert stats is not None
    assert stats.opt_sets == (frozenset("123"), frozenset("123"))
    assert stats.predicted_iterations == r.iterations == 2


def test_degenerate_metrics_end_to_end():
    from zeroext.metric import validate_metric

    one = validate_metric([[0]], ["only"])
    res = classify(one)
    assert res.tractable
    inst = Instance(one, [], 2, [UnaryTerm(0, "anchor", "only", F(3))], [])
    r = dsda(inst, res.complex)
    assert r.assignment == ("only", "only") and r.value == 0 and r.iterations == 1
    assert res.complex.two_subdivision().vertices == (("only", "only"),)

    two = validate_metric([[0, F(3, 2)], [F(3, 2), 0]], ["lo", "hi"])
    res2 = classify(two, [("lo", "hi")])
    assert res2.tractable
    inst2 = Instance(
        two,
        [frozenset(("lo", "hi"))],
        1,
        [UnaryTerm(0, "hard_pair", frozenset(("lo", "hi")), F(1))],
        [],
    )
    assert dsda(inst2, res2.complex).value == 0


def test_dsda_auto_method_falls_back_to_brute():
    cx = p3_complex("precedes")
    inst = chain_instance_2var()
    via_auto = dsda(inst, cx, start=("3", "1"), method="auto", blp_budget=1)
    via_blp = dsda(inst, cx, start=("3", "1"), method="blp")
    assert via_auto.value == via_blp.value
    assert via_auto.iterations == via_blp.iterations
    assert via_auto.assignment == via_blp.assignment


def test_sda_result_is_global_minimum_on_unary_instances():
    rng = random.Random(2718)
    for _ in range(20):
        m = random_modular_metric(rng, max_vertices=7)
        res = classify(m, [])
        inst = random_instance(rng, m, [], max_vars=1, max_terms=4)
        try:
            r = sda(inst, res.complex, method="brute")
        except InfeasibleStart:
            continue
        for q in m.labels:
            assert r.value <= inst.evaluate((q,))


def test_solver_and_count_law_on_cube_relation_complexes():
    # distance-sum objectives stay valid under the coarsest relation too,
    # where boxes are thinner and descents take more rounds
    from zeroext.corpus import random_complex
    from zeroext.metric import validate_metric

    rng = random.Random(777)
    for _ in range(40):
        cx = random_complex(rng, max_vertices=7)
        matrix = [[cx.mu(a, b) for b in cx.labels] for a in cx.labels]
        m = validate_metric(matrix, cx.labels)
        inst = random_instance(rng, m, [], max_vars=2, max_terms=4)
        try:
            start = default_start(inst)
        except InfeasibleStart:
            continue
        r = dsda(inst, cx, start=start, method="brute")
        _, best = brute_force_min(inst)
        assert r.value == best
        assert r.iterations == iteration_count_expected(cx, start, inst)


def test_descent_on_subdivision_cross_checks_direct_solve():
    # the lifted objective on interval pairs doubles the optimum, and a walk
    # over the subdivision complex must land on an interval of minimizers
    from zeroext.metric import validate_metric

    from tests.fixtures import diamond_complex

    for base in (p3_complex("boolean_pair"), diamond_complex("boolean_pair")):
        sub = base.two_subdivision()
        star = sub.as_complex("boolean_pair")
        star_metric = validate_metric(
            [[star.mu(a, b) for b in star.labels] for a in star.labels],
            star.labels,
        )

        # one variable: anchor pulls to a corner
        anchor = base.labels[-1]
        direct = Instance(
            validate_metric(
                [[base.mu(a, b) for b in base.labels] for a in base.labels],
                base.labels,
            ),
            [], 1, [UnaryTerm(0, "anchor", anchor, F(1))], [],
        )
        lifted = Instance(
            star_metric, [], 1,
            [UnaryTerm(0, "anchor", f"[{anchor},{anchor}]", F(1))], [],
        )
        r_direct = sda(direct, base, method="brute")
        r_lift = sda(lifted, star, method="brute")
        assert r_lift.value == 2 * r_direct.value
        lo, hi = r_lift.assignment[0].strip("[]").split(",")
        assert direct.evaluate((lo,)) == direct.evaluate((hi,)) == r_direct.value

        # two variables: coupling plus anchors at both ends
        a0, a1 = base.labels[0], base.labels[-1]
        direct2 = Instance(
            direct.metric, [], 2,
            [UnaryTerm(0, "anchor", a0, F(1)), UnaryTerm(1, "anchor", a1, F(1))],
            [PairwiseTerm(0, 1, F(1))],
        )
        lifted2 = Instance(
            star_metric, [], 2,
            [
                UnaryTerm(0, "anchor", f"[{a0},{a0}]", F(1)),
                UnaryTerm(1, "anchor", f"[{a1},{a1}]", F(1)),
            ],
            [PairwiseTerm(0, 1, F(1))],
        )
        v_direct = brute_force_min(direct2)[1]
        r_lift2 = dsda(lifted2, star, method="brute")
        assert r_lift2.value == 2 * v_direct
        pair_lo = tuple(r_lift2.assignment[i].strip("[]").split(",")[0] for i in (0, 1))
        pair_hi = tuple(r_lift2.assignment[i].strip("[]").split(",")[1] for i in (0, 1))
        assert direct2.evaluate(pair_lo) == direct2.evaluate(pair_hi) == v_direct


def test_solver_matches_oracle_on_f_instances():
    rng = random.Random(31337)
    res = c4f1_classified()
    m = c4_metric()
    for _ in range(25):
        inst = random_instance(rng, m, C4F1, max_vars=3, max_terms=5)
        try:
            r1 = dsda(inst, res.complex, method="brute")
        except InfeasibleStart:
            continue
        r2 = sda(inst, res.complex, method="brute")
        _, best = brute_force_min(inst)
        assert r1.value == r2.value == best
