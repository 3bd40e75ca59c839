import random

from zeroext.corpus import random_f, random_modular_graph
from zeroext.metric import underlying_graph
from zeroext.orientation import (
    Orientation,
    OrientationConflict,
    admissible_orientation,
    check_certificate,
    classify,
    hardness_certificate,
    has_reversal_path,
    reversal_path,
    tuple_graph,
    verify_orientation,
)

from tests.fixtures import C4F, C4F1, c4_metric, k3_metric, p3_metric
from tests.oracles import exhaustive_orientation_exists


def c4_graph():
    return underlying_graph(c4_metric())


def test_c4_orientation_matches_expected():
    o = admissible_orientation(c4_graph(), [])
    assert o.edges == {
        ("a", "b"): ("a", "b"),
        ("a", "d"): ("a", "d"),
        ("b", "c"): ("b", "c"),
        ("c", "d"): ("d", "c"),
    }
    assert verify_orientation(c4_graph(), frozenset(), o) is None


def test_c4f1_orientation_routes_both_paths():
    g = c4_graph()
    o = admissible_orientation(g, C4F1)
    assert o.fpairs == {("a", "c"): ("a", "c")}
    # both shortest a-c paths run along the orientation
    assert o.points("a", "b") and o.points("b", "c")
    assert o.points("a", "d") and o.points("d", "c")
    assert verify_orientation(g, C4F1, o) is None


def test_c4f_conflict_core():
    conflict = admissible_orientation(c4_graph(), C4F)
    assert isinstance(conflict, OrientationConflict)
    parity = sum(c.parity for c in conflict.cycle) % 2
    assert parity == 1  # a genuinely odd constraint cycle
    touched = {c.elem_a for c in conflict.cycle} | {c.elem_b for c in conflict.cycle}
    assert ("fpair", "a", "c") in touched and ("fpair", "b", "d") in touched


def test_classify_fixtures():
    assert classify(p3_metric()).tractable
    k3 = classify(k3_metric())
    assert not k3.tractable
    assert k3.certificate.kind == "not_modular"
    assert k3.certificate.witness == ("a", "b", "c")
    c4f = classify(c4_metric(), C4F)
    assert not c4f.tractable
    assert c4f.certificate.kind == "not_f_orientable"
    assert classify(c4_metric(), C4F1).tractable


def test_certificate_steps_verify_and_reverse():
    g = c4_graph()
    cert = hardness_certificate(g, C4F)
    assert check_certificate(g, C4F, cert) is None
    first, last = cert.steps[0].src, cert.steps[-1].dst
    assert (first[1], first[0]) == last
    # tampering breaks verification
    from zeroext.orientation import CertStep, HardnessCertificate

    tampered = HardnessCertificate(
        cert.kind,
        steps=(CertStep(("a", "b"), ("c", "d"), "parallel", ("a", "b", "c", "d")),)
        + cert.steps[1:],
    )
    assert check_certificate(g, C4F, tampered) is not None


def test_tuple_graph_on_plain_c4():
    g = c4_graph()
    adj = tuple_graph(g, [])
    # parallel pairs only: each edge tuple relates to its opposite side,
    # traversed the same way around the square
    assert all(rel == "parallel" for nbrs in adj.values() for _, rel, _ in nbrs)
    assert {t for t, _, _ in adj[("a", "b")]} == {("d", "c")}
    assert reversal_path(g, []) is None
    assert reversal_path(g, C4F1) is None
    assert reversal_path(g, C4F) is not None


def test_not_modular_certificate_checks():
    from zeroext.orientation import HardnessCertificate

    cert = HardnessCertificate("not_modular", witness=("a", "b", "c"))
    assert check_certificate(k3_metric(), (), cert) is None
    bad = HardnessCertificate("not_modular", witness=("a", "a", "b"))
    assert check_certificate(k3_metric(), (), bad) is not None


def _k33_graph():
    from zeroext.metric import validate_metric

    labels = ["a1", "a2", "a3", "b1", "b2", "b3"]
    matrix = [
        [0 if u == v else (1 if u[0] != v[0] else 2) for v in labels]
        for u in labels
    ]
    return underlying_graph(validate_metric(matrix, labels))


def test_exhaustive_search_matches_on_fixture_family():
    g = c4_graph()
    for fset in ([], C4F1, C4F, [("a", "b")], [("b", "d")]):
        expected = exhaustive_orientation_exists(g, fset)
        got = not isinstance(admissible_orientation(g, fset), OrientationConflict)
        assert got == expected
        assert got == (not has_reversal_path(g, fset))
    k33 = _k33_graph()
    assert not exhaustive_orientation_exists(k33, [])
    assert isinstance(admissible_orientation(k33, []), OrientationConflict)


def test_parity_duality_randomized():
    rng = random.Random(20240817)
    hard_seen = 0
    for _ in range(60):
        g = random_modular_graph(rng, max_vertices=9)
        fset = random_f(rng, g.labels, max_pairs=3)
        verdict = not isinstance(admissible_orientation(g, fset), OrientationConflict)
        assert verdict == (not has_reversal_path(g, fset))
        if not verdict:
            hard_seen += 1
            cert = hardness_certificate(g, fset)
            assert check_certificate(g, fset, cert) is None
    assert hard_seen >= 1


def test_k33_modular_but_not_orientable():
    # complete bipartite 3x3: every triple has a median, yet the parallel
    # constraints on the three disjoint cross edges close an odd cycle
    labels = ["a1", "a2", "a3", "b1", "b2", "b3"]

    def dist(u, v):
        if u == v:
            return 0
        return 1 if u[0] != v[0] else 2

    from zeroext.metric import is_modular, validate_metric

    m = validate_metric([[dist(u, v) for v in labels] for u in labels], labels)
    assert is_modular(m)
    res = classify(m)
    assert not res.tractable
    assert res.certificate.kind == "not_orientable"
    assert all(s.relation == "parallel" for s in res.certificate.steps)
    g = underlying_graph(m)
    assert check_certificate(g, (), res.certificate) is None


def test_classify_iff_modular_and_orientable():
    # verdicts match modularity plus a literal orientation search on a mixed
    # bag of metrics, some modular and some not
    from zeroext.corpus import random_modular_metric
    from zeroext.metric import WeightedGraph, is_modular, metric_from_graph

    rng = random.Random(14142)
    metrics = [k3_metric(), p3_metric(), c4_metric(), _k33_metric()]
    for _ in range(10):
        metrics.append(random_modular_metric(rng, max_vertices=7))
    for _ in range(10):
        # skewed cycle weights break modularity without breaking the axioms
        w = [rng.choice([1, 2, 3]) for _ in range(4)]
        g = WeightedGraph(
            ["a", "b", "c", "d"],
            {("a", "b"): w[0], ("b", "c"): w[1], ("c", "d"): w[2], ("a", "d"): w[3]},
        )
        metrics.append(metric_from_graph(g))
    nonmodular_seen = 0
    for m in metrics:
        res = classify(m)
        modular = bool(is_modular(m))
        if not modular:
            nonmodular_seen += 1
            assert not res.tractable
            continue
        g = underlying_graph(m)
        if len(g.edges) <= 14:
            assert res.tractable == exhaustive_orientation_exists(g, [])
    assert nonmodular_seen >= 2


def _k33_metric():
    from zeroext.metric import validate_metric

    labels = ["a1", "a2", "a3", "b1", "b2", "b3"]
    return validate_metric(
        [
            [0 if u == v else (1 if u[0] != v[0] else 2) for v in labels]
            for u in labels
        ],
        labels,
    )


def test_deterministic_output():
    g = c4_graph()
    assert admissible_orientation(g, C4F1) == admissible_orientation(g, C4F1)
