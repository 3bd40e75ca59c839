"""Tour of the tractability dichotomy.

Walks a few metric spaces through classification: uniform metrics (the
multiway-cut family), the unit 4-cycle with one or two served pairs, and a
weighted tree.  Hard verdicts come with a machine-checkable certificate,
tractable ones with a consistent orientation.
"""

from zeroext import classify, check_certificate, underlying_graph, validate_metric


def uniform(k):
    labels = [f"u{i}" for i in range(k)]
    return validate_metric(
        [[0 if i == j else 1 for j in range(k)] for i in range(k)], labels
    )


def show(title, metric, fset=()):
    print(f"== {title}")
    result = classify(metric, fset)
    if result.tractable:
        print("   TRACTABLE; orientation:")
        for (a, b), (t, h) in sorted(result.orientation.edges.items()):
            print(f"     {t} -> {h}")
        for _, (t, h) in sorted(result.orientation.fpairs.items()):
            print(f"     served pair {t} -> {h}")
    else:
        cert = result.certificate
        print(f"   NP-HARD ({cert.kind})")
        if cert.kind == "not_modular":
            print(f"     median-free triple: {cert.witness}")
        else:
            for s in cert.steps:
                print(f"     {s.src} ~ {s.dst}  via {s.relation} {s.witness}")
            g = underlying_graph(metric)
            print(f"     certificate re-verified: {check_certificate(g, fset, cert) is None}")
    print()


show("uniform metric on 2 points (min cut)", uniform(2))
show("uniform metric on 3 points (multiway cut)", uniform(3))

c4 = validate_metric(
    [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]], ["a", "b", "c", "d"]
)
show("unit 4-cycle, no served pairs", c4)
show("unit 4-cycle, one diagonal served", c4, [("a", "c")])
show("unit 4-cycle, both diagonals served", c4, [("a", "c"), ("b", "d")])

tree = validate_metric(
    [[0, 2, 3], [2, 0, 5], [3, 5, 0]], ["r", "s", "t"]
)
show("weighted star metric", tree, [("s", "t")])

# complete bipartite 3x3: every triple has a median, yet no consistent
# orientation exists; the certificate is a cycle of parallel-side moves
k33_labels = ["a1", "a2", "a3", "b1", "b2", "b3"]
k33 = validate_metric(
    [
        [0 if u == v else (1 if u[0] != v[0] else 2) for v in k33_labels]
        for u in k33_labels
    ],
    k33_labels,
)
show("complete bipartite 3x3 (modular, unorientable)", k33)
