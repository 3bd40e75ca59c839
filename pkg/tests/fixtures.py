"""Shared fixture builders reused across the test modules."""

from fractions import Fraction

from zeroext.complexes import build_complex
from zeroext.metric import WeightedGraph, underlying_graph, validate_metric
from zeroext.orientation import classify
from zeroext.semilattice import validate_valuated_semilattice

C4F = (("a", "c"), ("b", "d"))
C4F1 = (("a", "c"),)


def p3_metric():
    return validate_metric([[0, 1, 2], [1, 0, 1], [2, 1, 0]], ["1", "2", "3"])


def k3_metric():
    return uniform_metric(3, labels=("a", "b", "c"))


def c4_metric():
    return validate_metric(
        [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]],
        ["a", "b", "c", "d"],
    )


def uniform_metric(k, labels=None):
    labels = labels or tuple(f"u{i}" for i in range(k))
    matrix = [[0 if i == j else 1 for j in range(k)] for i in range(k)]
    return validate_metric(matrix, labels)


def p3_graph():
    return underlying_graph(p3_metric())


def p3_complex(rel_kind="precedes"):
    orient = {("1", "2"): ("1", "2"), ("2", "3"): ("2", "3")}
    return build_complex(p3_graph(), orient, rel_kind)


def diamond_graph():
    return WeightedGraph(
        ["0", "x", "y", "1"],
        {("0", "x"): 1, ("x", "1"): 1, ("0", "y"): 1, ("1", "y"): 1},
    )


def diamond_complex(rel_kind="precedes"):
    orient = {
        ("0", "x"): ("0", "x"),
        ("1", "x"): ("x", "1"),
        ("0", "y"): ("0", "y"),
        ("1", "y"): ("y", "1"),
    }
    return build_complex(diamond_graph(), orient, rel_kind)


def c4f1_classified():
    return classify(c4_metric(), C4F1)


def star_semilattice(vp=1, vq=1):
    return validate_valuated_semilattice(
        ["s", "p", "q"],
        [("s", "p"), ("s", "q")],
        {"s": Fraction(0), "p": Fraction(vp), "q": Fraction(vq)},
    )


def diamond_semilattice():
    return validate_valuated_semilattice(
        ["0", "x", "y", "1"],
        [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
        {"0": 0, "x": 1, "y": 1, "1": 2},
    )


def chain_complex(num_edges, rel_kind="precedes"):
    labels = [f"c{i:02d}" for i in range(num_edges + 1)]
    edges = {
        (labels[i], labels[i + 1]): Fraction(1) for i in range(num_edges)
    }
    g = WeightedGraph(labels, edges)
    orient = {(labels[i], labels[i + 1]): (labels[i], labels[i + 1]) for i in range(num_edges)}
    return build_complex(g, orient, rel_kind)
