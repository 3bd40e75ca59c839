"""Solving instances with diamond descent, and the exact iteration law.

A two-facility instance on a path: one facility pulled to each end, a
coupling term between them.  Diamond descent reaches an optimum in a number
of distinct points that equals one plus the thickening distance from the
start to the optimal set, for any start.
"""

from fractions import Fraction
from itertools import product

from zeroext import (
    Instance,
    PairwiseTerm,
    UnaryTerm,
    brute_force_min,
    classify,
    dsda,
    iteration_count_expected,
    sda,
    validate_metric,
)

metric = validate_metric([[0, 1, 2], [1, 0, 1], [2, 1, 0]], ["1", "2", "3"])
cx = classify(metric).complex
inst = Instance(
    metric,
    [],
    2,
    [UnaryTerm(0, "anchor", "1", Fraction(1)), UnaryTerm(1, "anchor", "3", Fraction(1))],
    [PairwiseTerm(0, 1, Fraction(1))],
)

assignment, best = brute_force_min(inst)
print("exhaustive oracle:", assignment, "value", best)
print()

report = dsda(inst, cx, start=("3", "1"))
print("diamond descent from (3,1):")
for k, step in enumerate(report.trace, start=1):
    print(
        f"  round {k}: lower {step.x_minus}  upper {step.x_plus}"
        f"  box point {step.x_diamond}  value {step.value}"
    )
print("final:", report.assignment, "value", report.value,
      "distinct points:", report.iterations)
print()

print("iteration law across every start (predicted == observed):")
for start in product(sorted(metric.labels), repeat=2):
    predicted = iteration_count_expected(cx, start, inst)
    observed = dsda(inst, cx, start=start).iterations
    flag = "" if predicted == observed else "  <-- MISMATCH"
    print(f"  start {start}: predicted {predicted}, observed {observed}{flag}")
print()

r_plain = sda(inst, cx, start=("3", "1"))
print("plain two-sided descent from (3,1): value",
      r_plain.value, "distinct points:", r_plain.iterations)
