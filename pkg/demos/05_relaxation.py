"""The local-marginal relaxation: tight on distance instances, not in general.

First a distance-sum instance whose relaxation is exactly tight and whose
integral minimizer is extracted by iterative fixing; then the classic
negative control, a triangle of equality penalties on two labels, where the
relaxation is strictly below the integral optimum and extraction reports the
failure instead of hiding it.
"""

from fractions import Fraction
from itertools import product

from zeroext import (
    Instance,
    PairwiseTerm,
    TableInstance,
    UnaryTerm,
    blp_value,
    build_blp,
    extract_minimizer,
    validate_metric,
)
from zeroext.errors import TightnessViolated

metric = validate_metric([[0, 1, 2], [1, 0, 1], [2, 1, 0]], ["1", "2", "3"])
inst = Instance(
    metric,
    [],
    2,
    [UnaryTerm(0, "anchor", "1", Fraction(1)), UnaryTerm(1, "anchor", "3", Fraction(1))],
    [PairwiseTerm(0, 1, Fraction(1))],
)
domains = (("1", "2", "3"), ("1", "2", "3"))
lp = build_blp(inst, domains)
print(f"relaxation has {lp.num_vars} variables and {len(lp.rows)} equalities")
print("relaxation value:", blp_value(inst, domains))
print("extracted minimizer:", extract_minimizer(inst, domains))
print()

eq = {("a", "a"): Fraction(1), ("b", "b"): Fraction(1),
      ("a", "b"): Fraction(0), ("b", "a"): Fraction(0)}
gadget = TableInstance(
    3, ({"a": Fraction(0), "b": Fraction(0)},) * 3,
    ((0, 1, eq), (1, 2, eq), (0, 2, eq)),
)
doms = (("a", "b"),) * 3
integral = min(gadget.evaluate(x) for x in product("ab", repeat=3))
print("equality-penalty triangle on two labels:")
print("  relaxation value:", blp_value(gadget, doms), " integral optimum:", integral)
try:
    extract_minimizer(gadget, doms)
except TightnessViolated as exc:
    print("  extraction refused:", exc)
