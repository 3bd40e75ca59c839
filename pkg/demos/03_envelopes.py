"""Envelopes and the submodularity inequality on small semilattices.

For each pair of elements, the interval points get planar coordinates; the
upper-right extreme points form the envelope, and the derived breakpoint
weights turn submodularity into one exact inequality per pair.
"""

from fractions import Fraction

from zeroext import (
    check_condition_1prime,
    check_submodular,
    envelope,
    validate_valuated_semilattice,
)
from zeroext.rationals import INF

diamond = validate_valuated_semilattice(
    ["0", "x", "y", "1"],
    [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
    {"0": 0, "x": 1, "y": 1, "1": 2},
)
print("diamond lattice, pair (x, y):")
print(envelope(diamond, "x", "y").render())

star = validate_valuated_semilattice(
    ["s", "p", "q"], [("s", "p"), ("s", "q")], {"s": 0, "p": 1, "q": 2}
)
print("star semilattice with uneven arms, pair (p, q):")
print(envelope(star, "p", "q").render())

print("submodularity of three functions on the star:")
for name, f in [
    ("flat zero", {"s": Fraction(0), "p": Fraction(0), "q": Fraction(0)}),
    ("bottom bump", {"s": Fraction(1), "p": Fraction(0), "q": Fraction(0)}),
    ("bottom dip", {"s": Fraction(0), "p": Fraction(1), "q": Fraction(1)}),
]:
    verdict = check_submodular(star, f)
    print(f"  {name}: {'ok' if verdict is None else verdict.describe()}")
print()

print("domain-closure witness search on the diamond:")
broken = {"0": Fraction(0), "x": Fraction(0), "y": Fraction(0), "1": INF}
verdict = check_condition_1prime(diamond, broken)
print("  top removed from the domain ->",
      "ok" if verdict is None else f"no witness for pair {verdict.pair}")
