"""Structure of an extended modular complex, step by step.

Builds the oriented square (a diamond lattice), then shows the companion
relation, principal semilattices, gates, the diamond step, normal paths,
thickening distances, and the 2-subdivision with its distance identity.
"""

from zeroext import build_complex
from zeroext.metric import WeightedGraph

g = WeightedGraph(
    ["0", "x", "y", "1"],
    {("0", "x"): 1, ("x", "1"): 1, ("0", "y"): 1, ("1", "y"): 1},
)
orient = {
    ("0", "x"): ("0", "x"),
    ("1", "x"): ("x", "1"),
    ("0", "y"): ("0", "y"),
    ("1", "y"): ("y", "1"),
}
cx = build_complex(g, orient, "precedes")

print("vertices:", cx.vertices)
print("relation pairs:", sorted(cx.rel_pairs()))
print()

print("meet(x, y) =", cx.meet("x", "y"), "   join(x, y) =", cx.join("x", "y"))
print("upper gate of y seen from x:", cx.gate("x", "y", "up"))
print("lower gate of y seen from x:", cx.gate("x", "y", "down"))
print("diamond step x toward y:", cx.diamond("x", "y"))
print()

for p, q in [("0", "1"), ("x", "y")]:
    print(f"normal path {p} -> {q}:", cx.normal_path(p, q),
          " thickening distance:", cx.delta_distance(p, q))
print()

lat = cx.principal_semilattice("0", "plus")
print("upper semilattice at 0:", lat.elements)
print("  valuation:", {e: str(lat.v(e)) for e in lat.elements})
print()

sub = cx.two_subdivision()
print("2-subdivision vertices:", [f"[{a},{b}]" for a, b in sub.vertices])
ident = all(
    sub.d(u, v) == cx.d(u[0], v[0]) + cx.d(u[1], v[1])
    for u in sub.vertices
    for v in sub.vertices
)
print("distance identity d*([p,q],[p',q']) = d(p,p') + d(q,q'):", ident)
print()

for radius in range(3):
    ball = sorted(cx.delta_ball("x", radius))
    print(f"thickening ball around x, radius {radius}: {ball} convex={cx.is_convex(ball)}")
