"""Executable invariant suites over a classified problem.

Each suite returns (name, passed, detail) triples; detail carries the first
witness on failure.  The CLI surfaces these, and the test suite reuses them
on fixtures and on randomly generated complexes.
"""

from itertools import combinations

from .complexes import check_admissible_relation
from .orientation import verify_orientation
from .rationals import fmt
from .semilattice import classify_pair, envelope
from .solver import (
    DEFAULT_BRUTE_LIMIT,
    brute_force_min,
    default_start,
    dsda,
    iteration_count_expected,
    local_minimize,
    sda,
)


def _result(name, witness=None):
    return (name, witness is None, "" if witness is None else str(witness))


def structure_suite(cx, g=None, fset=(), orientation=None):
    """Distance, gate, diamond, ball and subdivision invariants of a complex."""
    out = []
    if orientation is not None and g is not None:
        out.append(_result("orientation-admissible", verify_orientation(g, fset, orientation)))
    out.append(_result("relation-admissible", check_admissible_relation(cx, cx.rel_pairs())))

    sub = cx.two_subdivision()
    bad = None
    for u in sub.vertices:
        for v in sub.vertices:
            if sub.d(u, v) != cx.d(u[0], v[0]) + cx.d(u[1], v[1]):
                bad = ("d*", u, v)
                break
            if sub.mu(u, v) != cx.mu(u[0], v[0]) + cx.mu(u[1], v[1]):
                bad = ("mu*", u, v)
                break
        if bad:
            break
    out.append(_result("subdivision-distance-identity", bad))

    bad = None
    for p in cx.labels:
        for q in cx.labels:
            up = cx.gate(p, q, "up")
            down = cx.gate(p, q, "down")
            if not (cx.rel(down, p) and cx.rel(p, up)):
                bad = ("gates-not-related", p, q)
                break
            if not cx.is_shortest_subpath((p, up, q)) or not cx.is_shortest_subpath((p, down, q)):
                bad = ("gate-not-between", p, q)
                break
            members = set(cx.interval(p, q)) & set(cx.lplus(p))
            if members != set(cx.interval(p, up)):
                bad = ("gate-interval-identity", p, q)
                break
            dia = cx.diamond(p, q)
            if cx.meet(p, dia) != down or cx.join(p, dia) != up:
                bad = ("diamond-meet-join", p, q)
                break
            if p != q and dia == p:
                bad = ("diamond-stalled", p, q)
                break
        if bad:
            break
    out.append(_result("gates-and-diamond", bad))

    bad = None
    for p in cx.labels:
        for q in cx.labels:
            if len(cx.normal_path(p, q)) - 1 != cx.delta_distance(p, q):
                bad = ("normal-path-length", p, q)
                break
        if bad:
            break
    out.append(_result("normal-path-length", bad))

    bad = None
    for p in cx.labels:
        radius = 0
        while cx.delta_ball(p, radius) != frozenset(cx.labels):
            if not cx.is_convex(cx.delta_ball(p, radius)):
                bad = ("ball-not-convex", p, radius)
                break
            radius += 1
        if bad:
            break
    out.append(_result("delta-balls-convex", bad))

    bad = None
    for p in cx.labels:
        for q in cx.labels:
            if not cx.rel(p, q):
                continue
            for a in cx.labels:
                for b in cx.labels:
                    if (
                        cx.is_shortest_subpath((p, a, b))
                        and cx.is_shortest_subpath((a, b, q))
                        and not cx.rel(a, b)
                    ):
                        bad = (p, q, a, b)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    out.append(_result("rectangle-relation", bad))

    bad = None
    ops = {
        "up": lambda p, q: cx.gate(p, q, "up"),
        "down": lambda p, q: cx.gate(p, q, "down"),
        "diamond": cx.diamond,
    }
    for name, op in ops.items():
        for p in cx.labels:
            for q in cx.labels:
                pq = op(p, q)
                for u in cx.interval(pq, q):
                    if cx.is_shortest_subpath((p, pq, u, q)) and op(p, u) != pq:
                        bad = (name, p, q, u)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    out.append(_result("persistence", bad))

    bad = None
    for p in cx.labels:
        for x in cx.labels:
            if x != p and not cx.are_diamond_neighbors(p, x):
                continue
            for q in cx.labels:
                if not cx.is_shortest_subpath((x, cx.diamond(p, q), q)):
                    bad = (p, x, q)
                    break
            if bad:
                break
        if bad:
            break
    out.append(_result("retraction", bad))

    bad = None
    convex_sets = [cx.lplus(p) for p in cx.labels] + [
        tuple(sorted(cx.interval(p, q)))
        for p, q in combinations(cx.labels, 2)
        if cx.leq(p, q)
    ]
    for target in convex_sets:
        for p in cx.labels:
            for q in cx.labels:
                if cx.rel(p, q):
                    pp = cx.project(target, p)
                    qq = cx.project(target, q)
                    if not cx.rel(pp, qq):
                        bad = (target, p, q)
                        break
            if bad:
                break
        if bad:
            break
    out.append(_result("projection-preserves-relation", bad))
    return out


def semilattice_suite(cx):
    """Envelope and valuation invariants of every principal semilattice."""
    out = []
    bad_val = None
    bad_env = None
    bad_cls = None
    for base in cx.labels:
        for sigma in ("plus", "minus", "lstar"):
            lat = cx.principal_semilattice(base, sigma)
            for p in lat.elements:
                for q in lat.elements:
                    s = lat.meet(p, q)
                    if lat.mu(p, q) != lat.vdiff(s, p) + lat.vdiff(s, q):
                        bad_val = bad_val or (base, sigma, p, q)
                        continue
                    rep = envelope(lat, p, q)
                    cp = rep.coords[p]
                    cq = rep.coords[q]
                    if cp != (lat.vdiff(s, p), 0) or cq != (0, lat.vdiff(s, q)):
                        bad_env = bad_env or (base, sigma, p, q, "endpoint-coords")
                        continue
                    total = sum(
                        (lat.mu(a, b) for a, b in zip(rep.envelope, rep.envelope[1:])),
                        lat.mu(p, p),
                    )
                    if total != lat.mu(p, q):
                        bad_env = bad_env or (base, sigma, p, q, "not-shortest")
                        continue
                    if sum(rep.weights) != 1:
                        bad_env = bad_env or (base, sigma, p, q, "weights")
                        continue
                    try:
                        classify_pair(lat, p, q)
                    except Exception as exc:  # surfaced as witness
                        bad_cls = bad_cls or (base, sigma, p, q, str(exc))
    out.append(_result("meet-split-distance", bad_val))
    out.append(_result("envelope-shape", bad_env))
    out.append(_result("pair-classification-consistent", bad_cls))
    return out


def solver_suite(inst, cx, brute_limit=DEFAULT_BRUTE_LIMIT):
    """Descent vs oracle equalities on the problem's own instance."""
    out = []
    try:
        start = default_start(inst)
    except Exception as exc:
        return [("solver-feasible-start", False, str(exc))]
    _, best = brute_force_min(inst, brute_limit)
    r_dsda = dsda(inst, cx, start=start, method="brute", brute_limit=brute_limit)
    r_sda = sda(inst, cx, start=start, method="brute", brute_limit=brute_limit)
    ok = r_dsda.value == r_sda.value == best
    out.append(
        (
            "descent-matches-oracle",
            ok,
            ""
            if ok
            else f"dsda {fmt(r_dsda.value)} sda {fmt(r_sda.value)} brute {fmt(best)}",
        )
    )
    expected = iteration_count_expected(cx, start, inst, brute_limit)
    out.append(
        (
            "iteration-count-exact",
            r_dsda.iterations == expected,
            "" if r_dsda.iterations == expected else f"{r_dsda.iterations} != {expected}",
        )
    )
    mismatch = None
    for region in ("minus", "plus"):
        via_blp = local_minimize(inst, cx, start, region, method="blp")
        via_brute = local_minimize(inst, cx, start, region, method="brute")
        if inst.evaluate(via_blp) != inst.evaluate(via_brute):
            mismatch = (region, via_blp, via_brute)
            break
    out.append(_result("local-blp-vs-brute", mismatch))
    return out


def run_suites(inst, cx, g=None, fset=(), orientation=None, which="all"):
    results = []
    if which in ("structure", "all"):
        results += structure_suite(cx, g, fset, orientation)
    if which in ("semilattice", "all"):
        results += semilattice_suite(cx)
    if which in ("solver", "all"):
        results += solver_suite(inst, cx)
    return results
