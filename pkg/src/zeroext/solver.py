"""Instance model, steepest-descent drivers, and the brute-force oracle.

An Instance is a sum of weighted pairwise distance terms plus unary terms:
distance-to-anchor, distance-to-a-pair (min over the two anchors), and their
hard indicator variants.  The descent drivers move through the complex
neighborhoods: plain descent alternates best lower / upper neighborhood
points, the diamond variant jumps to the best point of the box spanned by
both, which pins the number of iterations to a thickening distance.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .blp import extract_minimizer
from .errors import DomainTooLarge, InfeasibleStart, InternalInconsistency
from .rationals import INF, as_fraction, ext_scale

DEFAULT_BRUTE_LIMIT = 10**6
DEFAULT_BLP_BUDGET = 5000


def brute_limit_from_env(default=DEFAULT_BRUTE_LIMIT):
    raw = os.environ.get("ZEROEXT_BRUTE_LIMIT")
    return int(raw) if raw else default


@dataclass(frozen=True)
class UnaryTerm:
    """weight times distance-to-target, or a weighted hard indicator.

    kind: "anchor" (target a label), "pair" (target a 2-label frozenset in F),
    "hard_anchor", "hard_pair".
    """

    var: int
    kind: str
    target: object
    weight: Fraction


@dataclass(frozen=True)
class PairwiseTerm:
    i: int
    j: int
    weight: Fraction


class Instance:
    """Objective over assignments of n variables to metric points."""

    def __init__(self, metric, fset, n, unary_terms, pairwise_terms):
        self.metric = metric
        self.fset = frozenset(frozenset(p) for p in fset)
        for pair in self.fset:
            if len(pair) != 2:
                raise ValueError(f"F member {set(pair)} is not a pair")
            for lab in pair:
                metric.d(lab, lab)
        self.n = int(n)
        if self.n < 1:
            raise ValueError("instance needs at least one variable")
        unary = []
        for t in unary_terms:
            var, kind, target, weight = t.var, t.kind, t.target, as_fraction(t.weight)
            if not 0 <= var < self.n:
                raise ValueError(f"variable {var} out of range")
            if weight < 0:
                raise ValueError("negative weight")
            if kind in ("anchor", "hard_anchor"):
                metric.d(target, target)
            elif kind in ("pair", "hard_pair"):
                target = frozenset(target)
                if target not in self.fset:
                    raise ValueError(f"pair target {set(target)} not in F")
            else:
                raise ValueError(f"unknown unary kind {kind!r}")
            unary.append(UnaryTerm(var, kind, target, weight))
        self.unary = tuple(unary)
        pairwise = []
        for t in pairwise_terms:
            i, j, weight = int(t.i), int(t.j), as_fraction(t.weight)
            if not (0 <= i < j < self.n):
                raise ValueError(f"pairwise scope ({i},{j}) invalid")
            if weight < 0:
                raise ValueError("negative weight")
            pairwise.append(PairwiseTerm(i, j, weight))
        self.pairwise = tuple(pairwise)
        self._unary_tables = None

    def unary_tables(self):
        """Per-variable label -> extended cost, all unary terms folded in."""
        if self._unary_tables is None:
            tables = []
            for i in range(self.n):
                row = {}
                for lab in self.metric.labels:
                    total = Fraction(0)
                    for t in self.unary:
                        if t.var != i:
                            continue
                        if t.kind == "anchor":
                            c = self.metric.d(lab, t.target)
                        elif t.kind == "pair":
                            c = min(self.metric.d(lab, u) for u in t.target)
                        elif t.kind == "hard_anchor":
                            c = Fraction(0) if lab == t.target else INF
                        else:
                            c = Fraction(0) if lab in t.target else INF
                        term = ext_scale(t.weight, c)
                        if term == INF:
                            total = INF
                            break
                        total += term
                    row[lab] = total
                tables.append(row)
            self._unary_tables = tuple(tables)
        return self._unary_tables

    def cost_tables(self, domains):
        full = self.unary_tables()
        unary = tuple({a: full[i][a] for a in domains[i]} for i in range(self.n))
        binary = tuple(
            (
                t.i,
                t.j,
                {
                    (a, b): t.weight * self.metric.d(a, b)
                    for a in domains[t.i]
                    for b in domains[t.j]
                },
            )
            for t in self.pairwise
        )
        return unary, binary

    def evaluate(self, assignment):
        assignment = tuple(assignment)
        if len(assignment) != self.n:
            raise ValueError("assignment length mismatch")
        for lab in assignment:
            self.metric.d(lab, lab)
        tables = self.unary_tables()
        total = Fraction(0)
        for i in range(self.n):
            c = tables[i][assignment[i]]
            if c == INF:
                return INF
            total += c
        for t in self.pairwise:
            total += t.weight * self.metric.d(assignment[t.i], assignment[t.j])
        return total


@dataclass(frozen=True)
class TraceStep:
    x_minus: tuple
    x_plus: tuple
    x_diamond: tuple
    value: object


@dataclass(frozen=True)
class OptStats:
    opt_sets: tuple
    predicted_iterations: int


@dataclass(frozen=True)
class SolveReport:
    assignment: tuple
    value: object
    iterations: int
    trace: tuple = ()
    opt_projection: OptStats | None = None


def default_start(inst):
    """Lexicographically least assignment passing all hard unary filters."""
    tables = inst.unary_tables()
    start = []
    for i in range(inst.n):
        feasible = [a for a in sorted(inst.metric.labels) if tables[i][a] != INF]
        if not feasible:
            raise InfeasibleStart(f"variable {i} has no finite-cost label")
        start.append(feasible[0])
    return tuple(start)


def _region_domains(inst, cx, x, region, box):
    if region == "plus":
        return tuple(tuple(sorted(cx.lplus(x[i]))) for i in range(inst.n))
    if region == "minus":
        return tuple(tuple(sorted(cx.lminus(x[i]))) for i in range(inst.n))
    if region == "box":
        lo, hi = box
        return tuple(tuple(sorted(cx.box(lo[i], hi[i]))) for i in range(inst.n))
    raise ValueError(f"unknown region {region!r}")


def _brute_argmin(inst, domains, limit):
    size = 1
    for d in domains:
        size *= len(d)
    if size > limit:
        raise DomainTooLarge(size, limit)
    tables = inst.unary_tables()
    pairs = [(t.i, t.j, t.weight) for t in inst.pairwise]
    d = inst.metric.d
    best = None
    best_x = None
    for x in product(*domains):
        total = Fraction(0)
        bad = False
        for i in range(inst.n):
            c = tables[i][x[i]]
            if c == INF:
                bad = True
                break
            total += c
        if bad:
            continue
        for i, j, w in pairs:
            total += w * d(x[i], x[j])
        if best is None or total < best:
            best = total
            best_x = x
    return best_x, best


def local_minimize(
    inst,
    cx,
    x,
    region,
    method="blp",
    box=None,
    brute_limit=DEFAULT_BRUTE_LIMIT,
    on_subproblem=None,
):
    """Exact minimizer of the instance restricted to a neighborhood region.

    region is "plus", "minus", or "box" (with box=(lower, upper) assignments);
    method "brute" enumerates the product domain, "blp" solves and rounds the
    relaxation.  Both return the lexicographically least minimizer.
    """
    domains = _region_domains(inst, cx, x, region, box)
    if on_subproblem is not None:
        on_subproblem(domains)
    if method == "brute":
        best_x, best = _brute_argmin(inst, domains, brute_limit)
        if best_x is None:
            raise InfeasibleStart("restriction has no finite-cost point")
        return best_x
    if method == "blp":
        return extract_minimizer(inst, domains)
    raise ValueError(f"unknown method {method!r}")


def _pick_method(inst, domains, method, blp_budget):
    if method in ("blp", "brute"):
        return method
    size = sum(len(d) for d in domains)
    for t in inst.pairwise:
        size += len(domains[t.i]) * len(domains[t.j])
    return "blp" if size <= blp_budget else "brute"


def _local(inst, cx, x, region, box, method, brute_limit, blp_budget, on_subproblem):
    domains = _region_domains(inst, cx, x, region, box)
    if on_subproblem is not None:
        on_subproblem(domains)
    chosen = _pick_method(inst, domains, method, blp_budget)
    if chosen == "brute":
        best_x, _ = _brute_argmin(inst, domains, brute_limit)
        if best_x is None:
            raise InfeasibleStart("restriction has no finite-cost point")
        return best_x
    return extract_minimizer(inst, domains)


def dsda(
    inst,
    cx,
    start=None,
    method="auto",
    brute_limit=DEFAULT_BRUTE_LIMIT,
    blp_budget=DEFAULT_BLP_BUDGET,
    with_trace=True,
    include_opt_stats=False,
    on_subproblem=None,
):
    """Diamond steepest descent: jump to the best point of the two-sided box.

    Each round finds the best points of the lower and upper neighborhoods of
    the current iterate, then the best point of the box they span; stops when
    the value no longer drops.  Returns a global minimizer.
    """
    x = tuple(start) if start is not None else default_start(inst)
    start_point = x
    fx = inst.evaluate(x)
    if fx == INF:
        raise InfeasibleStart(f"start {x} has infinite value")
    trace = []
    points = 1
    while True:
        xm = _local(inst, cx, x, "minus", None, method, brute_limit, blp_budget, on_subproblem)
        xp = _local(inst, cx, x, "plus", None, method, brute_limit, blp_budget, on_subproblem)
        xd = _local(
            inst, cx, x, "box", (xm, xp), method, brute_limit, blp_budget, on_subproblem
        )
        fd = inst.evaluate(xd)
        if with_trace:
            trace.append(TraceStep(xm, xp, xd, fd))
        if fd == fx:
            break
        if fd > fx:
            raise InternalInconsistency("descent step increased the value")
        x, fx = xd, fd
        points += 1
    stats = None
    if include_opt_stats:
        stats = _opt_stats(inst, cx, start_point, brute_limit)
    return SolveReport(x, fx, points, tuple(trace), stats)


def sda(
    inst,
    cx,
    start=None,
    method="auto",
    brute_limit=DEFAULT_BRUTE_LIMIT,
    blp_budget=DEFAULT_BLP_BUDGET,
    with_trace=True,
    on_subproblem=None,
):
    """Plain steepest descent over lower / upper neighborhoods."""
    x = tuple(start) if start is not None else default_start(inst)
    fx = inst.evaluate(x)
    if fx == INF:
        raise InfeasibleStart(f"start {x} has infinite value")
    trace = []
    points = 1
    while True:
        ym = _local(inst, cx, x, "minus", None, method, brute_limit, blp_budget, on_subproblem)
        yp = _local(inst, cx, x, "plus", None, method, brute_limit, blp_budget, on_subproblem)
        fm, fp = inst.evaluate(ym), inst.evaluate(yp)
        if fm < fp or (fm == fp and ym <= yp):
            y, fy = ym, fm
        else:
            y, fy = yp, fp
        if with_trace:
            trace.append(TraceStep(ym, yp, y, fy))
        if fy == fx:
            break
        if fy > fx:
            raise InternalInconsistency("descent step increased the value")
        x, fx = y, fy
        points += 1
    return SolveReport(x, fx, points, tuple(trace))


def brute_force_min(inst, limit=DEFAULT_BRUTE_LIMIT):
    """Exhaustive exact minimum; lexicographically least argmin.

    Returns (assignment, value); value INF means the instance is infeasible
    and the assignment is the lexicographically least overall.
    """
    labels = tuple(sorted(inst.metric.labels))
    size = len(labels) ** inst.n
    if size > limit:
        raise DomainTooLarge(size, limit)
    domains = tuple(labels for _ in range(inst.n))
    best_x, best = _brute_argmin(inst, domains, limit)
    if best_x is None:
        return tuple(labels[0] for _ in range(inst.n)), INF
    return best_x, best


def minimizer_set(inst, limit=DEFAULT_BRUTE_LIMIT):
    """All optimal assignments, enumerated exhaustively."""
    labels = tuple(sorted(inst.metric.labels))
    size = len(labels) ** inst.n
    if size > limit:
        raise DomainTooLarge(size, limit)
    tables = inst.unary_tables()
    pairs = [(t.i, t.j, t.weight) for t in inst.pairwise]
    d = inst.metric.d
    best = None
    argmin = []
    for x in product(*([labels] * inst.n)):
        total = Fraction(0)
        bad = False
        for i in range(inst.n):
            c = tables[i][x[i]]
            if c == INF:
                bad = True
                break
            total += c
        if bad:
            continue
        for i, j, w in pairs:
            total += w * d(x[i], x[j])
        if best is None or total < best:
            best = total
            argmin = [x]
        elif total == best:
            argmin.append(x)
    return tuple(argmin), (INF if best is None else best)


def iteration_count_expected(cx, start, inst, limit=DEFAULT_BRUTE_LIMIT):
    """Exact predicted number of distinct descent points from this start.

    One plus the thickening distance, in the product complex, from the start
    to the set of global minimizers (componentwise maximum of per-coordinate
    thickening distances, minimized over the optimal assignments).
    """
    argmin, best = minimizer_set(inst, limit)
    if best == INF:
        raise InfeasibleStart("instance has no finite-cost assignment")
    start = tuple(start)
    dist = min(
        max(cx.delta_distance(start[i], opt[i]) for i in range(inst.n))
        for opt in argmin
    )
    return 1 + dist


def opt_projections(inst, limit=DEFAULT_BRUTE_LIMIT):
    """Per-coordinate projections of the optimal set."""
    argmin, best = minimizer_set(inst, limit)
    if best == INF:
        raise InfeasibleStart("instance has no finite-cost assignment")
    return tuple(frozenset(opt[i] for opt in argmin) for i in range(inst.n))


def _opt_stats(inst, cx, start, limit):
    try:
        argmin, best = minimizer_set(inst, limit)
    except DomainTooLarge:
        return None
    if best == INF:
        return None
    projections = tuple(frozenset(opt[i] for opt in argmin) for i in range(inst.n))
    dist = min(
        max(cx.delta_distance(start[i], opt[i]) for i in range(inst.n))
        for opt in argmin
    )
    return OptStats(projections, 1 + dist)
