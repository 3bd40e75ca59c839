"""Valuated modular semilattices and the submodularity calculus.

Every pair (p, q) of a valuated modular semilattice gets planar coordinates
for the points of its metric interval; the upper-right extreme points of the
coordinate hull (the envelope) and the derived breakpoint weights turn
submodularity into finitely many exact rational inequalities.  The checkers
here evaluate those inequalities directly, via the reduced special-pair
forms, and lift them to functions on complexes.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadValuation,
    InternalInconsistency,
    NotInInterval,
    NotMeetSemilattice,
    NotModularSemilattice,
    UnknownLabel,
)
from .rationals import INF, as_fraction, ext_scale, fmt


class ValuatedSemilattice:
    """Finite meet-semilattice with modular ideals and a modular valuation.

    Elements are hashable, mutually comparable objects (labels or tuples).
    Construct through validate_valuated_semilattice.
    """

    def __init__(self, elements, leq, meet, join, valuation, mu, rank, hasse):
        self.elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        self._leq = leq
        self._meet = meet
        self._join = join
        self._v = valuation
        self._mu = mu
        self._rank = rank
        self.hasse_edges = hasse
        self._interval_cache = {}
        self._envelope_cache = {}

    def _i(self, e):
        try:
            return self._index[e]
        except KeyError:
            raise UnknownLabel(e) from None

    @property
    def bottom(self):
        lows = [
            e
            for e in self.elements
            if all(self._leq[self._i(e)][self._i(f)] for f in self.elements)
        ]
        return lows[0]

    def leq(self, a, b):
        return self._leq[self._i(a)][self._i(b)]

    def meet(self, a, b):
        m = self._meet[self._i(a)][self._i(b)]
        return self.elements[m]

    def join(self, a, b):
        j = self._join[self._i(a)][self._i(b)]
        return None if j is None else self.elements[j]

    def v(self, a):
        return self._v[self._i(a)]

    def vdiff(self, a, b):
        """v(b) - v(a) for a below b."""
        if not self.leq(a, b):
            raise ValueError(f"{a!r} not below {b!r}")
        return self._v[self._i(b)] - self._v[self._i(a)]

    def mu(self, a, b):
        return self._mu[self._i(a)][self._i(b)]

    def rank(self, a):
        return self._rank[self._i(a)]

    def interval(self, p, q):
        key = (self._i(p), self._i(q))
        key = key if key[0] <= key[1] else (key[1], key[0])
        cached = self._interval_cache.get(key)
        if cached is None:
            a, b = key
            dab = self._mu[a][b]
            cached = tuple(
                z
                for z in range(len(self.elements))
                if self._mu[a][z] + self._mu[z][b] == dab
            )
            self._interval_cache[key] = cached
        return frozenset(self.elements[z] for z in cached)

    def __repr__(self):
        return f"ValuatedSemilattice({len(self.elements)} elements)"


def validate_valuated_semilattice(elements, order, valuation):
    """Exhaustively certify the semilattice axioms and build the object.

    order is any generating set of comparabilities (a, b) meaning a below b;
    its reflexive-transitive closure is taken.
    """
    elems = tuple(sorted(set(elements)))
    n = len(elems)
    idx = {e: i for i, e in enumerate(elems)}
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        leq[i][i] = True
    for a, b in order:
        if a not in idx or b not in idx:
            raise UnknownLabel((a, b))
        leq[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_k = leq[k]
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise NotMeetSemilattice(f"order not antisymmetric at {elems[i]},{elems[j]}")

    def glb(i, j):
        lb = [x for x in range(n) if leq[x][i] and leq[x][j]]
        if not lb:
            return None
        tops = [u for u in lb if all(leq[x][u] for x in lb)]
        return tops[0] if len(tops) == 1 else None

    def lub(i, j):
        ub = [x for x in range(n) if leq[i][x] and leq[j][x]]
        if not ub:
            return None
        bots = [u for u in ub if all(leq[u][x] for x in ub)]
        return bots[0] if len(bots) == 1 else None

    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            meet[i][j] = glb(i, j)
            if meet[i][j] is None:
                raise NotMeetSemilattice(f"no meet for {elems[i]},{elems[j]}")
            join[i][j] = lub(i, j)
            if join[i][j] is None and any(leq[i][x] and leq[j][x] for x in range(n)):
                raise NotMeetSemilattice(
                    f"upper-bounded pair without join: {elems[i]},{elems[j]}"
                )

    # every principal ideal must be a modular lattice
    for p in range(n):
        down = [x for x in range(n) if leq[x][p]]
        for x in down:
            for y in down:
                for z in down:
                    if not leq[x][z]:
                        continue
                    lhs = join[x][meet[y][z]]
                    rhs = meet[join[x][y]][z]
                    if lhs != rhs:
                        raise NotModularSemilattice(
                            (elems[x], elems[y], elems[z]),
                            f"modular law fails below {elems[p]}",
                        )
    # pairwise joinable triples must have a triple join
    for i in range(n):
        for j in range(i + 1, n):
            if join[i][j] is None:
                continue
            for k in range(j + 1, n):
                if join[j][k] is None or join[i][k] is None:
                    continue
                if join[join[i][j]][k] is None:
                    raise NotModularSemilattice(
                        (elems[i], elems[j], elems[k]), "no triple join"
                    )

    v = [as_fraction(valuation[e]) for e in elems]
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and v[j] - v[i] <= 0:
                raise BadValuation((elems[i], elems[j]), "valuation not increasing")
    for i in range(n):
        for j in range(n):
            jj = join[i][j]
            if jj is not None and v[i] + v[j] != v[meet[i][j]] + v[jj]:
                raise BadValuation((elems[i], elems[j]), "valuation not modular")

    covers = []
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j]:
                if not any(
                    x != i and x != j and leq[i][x] and leq[x][j] for x in range(n)
                ):
                    covers.append((i, j))
    adj = [[] for _ in range(n)]
    for i, j in covers:
        w = v[j] - v[i]
        adj[i].append((j, w))
        adj[j].append((i, w))
    mu = [[None] * n for _ in range(n)]
    for i in range(n):
        mu[i][i] = Fraction(0)
    for i, j in covers:
        w = v[j] - v[i]
        mu[i][j] = mu[j][i] = w
    for k in range(n):
        for i in range(n):
            if mu[i][k] is None:
                continue
            for j in range(n):
                if mu[k][j] is None:
                    continue
                via = mu[i][k] + mu[k][j]
                if mu[i][j] is None or via < mu[i][j]:
                    mu[i][j] = via
    if any(mu[i][j] is None for i in range(n) for j in range(n)):
        raise NotMeetSemilattice("covering graph is disconnected")

    rank = [0] * n
    order_by_v = sorted(range(n), key=lambda i: (v[i], elems[i]))
    for j in order_by_v:
        below = [rank[i] + 1 for i, jj in covers if jj == j]
        rank[j] = max(below, default=0)

    hasse = tuple((elems[i], elems[j], v[j] - v[i]) for i, j in sorted(covers))
    return ValuatedSemilattice(
        elems,
        tuple(tuple(r) for r in leq),
        tuple(tuple(r) for r in meet),
        tuple(tuple(r) for r in join),
        tuple(v),
        tuple(tuple(r) for r in mu),
        tuple(rank),
        hasse,
    )


def product_semilattice(l1, l2):
    """Componentwise order with summed valuation; revalidated from scratch."""
    elements = [(a, b) for a in l1.elements for b in l2.elements]
    order = [
        ((a, b), (c, d))
        for a, b in elements
        for c, d in elements
        if l1.leq(a, c) and l2.leq(b, d)
    ]
    valuation = {(a, b): l1.v(a) + l2.v(b) for a, b in elements}
    return validate_valuated_semilattice(elements, order, valuation)


# --- envelopes ----------------------------------------------------------------


@dataclass(frozen=True)
class EnvelopeReport:
    """Envelope of a pair: interval coordinates, breakpoints, classification."""

    pair: tuple
    meet: object
    coords: dict
    envelope: tuple
    thetas: tuple
    pair_class: str

    @property
    def weights(self):
        return tuple(
            self.thetas[i + 1] - self.thetas[i] for i in range(len(self.envelope))
        )

    def theta_interval(self, i):
        return (self.thetas[i], self.thetas[i + 1])

    def render(self):
        lines = [
            f"pair: {self.pair[0]} {self.pair[1]}",
            f"meet: {self.meet}",
            f"class: {self.pair_class}",
            f"{'element':<12} {'coord':<16} theta-interval",
        ]
        for i, u in enumerate(self.envelope):
            cx, cy = self.coords[u]
            lo, hi = self.theta_interval(i)
            lines.append(
                f"{str(u):<12} ({fmt(cx)}, {fmt(cy)})".ljust(30)
                + f" [{fmt(lo)}, {fmt(hi)}]"
            )
        return "\n".join(lines) + "\n"


def vpq_coords(lat, p, q, u):
    """Planar coordinates of u inside the interval of (p, q)."""
    if u not in lat.interval(p, q):
        raise NotInInterval(f"{u!r} outside interval of {(p, q)}")
    s = lat.meet(p, q)
    a = lat.meet(u, p)
    b = lat.meet(u, q)
    rebuilt = lat.join(a, b)
    if rebuilt != u:
        raise InternalInconsistency(f"interval point {u!r} is not join of its parts")
    return (lat.vdiff(s, a), lat.vdiff(s, b))


def _strict_max_interval(c, others):
    """Open theta-range in (0,1) where coordinate c strictly beats others."""
    lo, hi = Fraction(0), Fraction(1)
    for o in others:
        aa = c[0] - o[0]
        bb = c[1] - o[1]
        slope = bb - aa
        if slope == 0:
            if aa <= 0:
                return None
        elif slope > 0:
            bound = Fraction(-aa, slope)
            if bound > lo:
                lo = bound
        else:
            bound = Fraction(aa, -slope)
            if bound < hi:
                hi = bound
        if lo >= hi:
            return None
    return (lo, hi)


def envelope(lat, p, q):
    """Envelope, breakpoints and class of a pair, all in exact arithmetic."""
    cache_key = (p, q)
    cached = lat._envelope_cache.get(cache_key)
    if cached is not None:
        return cached
    interval = sorted(lat.interval(p, q))
    coords = {u: vpq_coords(lat, p, q, u) for u in interval}
    point_set = sorted(set(coords.values()))
    chosen_coords = {coords[p], coords[q]}
    for c in point_set:
        if _strict_max_interval(c, [o for o in point_set if o != c]) is not None:
            chosen_coords.add(c)
    members = []
    for c in sorted(chosen_coords):
        owners = [u for u in interval if coords[u] == c]
        if len(owners) != 1:
            raise InternalInconsistency(
                f"envelope coordinate {c} shared by {owners} in pair {(p, q)}"
            )
        members.append(owners[0])
    members.sort(key=lambda u: (-coords[u][0], coords[u][1]))
    if members[0] != p or members[-1] != q:
        raise InternalInconsistency(f"envelope of {(p, q)} not anchored at the pair")

    thetas = [Fraction(0)]
    for i in range(len(members) - 1):
        si = lat.meet(members[i], members[i + 1])
        num = lat.vdiff(si, members[i])
        den = num + lat.vdiff(si, members[i + 1])
        thetas.append(Fraction(num, den))
    thetas.append(Fraction(1))
    # the list runs 0, theta_0, ..., theta_{k-1}, 1; a single-point envelope
    # collapses to (0, 1)
    for a, b in zip(thetas, thetas[1:]):
        if b < a:
            raise InternalInconsistency(f"breakpoints not monotone for {(p, q)}")

    if lat.join(p, q) is not None:
        pair_class = "bounded"
        expect = {p, q, lat.join(p, q)}
        if set(members) != expect:
            raise InternalInconsistency(
                f"bounded pair {(p, q)} with envelope {members}"
            )
    elif set(members) == {p, q}:
        pair_class = "antipodal"
    else:
        pair_class = "general"
    report = EnvelopeReport(
        pair=(p, q),
        meet=lat.meet(p, q),
        coords=coords,
        envelope=tuple(members),
        thetas=tuple(thetas),
        pair_class=pair_class,
    )
    lat._envelope_cache[cache_key] = report
    return report


def antipodal_by_inequality(lat, p, q):
    """Product criterion over joinable straddles of the meet."""
    s = lat.meet(p, q)
    side_p = [a for a in lat.elements if lat.leq(s, a) and lat.leq(a, p)]
    side_q = [b for b in lat.elements if lat.leq(s, b) and lat.leq(b, q)]
    for a in side_p:
        for b in side_q:
            if lat.join(a, b) is None:
                continue
            if lat.vdiff(a, p) * lat.vdiff(b, q) < lat.vdiff(s, a) * lat.vdiff(s, b):
                return False
    return True


def classify_pair(lat, p, q):
    """bounded / antipodal / general, with the two antipodal routes compared."""
    rep = envelope(lat, p, q)
    env_antipodal = set(rep.envelope) == {p, q}
    ineq_antipodal = antipodal_by_inequality(lat, p, q)
    if env_antipodal != ineq_antipodal:
        raise InternalInconsistency(
            f"antipodal criteria disagree on {(p, q)}: "
            f"envelope {env_antipodal}, inequality {ineq_antipodal}"
        )
    if lat.join(p, q) is not None:
        return "bounded"
    return "antipodal" if env_antipodal else "general"


# --- submodularity ------------------------------------------------------------


@dataclass(frozen=True)
class SubmodularityViolation:
    kind: str  # "dom", "bounded", "antipodal", "general"
    pair: tuple
    lhs: object = None
    rhs: object = None
    element: object = None

    def describe(self):
        if self.kind == "dom":
            return f"envelope point {self.element} of {self.pair} outside the domain"
        return f"{self.kind} inequality fails at {self.pair}: {fmt(self.lhs)} < {fmt(self.rhs)}"


def _general_rhs(lat, f, rep):
    total = f[rep.meet] if rep.meet is not None else INF
    if total == INF:
        return INF
    acc = total
    for u, w in zip(rep.envelope, rep.weights):
        term = ext_scale(w, f[u])
        if term == INF:
            return INF
        acc = acc + term
    return acc


def _bounded_sides(lat, f, p, q):
    j = lat.join(p, q)
    s = lat.meet(p, q)
    lhs = f[p] + f[q]
    rhs = INF if (f[s] == INF or f[j] == INF) else f[s] + f[j]
    return lhs, rhs


def _antipodal_sides(lat, f, p, q):
    s = lat.meet(p, q)
    cq = lat.vdiff(s, q)
    cp = lat.vdiff(s, p)
    lhs = ext_scale(cq, f[p])
    if lhs != INF:
        other = ext_scale(cp, f[q])
        lhs = INF if other == INF else lhs + other
    rhs = ext_scale(cp + cq, f[s])
    return lhs, rhs


def check_submodular(lat, f, method="full"):
    """First violated inequality in lexicographic pair order, or None.

    method "full" evaluates the envelope inequality for every ordered pair
    (reporting the reduced form on special pairs); method "fast" checks the
    domain-closure condition plus only the special-pair inequalities.
    """
    if method not in ("full", "fast"):
        raise ValueError(f"unknown method {method!r}")
    elems = lat.elements
    for p in elems:
        if f[p] == INF:
            continue
        for q in elems:
            if f[q] == INF:
                continue
            rep = envelope(lat, p, q)
            for u in rep.envelope:
                if f[u] == INF and u not in (p, q):
                    # zero-weight endpoints aside, an infinite envelope point
                    # breaks domain closure
                    return SubmodularityViolation("dom", (p, q), element=u)
            bounded = lat.join(p, q) is not None
            antipodal = set(rep.envelope) == {p, q}
            if bounded:
                lhs, rhs = _bounded_sides(lat, f, p, q)
                kind = "bounded"
            elif antipodal:
                lhs, rhs = _antipodal_sides(lat, f, p, q)
                kind = "antipodal"
            else:
                if method == "fast":
                    continue
                lhs = f[p] + f[q]
                rhs = _general_rhs(lat, f, rep)
                kind = "general"
            if method == "full" and (bounded or antipodal):
                glhs = f[p] + f[q]
                grhs = _general_rhs(lat, f, rep)
                if (glhs < grhs) != (lhs < rhs):
                    raise InternalInconsistency(
                        f"reduced and envelope forms disagree at {(p, q)}"
                    )
            if lhs < rhs:
                return SubmodularityViolation(kind, (p, q), lhs, rhs)
    return None


def check_condition_dom_closure(lat, f):
    """Envelope points of domain pairs must stay in the domain."""
    for p in lat.elements:
        if f[p] == INF:
            continue
        for q in lat.elements:
            if f[q] == INF:
                continue
            for u in envelope(lat, p, q).envelope:
                if f[u] == INF:
                    return SubmodularityViolation("dom", (p, q), element=u)
    return None


def _strictly_above(rep, p, q, mid2):
    """Is half of mid2 strictly above the segment between the pair coords?"""
    px, _ = rep.coords[p]
    _, qy = rep.coords[q]
    # segment from (px, 0) to (0, qy); point (x, y) above iff qy*x + px*y > px*qy
    return qy * mid2[0] + px * mid2[1] > 2 * px * qy


def check_condition_1prime(lat, f):
    """Witness search form of domain closure; None when satisfied."""
    for p in lat.elements:
        if f[p] == INF:
            continue
        for q in lat.elements:
            if f[q] == INF:
                continue
            rep = envelope(lat, p, q)
            inner = [u for u in rep.envelope if u not in (p, q)]
            if not inner:
                continue
            u_minus, u_plus = inner[0], inner[-1]
            candidates = [
                t
                for t in sorted(lat.interval(p, q))
                if t not in (p, q) and f[t] != INF
            ]
            found = False
            for t in candidates:
                for u in (u_minus, u_plus):
                    mid2 = (
                        rep.coords[u][0] + rep.coords[t][0],
                        rep.coords[u][1] + rep.coords[t][1],
                    )
                    if _strictly_above(rep, p, q, mid2):
                        found = True
                        break
                if found:
                    break
            if not found:
                return SubmodularityViolation(
                    "dom", (p, q), element=(u_minus, u_plus)
                )
    return None


# --- L-convexity ----------------------------------------------------------------


@dataclass(frozen=True)
class LConvexityViolation:
    kind: str  # "dom_disconnected" or "submodularity"
    detail: object
    at_point: object = None

    def describe(self):
        if self.kind == "dom_disconnected":
            return f"domain splits into components {self.detail}"
        return f"lifted function not submodular at {self.at_point}: {self.detail.describe()}"


def _components(nodes, adjacent):
    comps = []
    left = set(nodes)
    while left:
        seed = min(left)
        comp = {seed}
        stack = [seed]
        while stack:
            u = stack.pop()
            for v in left - comp:
                if adjacent(u, v):
                    comp.add(v)
                    stack.append(v)
        comps.append(frozenset(comp))
        left -= comp
    return comps


def check_lconvex(cx, n, f):
    """L-convexity of an n-ary table (n in {1, 2}) on a complex.

    The domain must be connected under the strict companion relation taken
    componentwise, and every lifted restriction must be submodular.
    """
    if n == 1:
        dom = sorted(x for x in cx.labels if f[x] != INF)
        if dom:
            comps = _components(
                dom, lambda a, b: cx.rel(a, b) or cx.rel(b, a)
            )
            if len(comps) > 1:
                return LConvexityViolation("dom_disconnected", tuple(comps))
        for p in cx.labels:
            lat = cx.principal_semilattice(p, "lstar")
            lifted = {(a, b): _ext_pair_sum(f[a], f[b]) for a, b in lat.elements}
            bad = check_submodular(lat, lifted, method="full")
            if bad is not None:
                return LConvexityViolation("submodularity", bad, at_point=p)
        return None
    if n == 2:
        from .complexes import product_complex, product_label

        pcx = product_complex(cx, cx)
        dom = sorted(
            product_label(a, b)
            for a in cx.labels
            for b in cx.labels
            if f[(a, b)] != INF
        )
        if dom:
            comps = _components(
                dom, lambda a, b: pcx.rel(a, b) or pcx.rel(b, a)
            )
            if len(comps) > 1:
                return LConvexityViolation("dom_disconnected", tuple(comps))
        for p1 in cx.labels:
            lat1 = cx.principal_semilattice(p1, "lstar")
            for p2 in cx.labels:
                lat2 = cx.principal_semilattice(p2, "lstar")
                key = ("lstar2", p1, p2)
                prod = cx._semilattice_cache.get(key)
                if prod is None:
                    prod = product_semilattice(lat1, lat2)
                    cx._semilattice_cache[key] = prod
                lifted = {}
                for iv1, iv2 in prod.elements:
                    lo = f[(iv1[0], iv2[0])]
                    hi = f[(iv1[1], iv2[1])]
                    lifted[(iv1, iv2)] = _ext_pair_sum(lo, hi)
                bad = check_submodular(prod, lifted, method="full")
                if bad is not None:
                    return LConvexityViolation(
                        "submodularity", bad, at_point=(p1, p2)
                    )
        return None
    raise ValueError("only unary and binary tables are supported")


def _ext_pair_sum(a, b):
    if a == INF or b == INF:
        return INF
    return a + b
