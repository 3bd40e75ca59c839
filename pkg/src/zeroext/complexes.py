"""Oriented modular graphs with a companion relation, and their structure.

An ExtendedComplex is an acyclic orientation of a modular graph together
with a reflexive relation "rel" squeezed between the cube-pair relation and
the full reachability order.  All solver-facing neighborhood machinery lives
here: principal semilattices, gates, the diamond step, normal paths, the
thickening distance, 2-subdivisions, and Cartesian products.
"""

from collections import deque
from fractions import Fraction
from itertools import combinations

from .errors import (
    CyclicOrientation,
    GraphStructureError,
    InadmissibleRelation,
    InternalInconsistency,
    NonTermination,
    NotGated,
    UnknownLabel,
)
from .rationals import as_fraction

REL_KINDS = ("precedes", "boolean_pair", "explicit", "product")


class ExtendedComplex:
    """Immutable directed weighted graph with order and companion relation.

    Vertices are sorted string labels.  Use build_complex (or Subdivision /
    product_complex) rather than this constructor.
    """

    def __init__(self, labels, dir_edges, rel_kind, explicit_rel=None, _trusted_rel=None):
        self.labels = tuple(sorted(labels))
        if len(set(self.labels)) != len(self.labels):
            raise GraphStructureError("duplicate labels")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        n = len(self.labels)
        edges = []
        seen = set()
        for tail, head, w in dir_edges:
            t, h = self._i(tail), self._i(head)
            if t == h:
                raise GraphStructureError(f"self loop at {tail!r}")
            key = (min(t, h), max(t, h))
            if key in seen:
                raise GraphStructureError(f"duplicate edge {tail, head}")
            seen.add(key)
            w = as_fraction(w)
            if w <= 0:
                raise GraphStructureError(f"nonpositive weight on {(tail, head)}")
            edges.append((t, h, w))
        self._edges = tuple(sorted(edges))
        self._out = [[] for _ in range(n)]
        self._in = [[] for _ in range(n)]
        self._und = [[] for _ in range(n)]
        self._w = {}
        for t, h, w in self._edges:
            self._out[t].append(h)
            self._in[h].append(t)
            self._und[t].append((h, w))
            self._und[h].append((t, w))
            self._w[(min(t, h), max(t, h))] = w
        self._check_acyclic()
        self._d = self._unit_distances()
        self._mu = self._weighted_distances()
        self._leq = self._reachability()
        self._interval_cache = {}
        self._meet_cache = {}
        self._join_cache = {}
        self._semilattice_cache = {}
        self._subdivision = None
        self._thick = None
        self._delta = None
        if rel_kind == "precedes":
            self._rel = tuple(tuple(row) for row in self._leq)
        elif rel_kind == "boolean_pair":
            self._rel = self._boolean_pairs()
        elif rel_kind in ("explicit", "product"):
            if _trusted_rel is not None:
                self._rel = _trusted_rel
            else:
                rel = [[False] * n for _ in range(n)]
                for a, b in explicit_rel:
                    rel[self._i(a)][self._i(b)] = True
                self._rel = tuple(tuple(row) for row in rel)
                problem = check_admissible_relation(self, explicit_rel, _prebuilt=self._rel)
                if problem is not None:
                    raise InadmissibleRelation(*problem)
        else:
            raise ValueError(f"unknown rel_kind {rel_kind!r}")
        self.rel_kind = rel_kind

    # -- basic structure ------------------------------------------------------

    def _i(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    @property
    def vertices(self):
        return self.labels

    @property
    def directed_edges(self):
        return tuple(
            (self.labels[t], self.labels[h], w) for t, h, w in self._edges
        )

    def _check_acyclic(self):
        n = len(self.labels)
        indeg = [len(self._in[v]) for v in range(n)]
        queue = deque(v for v in range(n) if indeg[v] == 0)
        seen = 0
        while queue:
            u = queue.popleft()
            seen += 1
            for v in self._out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    queue.append(v)
        if seen != n:
            raise CyclicOrientation("orientation has a directed cycle")

    def _unit_distances(self):
        n = len(self.labels)
        table = []
        for s in range(n):
            dist = [None] * n
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v, _ in self._und[u]:
                    if dist[v] is None:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            if any(x is None for x in dist):
                raise GraphStructureError("graph is not connected")
            table.append(tuple(dist))
        return tuple(table)

    def _weighted_distances(self):
        n = len(self.labels)
        dist = [[None] * n for _ in range(n)]
        for i in range(n):
            dist[i][i] = Fraction(0)
        for t, h, w in self._edges:
            dist[t][h] = dist[h][t] = w
        for k in range(n):
            dk = dist[k]
            for i in range(n):
                dik = dist[i][k]
                if dik is None:
                    continue
                di = dist[i]
                for j in range(n):
                    if dk[j] is None:
                        continue
                    via = dik + dk[j]
                    if di[j] is None or via < di[j]:
                        di[j] = via
        return tuple(tuple(row) for row in dist)

    def _reachability(self):
        n = len(self.labels)
        leq = [[False] * n for _ in range(n)]
        for s in range(n):
            leq[s][s] = True
            stack = [s]
            while stack:
                u = stack.pop()
                for v in self._out[u]:
                    if not leq[s][v]:
                        leq[s][v] = True
                        stack.append(v)
        return tuple(tuple(row) for row in leq)

    def _boolean_pairs(self):
        n = len(self.labels)
        rel = [[False] * n for _ in range(n)]
        for p in range(n):
            for q in range(n):
                if not self._leq[p][q]:
                    continue
                atoms = [a for a in self._out[p] if self._leq[a][q]]
                j = p
                for a in atoms:
                    j = self._join_idx(j, a)
                    if j is None:
                        raise InternalInconsistency("join vanished inside interval")
                rel[p][q] = j == q
        return tuple(tuple(row) for row in rel)

    # -- metric structure -----------------------------------------------------

    def d(self, x, y):
        return self._d[self._i(x)][self._i(y)]

    def mu(self, x, y):
        return self._mu[self._i(x)][self._i(y)]

    def leq(self, x, y):
        return self._leq[self._i(x)][self._i(y)]

    def rel(self, x, y):
        return self._rel[self._i(x)][self._i(y)]

    def rel_pairs(self):
        n = len(self.labels)
        return frozenset(
            (self.labels[p], self.labels[q])
            for p in range(n)
            for q in range(n)
            if self._rel[p][q]
        )

    def _interval_idx(self, p, q):
        key = (p, q) if p <= q else (q, p)
        cached = self._interval_cache.get(key)
        if cached is None:
            dpq = self._mu[p][q]
            cached = tuple(
                z
                for z in range(len(self.labels))
                if self._mu[p][z] + self._mu[z][q] == dpq
            )
            self._interval_cache[key] = cached
        return cached

    def interval(self, x, y):
        return frozenset(self.labels[z] for z in self._interval_idx(self._i(x), self._i(y)))

    def _medians_idx(self, p, q, r):
        ipq = set(self._interval_idx(p, q))
        iqr = set(self._interval_idx(q, r))
        ipr = set(self._interval_idx(p, r))
        return sorted(ipq & iqr & ipr)

    def medians(self, x, y, z):
        meds = self._medians_idx(self._i(x), self._i(y), self._i(z))
        return frozenset(self.labels[m] for m in meds)

    def is_shortest_subpath(self, seq):
        idx = [self._i(x) for x in seq]
        total = sum(
            (self._mu[a][b] for a, b in zip(idx, idx[1:])), Fraction(0)
        )
        return total == self._mu[idx[0]][idx[-1]]

    # -- lattice operations ---------------------------------------------------

    def _meet_idx(self, a, b):
        key = (a, b) if a <= b else (b, a)
        if key in self._meet_cache:
            return self._meet_cache[key]
        n = len(self.labels)
        lb = [x for x in range(n) if self._leq[x][a] and self._leq[x][b]]
        result = None
        if lb:
            greatest = [u for u in lb if all(self._leq[x][u] for x in lb)]
            if len(greatest) > 1:
                raise InternalInconsistency(f"meet not unique for {key}")
            result = greatest[0] if greatest else None
            if lb and result is None:
                raise InternalInconsistency(f"lower bounds without meet at {key}")
        self._meet_cache[key] = result
        return result

    def _join_idx(self, a, b):
        key = (a, b) if a <= b else (b, a)
        if key in self._join_cache:
            return self._join_cache[key]
        n = len(self.labels)
        ub = [x for x in range(n) if self._leq[a][x] and self._leq[b][x]]
        result = None
        if ub:
            least = [u for u in ub if all(self._leq[u][x] for x in ub)]
            if len(least) > 1:
                raise InternalInconsistency(f"join not unique for {key}")
            result = least[0] if least else None
            if ub and result is None:
                raise InternalInconsistency(f"upper bounds without join at {key}")
        self._join_cache[key] = result
        return result

    def meet(self, x, y):
        m = self._meet_idx(self._i(x), self._i(y))
        return None if m is None else self.labels[m]

    def join(self, x, y):
        j = self._join_idx(self._i(x), self._i(y))
        return None if j is None else self.labels[j]

    # -- convexity and gates ----------------------------------------------------

    def is_convex(self, labels_set):
        """Local criterion: induced connectivity plus distance-2 intervals."""
        pts = sorted(self._i(x) for x in labels_set)
        if not pts:
            return True
        inset = set(pts)
        seen = {pts[0]}
        queue = deque([pts[0]])
        while queue:
            u = queue.popleft()
            for v, _ in self._und[u]:
                if v in inset and v not in seen:
                    seen.add(v)
                    queue.append(v)
        if seen != inset:
            return False
        for p, q in combinations(pts, 2):
            if self._d[p][q] == 2 and not set(self._interval_idx(p, q)) <= inset:
                return False
        return True

    def _project_idx(self, member_idxs, p):
        gates = [
            u
            for u in member_idxs
            if all(
                self._mu[p][q] == self._mu[p][u] + self._mu[u][q]
                for q in member_idxs
            )
        ]
        if len(gates) != 1:
            raise NotGated(f"{len(gates)} gates for {self.labels[p]}")
        return gates[0]

    def project(self, labels_set, x):
        members = sorted(self._i(u) for u in labels_set)
        if not members:
            raise NotGated("empty target set")
        return self.labels[self._project_idx(members, self._i(x))]

    def _upset_idx(self, p):
        return [q for q in range(len(self.labels)) if self._rel[p][q]]

    def _downset_idx(self, p):
        return [q for q in range(len(self.labels)) if self._rel[q][p]]

    def lplus(self, x):
        return tuple(self.labels[q] for q in self._upset_idx(self._i(x)))

    def lminus(self, x):
        return tuple(self.labels[q] for q in self._downset_idx(self._i(x)))

    def box(self, lo, hi):
        ilo, ihi = self._i(lo), self._i(hi)
        return tuple(
            self.labels[q]
            for q in range(len(self.labels))
            if self._rel[ilo][q] and self._rel[q][ihi]
        )

    def _gate_idx(self, p, q, direction):
        members = self._upset_idx(p) if direction == "up" else self._downset_idx(p)
        return self._project_idx(members, q)

    def gate(self, x, y, direction):
        if direction not in ("up", "down"):
            raise ValueError("direction must be 'up' or 'down'")
        return self.labels[self._gate_idx(self._i(x), self._i(y), direction)]

    def _diamond_idx(self, p, q):
        up = self._gate_idx(p, q, "up")
        down = self._gate_idx(p, q, "down")
        meds = self._medians_idx(up, down, q)
        if len(meds) != 1:
            raise InternalInconsistency(
                f"median of gates not unique at {self.labels[p]},{self.labels[q]}"
            )
        return meds[0]

    def diamond(self, x, y):
        return self.labels[self._diamond_idx(self._i(x), self._i(y))]

    def normal_path(self, x, y):
        """Iterated diamond steps from x to y; a shortest thickening path."""
        p, q = self._i(x), self._i(y)
        path = [p]
        while path[-1] != q:
            path.append(self._diamond_idx(path[-1], q))
            if len(path) > len(self.labels) + 1:
                raise NonTermination("diamond iteration did not reach target")
        return tuple(self.labels[v] for v in path)

    # -- thickening -------------------------------------------------------------

    def _thickening(self):
        if self._thick is None:
            n = len(self.labels)
            adj = [[] for _ in range(n)]
            for p in range(n):
                for q in range(p + 1, n):
                    m = self._meet_idx(p, q)
                    if m is None:
                        continue
                    j = self._join_idx(p, q)
                    if j is None:
                        continue
                    if self._rel[m][j]:
                        adj[p].append(q)
                        adj[q].append(p)
            self._thick = tuple(tuple(x) for x in adj)
        return self._thick

    def are_diamond_neighbors(self, x, y):
        p, q = self._i(x), self._i(y)
        if p == q:
            return False
        return max(p, q) in self._thickening()[min(p, q)]

    def _delta_table(self):
        if self._delta is None:
            adj = self._thickening()
            n = len(self.labels)
            table = []
            for s in range(n):
                dist = [None] * n
                dist[s] = 0
                queue = deque([s])
                while queue:
                    u = queue.popleft()
                    for v in adj[u]:
                        if dist[v] is None:
                            dist[v] = dist[u] + 1
                            queue.append(v)
                if any(x is None for x in dist):
                    raise InternalInconsistency("thickening is disconnected")
                table.append(tuple(dist))
            self._delta = tuple(table)
        return self._delta

    def delta_distance(self, x, y):
        return self._delta_table()[self._i(x)][self._i(y)]

    def delta_ball(self, x, radius):
        row = self._delta_table()[self._i(x)]
        return frozenset(
            self.labels[q] for q in range(len(self.labels)) if row[q] <= radius
        )

    # -- derived structures -------------------------------------------------------

    def principal_semilattice(self, x, sigma):
        """Neighborhood semilattice at x; sigma picks the ground set and order.

        up / down use the full order, plus / minus the companion relation,
        lstar the up-set of [x,x] in the 2-subdivision.  Valuation is the
        weighted distance from the base point.
        """
        key = (x, sigma)
        if key in self._semilattice_cache:
            return self._semilattice_cache[key]
        from .semilattice import validate_valuated_semilattice

        p = self._i(x)
        if sigma == "lstar":
            sub = self.two_subdivision()
            base = (x, x)
            elems = [iv for iv in sub.vertices if self.leq(iv[0], x) and self.leq(x, iv[1])]
            order = [
                (u, v)
                for u in elems
                for v in elems
                if self.leq(v[0], u[0]) and self.leq(u[1], v[1])
            ]
            valuation = {iv: sub.mu(base, iv) for iv in elems}
            result = validate_valuated_semilattice(elems, order, valuation)
        else:
            if sigma == "up":
                ground = [q for q in range(len(self.labels)) if self._leq[p][q]]
                fwd = True
            elif sigma == "down":
                ground = [q for q in range(len(self.labels)) if self._leq[q][p]]
                fwd = False
            elif sigma == "plus":
                ground = self._upset_idx(p)
                fwd = True
            elif sigma == "minus":
                ground = self._downset_idx(p)
                fwd = False
            else:
                raise ValueError(f"unknown sigma {sigma!r}")
            elems = [self.labels[q] for q in ground]
            order = []
            for a in ground:
                for b in ground:
                    if self._leq[a][b]:
                        pair = (self.labels[a], self.labels[b])
                        order.append(pair if fwd else (pair[1], pair[0]))
            valuation = {self.labels[q]: self._mu[p][q] for q in ground}
            result = validate_valuated_semilattice(elems, order, valuation)
        self._semilattice_cache[key] = result
        return result

    def two_subdivision(self):
        if self._subdivision is None:
            self._subdivision = Subdivision(self)
        return self._subdivision

    def dump(self):
        """Deterministic text form: vertices, directed edges, relation matrix."""
        from .rationals import fmt

        lines = [f"complex {len(self.labels)} rel={self.rel_kind}"]
        lines.append("vertices " + " ".join(self.labels))
        for t, h, w in self.directed_edges:
            lines.append(f"edge {t} {h} {fmt(w)}")
        lines.append("rel")
        for p in range(len(self.labels)):
            lines.append(" ".join("1" if v else "0" for v in self._rel[p]))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (
            f"ExtendedComplex({len(self.labels)} vertices, "
            f"{len(self._edges)} edges, rel={self.rel_kind})"
        )


def build_complex(g, orientation, rel_kind="precedes", explicit_rel=None):
    """Turn a weighted graph plus edge directions into an ExtendedComplex.

    orientation may be an Orientation object or a mapping from canonical
    (a, b) pairs to (tail, head) tuples.
    """
    dirs = orientation.edges if hasattr(orientation, "edges") else orientation
    dir_edges = []
    for (a, b), w in g.edges.items():
        tail, head = dirs[(a, b)]
        if {tail, head} != {a, b}:
            raise GraphStructureError(f"direction {tail, head} does not match edge {a, b}")
        dir_edges.append((tail, head, w))
    return ExtendedComplex(g.labels, dir_edges, rel_kind, explicit_rel=explicit_rel)


def check_admissible_relation(cx, rel_pairs, _prebuilt=None):
    """Check a candidate companion relation against the closure rules.

    Returns None when admissible, else (condition, witness) for the first
    failure: "reflexive", "edge", "coarsens", "interval", "join", "meet".
    """
    n = len(cx.labels)
    if _prebuilt is not None:
        rel = _prebuilt
    else:
        matrix = [[False] * n for _ in range(n)]
        for a, b in rel_pairs:
            matrix[cx._i(a)][cx._i(b)] = True
        rel = tuple(tuple(row) for row in matrix)
    lab = cx.labels
    for p in range(n):
        if not rel[p][p]:
            return ("reflexive", (lab[p],))
    for t, h, _ in cx._edges:
        if not rel[t][h]:
            return ("edge", (lab[t], lab[h]))
    for p in range(n):
        for q in range(n):
            if rel[p][q] and not cx._leq[p][q]:
                return ("coarsens", (lab[p], lab[q]))
    related = [(p, q) for p in range(n) for q in range(n) if rel[p][q]]
    for p, q in related:
        box = [z for z in range(n) if cx._leq[p][z] and cx._leq[z][q]]
        for a in box:
            for b in box:
                if cx._leq[a][b] and not rel[a][b]:
                    return ("interval", (lab[p], lab[q], lab[a], lab[b]))
    for p in range(n):
        ups = [q for q in range(n) if rel[p][q]]
        for q1 in ups:
            for q2 in ups:
                if q1 >= q2:
                    continue
                j = cx._join_idx(q1, q2)
                if j is not None and not rel[p][j]:
                    return ("join", (lab[p], lab[q1], lab[q2], lab[j]))
    for q in range(n):
        downs = [p for p in range(n) if rel[p][q]]
        for p1 in downs:
            for p2 in downs:
                if p1 >= p2:
                    continue
                m = cx._meet_idx(p1, p2)
                if m is not None and not rel[m][q]:
                    return ("meet", (lab[q], lab[p1], lab[p2], lab[m]))
    return None


def boolean_pair_relation(cx):
    """Pairs (p, q) that are source and sink of an embedded cube subgraph."""
    n = len(cx.labels)
    rel = cx._boolean_pairs()
    return frozenset(
        (cx.labels[p], cx.labels[q]) for p in range(n) for q in range(n) if rel[p][q]
    )


class Subdivision:
    """The 2-subdivision: vertices are related pairs, ordered by inclusion."""

    def __init__(self, parent):
        self.parent = parent
        verts = [
            (a, b)
            for a in parent.labels
            for b in parent.labels
            if parent.rel(a, b)
        ]
        self.vertices = tuple(sorted(verts))
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        vset = set(self.vertices)
        edges = []
        for t_lab, h_lab, w in parent.directed_edges:
            for p, q in self.vertices:
                # growing the top end along an edge of the parent
                if q == t_lab and (p, h_lab) in vset:
                    edges.append(((p, q), (p, h_lab), w))
                # growing the bottom end against an edge of the parent
                if p == h_lab and (t_lab, q) in vset:
                    edges.append(((p, q), (t_lab, q), w))
        self.edges = tuple(sorted(edges))
        self._adj = {v: [] for v in self.vertices}
        for src, dst, w in self.edges:
            self._adj[src].append((dst, w))
            self._adj[dst].append((src, w))
        self._dtab = self._distances(unit=True)
        self._mtab = self._distances(unit=False)

    def _distances(self, unit):
        table = {}
        for s in self.vertices:
            dist = {s: 0 if unit else Fraction(0)}
            if unit:
                queue = deque([s])
                while queue:
                    u = queue.popleft()
                    for v, _ in self._adj[u]:
                        if v not in dist:
                            dist[v] = dist[u] + 1
                            queue.append(v)
            else:
                import heapq

                heap = [(Fraction(0), s)]
                while heap:
                    du, u = heapq.heappop(heap)
                    if du > dist[u]:
                        continue
                    for v, w in self._adj[u]:
                        nd = du + w
                        if v not in dist or nd < dist[v]:
                            dist[v] = nd
                            heapq.heappush(heap, (nd, v))
            if len(dist) != len(self.vertices):
                raise InternalInconsistency("subdivision is disconnected")
            table[s] = dist
        return table

    def d(self, u, v):
        return self._dtab[tuple(u)][tuple(v)]

    def mu(self, u, v):
        return self._mtab[tuple(u)][tuple(v)]

    @staticmethod
    def label_of(vertex):
        return f"[{vertex[0]},{vertex[1]}]"

    def as_complex(self, rel_kind="boolean_pair"):
        """The subdivision graph itself as a complex (its own relation)."""
        dir_edges = [
            (self.label_of(src), self.label_of(dst), w) for src, dst, w in self.edges
        ]
        labels = [self.label_of(v) for v in self.vertices]
        return ExtendedComplex(labels, dir_edges, rel_kind)

    def __repr__(self):
        return f"Subdivision({len(self.vertices)} vertices, {len(self.edges)} edges)"


def product_label(a, b):
    return f"({a},{b})"


def product_complex(cx1, cx2):
    """Cartesian product with componentwise order and companion relation."""
    labels = [product_label(a, b) for a in cx1.labels for b in cx2.labels]
    dir_edges = []
    for a in cx1.labels:
        for t, h, w in cx2.directed_edges:
            dir_edges.append((product_label(a, t), product_label(a, h), w))
    for t, h, w in cx1.directed_edges:
        for b in cx2.labels:
            dir_edges.append((product_label(t, b), product_label(h, b), w))
    index = {}
    for i, a in enumerate(cx1.labels):
        for j, b in enumerate(cx2.labels):
            index[product_label(a, b)] = (i, j)
    ordered = sorted(labels)
    n = len(ordered)
    rel = [[False] * n for _ in range(n)]
    for p in range(n):
        i1, j1 = index[ordered[p]]
        for q in range(n):
            i2, j2 = index[ordered[q]]
            rel[p][q] = cx1._rel[i1][i2] and cx2._rel[j1][j2]
    return ExtendedComplex(
        labels, dir_edges, "product", _trusted_rel=tuple(tuple(r) for r in rel)
    )
