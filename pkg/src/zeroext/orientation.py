"""Tractability classification: orientations, parity constraints, hardness.

An instance family over a metric mu and a pair set F is polynomial-time
solvable exactly when the minimal graph of mu is modular and the graph
together with F admits a consistent orientation (same-direction opposite
sides on every 4-cycle; every shortest path between an F pair oriented along
the pair).  Orientability reduces to a system of parity equations over one
boolean per edge / F pair, solved here by union-find with parity.  When the
system is inconsistent the dual object is a path, in the derived graph on
directed tuples, connecting some tuple to its own reversal; that path is the
machine-checkable hardness certificate.
"""

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .complexes import build_complex
from .errors import InternalInconsistency, UnknownLabel
from .metric import is_modular, orbits, underlying_graph


def _canon(pair):
    a, b = pair
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Orientation:
    """Directions for every graph edge and every F pair."""

    edges: dict
    fpairs: dict

    def edge_dir(self, u, v):
        return self.edges[_canon((u, v))]

    def points(self, u, v):
        """True when the stored direction is u -> v (edge or F pair)."""
        key = _canon((u, v))
        tail, _ = self.edges[key] if key in self.edges else self.fpairs[key]
        return tail == u


@dataclass(frozen=True)
class ParityConstraint:
    """elem_a and elem_b must have equal (parity 0) or opposite booleans."""

    elem_a: tuple
    elem_b: tuple
    parity: int
    reason: tuple


@dataclass(frozen=True)
class OrientationConflict:
    """A cycle of parity constraints with odd total parity."""

    cycle: tuple

    def __len__(self):
        return len(self.cycle)


def _elements(g, fset):
    elems = [("edge",) + e for e in sorted(g.edges)]
    elems += [("fpair",) + _canon(p) for p in sorted(_canon(p) for p in fset)]
    return elems


def parity_constraints(g, fset):
    """All parity equations induced by 4-cycles and F shortest paths.

    Boolean convention: value 0 on element (kind, a, b) with a < b means the
    direction a -> b.
    """
    cons = []
    edge_list = sorted(g.edges)
    for e, f in combinations(edge_list, 2):
        a, b = e
        c, d = f
        if len({a, b, c, d}) != 4:
            continue
        # cycle a,b,c,d: sides ab and dc point the same way; parity 1 on
        # canonical booleans because dc is the reverse of the stored cd
        if g.has_edge(b, c) and g.has_edge(a, d):
            cons.append(
                ParityConstraint(("edge",) + e, ("edge",) + f, 1, ("cycle", (a, b, c, d)))
            )
        # cycle a,b,d,c: sides ab and cd point the same way
        if g.has_edge(b, d) and g.has_edge(a, c):
            cons.append(
                ParityConstraint(("edge",) + e, ("edge",) + f, 0, ("cycle", (a, b, d, c)))
            )
    for x, y in sorted(_canon(p) for p in fset):
        dxy = g.d(x, y)
        for u, v in edge_list:
            # edge (u, v) used in direction u -> v on some shortest x-y walk
            if g.d(x, u) + 1 + g.d(v, y) == dxy:
                cons.append(
                    ParityConstraint(
                        ("fpair", x, y), ("edge", u, v), 0, ("path", (x, u, v, y))
                    )
                )
            if g.d(x, v) + 1 + g.d(u, y) == dxy:
                cons.append(
                    ParityConstraint(
                        ("fpair", x, y), ("edge", u, v), 1, ("path", (x, v, u, y))
                    )
                )
    return cons


class _ParityUnionFind:
    def __init__(self, elems):
        self.parent = {e: e for e in elems}
        self.rank = {e: 0 for e in elems}
        self.par = {e: 0 for e in elems}

    def find(self, e):
        path = []
        while self.parent[e] != e:
            path.append(e)
            e = self.parent[e]
        root = e
        p = 0
        for node in reversed(path):
            p ^= self.par[node]
            self.parent[node] = root
            self.par[node] = p
        return root

    def parity_to_root(self, e):
        self.find(e)
        return self.par[e]

    def union(self, a, b, parity):
        """Returns True if merged/consistent, False on parity conflict."""
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.par[a], self.par[b]
        if ra == rb:
            return (pa ^ pb) == parity
        need = pa ^ pb ^ parity
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.par[rb] = need
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def admissible_orientation(g, fset=()):
    """Orient all edges and F pairs consistently, or return a conflict cycle.

    Deterministic: elements are processed in lexicographic order and every
    free parity class takes the direction whose tail is the smaller label.
    """
    fset = frozenset(_canon(p) for p in fset)
    for x, y in fset:
        if x == y:
            raise ValueError(f"degenerate pair ({x},{y})")
        g.d(x, y)  # raises UnknownLabel for foreign labels
    elems = _elements(g, fset)
    cons = parity_constraints(g, fset)
    uf = _ParityUnionFind(elems)
    accepted = []
    for c in cons:
        if not uf.union(c.elem_a, c.elem_b, c.parity):
            return OrientationConflict(_conflict_cycle(accepted, c))
        accepted.append(c)

    value = {}
    root_val = {}
    for e in elems:
        root = uf.find(e)
        p = uf.parity_to_root(e)
        if root not in root_val:
            root_val[root] = p  # forces value 0 on this element
        value[e] = p ^ root_val[root]
    edges = {}
    fpairs = {}
    for e in elems:
        kind, a, b = e
        direction = (a, b) if value[e] == 0 else (b, a)
        if kind == "edge":
            edges[(a, b)] = direction
        else:
            fpairs[(a, b)] = direction
    o = Orientation(edges, fpairs)
    bad = verify_orientation(g, fset, o)
    if bad is not None:
        raise InternalInconsistency(f"constructed orientation fails check: {bad}")
    return o


def _conflict_cycle(accepted, violated):
    """Close the violated constraint into a cycle through accepted ones."""
    adj = {}
    for c in accepted:
        adj.setdefault(c.elem_a, []).append((c.elem_b, c))
        adj.setdefault(c.elem_b, []).append((c.elem_a, c))
    start, goal = violated.elem_a, violated.elem_b
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            break
        for v, c in adj.get(u, ()):
            if v not in prev:
                prev[v] = (u, c)
                queue.append(v)
    if goal not in prev:
        raise InternalInconsistency("conflicting constraint closes no cycle")
    chain = []
    node = goal
    while prev[node] is not None:
        node, c = prev[node]
        chain.append(c)
    chain.reverse()
    chain.append(violated)
    return tuple(chain)


def verify_orientation(g, fset, o):
    """Re-check both admissibility families by exhaustive enumeration.

    Returns None when admissible, else a description of the first failure.
    """
    for e, f in combinations(sorted(g.edges), 2):
        a, b = e
        c, d = f
        if len({a, b, c, d}) != 4:
            continue
        if g.has_edge(b, c) and g.has_edge(a, d):
            if o.points(a, b) != o.points(d, c):
                return ("cycle", (a, b, c, d))
        if g.has_edge(b, d) and g.has_edge(a, c):
            if o.points(a, b) != o.points(c, d):
                return ("cycle", (a, b, d, c))
    for x, y in sorted(_canon(p) for p in fset):
        tail, head = o.fpairs[(x, y)]
        dxy = g.d(tail, head)
        for u, v in sorted(g.edges):
            if g.d(tail, u) + 1 + g.d(v, head) == dxy and not o.points(u, v):
                return ("path", (tail, u, v, head))
            if g.d(tail, v) + 1 + g.d(u, head) == dxy and not o.points(v, u):
                return ("path", (tail, v, u, head))
    return None


# --- hardness side -----------------------------------------------------------


@dataclass(frozen=True)
class CertStep:
    src: tuple
    dst: tuple
    relation: str  # "parallel" or "along"
    witness: tuple


@dataclass(frozen=True)
class HardnessCertificate:
    kind: str  # "not_modular" | "not_orientable" | "not_f_orientable"
    witness: tuple | None = None
    steps: tuple = ()

    @property
    def tuples(self):
        if not self.steps:
            return ()
        return (self.steps[0].src,) + tuple(s.dst for s in self.steps)


def _parallel_ok(g, p, q):
    a, b = p
    c, d = q
    if not (g.has_edge(a, b) and g.has_edge(c, d)):
        return None
    if len({a, b, c, d}) != 4:
        return None
    # (a, b, d, c) must be a 4-cycle
    if g.has_edge(b, d) and g.has_edge(c, a):
        return (a, b, d, c)
    return None


def _along_ok(g, fset, p, q):
    """p an edge tuple, q an F tuple, with (q0, p0, p1, q1) a shortest subpath."""
    a, b = p
    c, d = q
    if not g.has_edge(a, b) or _canon(q) not in fset or p == q:
        return None
    if g.d(c, a) + 1 + g.d(b, d) == g.d(c, d):
        return (c, a, b, d)
    return None


def tuple_graph(g, fset=()):
    """The relation graph on directed edge / F-pair tuples.

    Adjacency maps each tuple to (other, relation, witness) triples, sorted.
    """
    fset = frozenset(_canon(p) for p in fset)
    nodes = set()
    for a, b in g.edges:
        nodes.add((a, b))
        nodes.add((b, a))
    for a, b in fset:
        nodes.add((a, b))
        nodes.add((b, a))
    adj = {t: [] for t in nodes}
    for p in sorted(nodes):
        for q in sorted(nodes):
            if p >= q:
                continue
            links = []
            w = _parallel_ok(g, p, q)
            if w is not None:
                links.append(("parallel", w))
            w = _along_ok(g, fset, p, q)
            if w is not None:
                links.append(("along", w))
            w = _along_ok(g, fset, q, p)
            if w is not None:
                links.append(("along", w))
            for rel, w in links:
                adj[p].append((q, rel, w))
                adj[q].append((p, rel, w))
    return {t: tuple(sorted(adj[t])) for t in sorted(nodes)}


def reversal_path(g, fset=()):
    """Shortest relation path from some tuple to its reversal, else None."""
    adj = tuple_graph(g, fset)
    for start in sorted(adj):
        goal = (start[1], start[0])
        prev = {start: None}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            if u == goal:
                steps = []
                node = goal
                while prev[node] is not None:
                    pnode, rel, w = prev[node]
                    steps.append(CertStep(pnode, node, rel, w))
                    node = pnode
                steps.reverse()
                return tuple(steps)
            for v, rel, w in adj[u]:
                if v not in prev:
                    prev[v] = (u, rel, w)
                    queue.append(v)
    return None


def has_reversal_path(g, fset=()):
    return reversal_path(g, fset) is not None


def hardness_certificate(g, fset, conflict=None):
    """Build and re-verify a tuple-reversal path certificate."""
    fset = frozenset(_canon(p) for p in fset)
    steps = reversal_path(g, fset)
    if steps is None:
        raise InternalInconsistency("orientation conflict but no reversal path")
    kind = "not_f_orientable" if fset else "not_orientable"
    cert = HardnessCertificate(kind=kind, steps=steps)
    problem = check_certificate(g, fset, cert)
    if problem is not None:
        raise InternalInconsistency(f"built certificate fails check: {problem}")
    return cert


def check_certificate(g_or_metric, fset, cert):
    """Independently re-verify a certificate; None when it is sound."""
    fset = frozenset(_canon(p) for p in fset)
    if cert.kind == "not_modular":
        m = g_or_metric
        if len(cert.witness) != 3:
            return "witness must be a label triple"
        if m.medians(*cert.witness):
            return f"triple {cert.witness} has a median"
        return None
    g = g_or_metric
    if not cert.steps:
        return "empty step list"
    first, last = cert.steps[0].src, cert.steps[-1].dst
    if (first[1], first[0]) != last:
        return "endpoints are not mutual reversals"
    if cert.kind == "not_orientable" and any(s.relation != "parallel" for s in cert.steps):
        return "orientability certificate may use parallel steps only"
    prev_dst = None
    for s in cert.steps:
        if prev_dst is not None and s.src != prev_dst:
            return f"broken chain at {s.src}"
        prev_dst = s.dst
        if s.relation == "parallel":
            if _parallel_ok(g, s.src, s.dst) is None:
                return f"parallel step {s.src}->{s.dst} unwitnessed"
        elif s.relation == "along":
            if (
                _along_ok(g, fset, s.src, s.dst) is None
                and _along_ok(g, fset, s.dst, s.src) is None
            ):
                return f"along step {s.src}->{s.dst} unwitnessed"
        else:
            return f"unknown relation {s.relation!r}"
    return None


# --- the dichotomy -----------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    tractable: bool
    complex: object = None
    orientation: Orientation | None = None
    certificate: HardnessCertificate | None = None


def classify(m, fset=()):
    """Decide the dichotomy for (mu, F).

    Tractable verdicts carry the solver state space (minimal graph oriented
    and equipped with the full order relation); hard verdicts carry either a
    median-free triple or a verified tuple-reversal path.
    """
    fset = frozenset(_canon(tuple(p)) for p in fset)
    for x, y in fset:
        m.d(x, y)
    verdict = is_modular(m)
    if not verdict:
        return Classification(
            False,
            certificate=HardnessCertificate("not_modular", witness=verdict.witness),
        )
    g = underlying_graph(m)
    if not orbits(g).orbit_invariant:
        raise InternalInconsistency("modular metric with non-invariant orbits")
    result = admissible_orientation(g, fset)
    if isinstance(result, OrientationConflict):
        return Classification(
            False, certificate=hardness_certificate(g, fset, result)
        )
    cx = build_complex(g, result, "precedes")
    return Classification(True, complex=cx, orientation=result)
