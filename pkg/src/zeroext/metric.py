"""Finite rational metric spaces, their minimal graphs, and edge orbits."""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    AxiomViolation,
    GraphStructureError,
    PathMetricMismatch,
    UnknownLabel,
)
from .rationals import as_fraction


class Metric:
    """Immutable finite metric space over string labels.

    Construct through validate_metric so the axioms are certified.
    """

    __slots__ = ("labels", "_index", "_dist")

    def __init__(self, labels, dist):
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._dist = tuple(tuple(row) for row in dist)

    def _i(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    @property
    def sorted_labels(self):
        return tuple(sorted(self.labels))

    def d(self, x, y):
        return self._dist[self._i(x)][self._i(y)]

    def interval(self, x, y):
        """All z with d(x,z) + d(z,y) = d(x,y)."""
        ix, iy = self._i(x), self._i(y)
        dxy = self._dist[ix][iy]
        return frozenset(
            lab
            for lab, iz in self._index.items()
            if self._dist[ix][iz] + self._dist[iz][iy] == dxy
        )

    def medians(self, x, y, z):
        return self.interval(x, y) & self.interval(y, z) & self.interval(x, z)

    def __eq__(self, other):
        return (
            isinstance(other, Metric)
            and self.labels == other.labels
            and self._dist == other._dist
        )

    def __hash__(self):
        return hash((self.labels, self._dist))

    def __repr__(self):
        return f"Metric(labels={self.labels})"


def validate_metric(matrix, labels):
    """Check all three metric axioms exactly and return a Metric.

    Raises AxiomViolation with the first witness in label order.
    """
    labels = tuple(str(lab) for lab in labels)
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    n = len(labels)
    rows = [list(r) for r in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("distance matrix must be square and match labels")
    dist = [[as_fraction(x) for x in row] for row in rows]

    for i in range(n):
        if dist[i][i] != 0:
            raise AxiomViolation("identity", (labels[i], labels[i]))
    for i in range(n):
        for j in range(n):
            if i != j and dist[i][j] == 0:
                raise AxiomViolation("identity", (labels[i], labels[j]))
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                raise AxiomViolation("symmetry", (labels[i], labels[j]))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if dist[i][j] + dist[j][k] < dist[i][k]:
                    raise AxiomViolation("triangle", (labels[i], labels[j], labels[k]))
    return Metric(labels, dist)


@dataclass(frozen=True)
class ModularityVerdict:
    modular: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.modular


def is_modular(m):
    """Brute-force median test over all unordered label triples."""
    for x, y, z in combinations(m.sorted_labels, 3):
        if not m.medians(x, y, z):
            return ModularityVerdict(False, (x, y, z))
    return ModularityVerdict(True, None)


class WeightedGraph:
    """Connected undirected graph with positive rational edge weights.

    Exposes both the unit-length distance d and the weighted path metric mu.
    """

    __slots__ = ("labels", "edges", "_index", "_adj", "_d", "_mu")

    def __init__(self, labels, edge_weights):
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        edges = {}
        for (u, v), w in edge_weights.items():
            if u not in self._index or v not in self._index:
                raise GraphStructureError(f"edge endpoint not a vertex: {(u, v)}")
            if u == v:
                raise GraphStructureError(f"self loop at {u!r}")
            w = as_fraction(w)
            if w <= 0:
                raise GraphStructureError(f"nonpositive weight on {(u, v)}")
            key = (u, v) if u < v else (v, u)
            if key in edges and edges[key] != w:
                raise GraphStructureError(f"conflicting weights on {key}")
            edges[key] = w
        self.edges = dict(sorted(edges.items()))
        adj = {lab: [] for lab in self.labels}
        for (u, v), w in self.edges.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        self._adj = {lab: tuple(sorted(nbrs)) for lab, nbrs in adj.items()}
        self._d = self._unit_distances()
        self._mu = self._weighted_distances()

    def _unit_distances(self):
        n = len(self.labels)
        table = []
        for src in self.labels:
            dist = {src: 0}
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v, _ in self._adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            if len(dist) != n:
                raise GraphStructureError("graph is not connected")
            table.append(tuple(dist[lab] for lab in self.labels))
        return tuple(table)

    def _weighted_distances(self):
        n = len(self.labels)
        big = None
        dist = [[big] * n for _ in range(n)]
        for i in range(n):
            dist[i][i] = Fraction(0)
        for (u, v), w in self.edges.items():
            i, j = self._index[u], self._index[v]
            dist[i][j] = dist[j][i] = w
        for k in range(n):
            dk = dist[k]
            for i in range(n):
                dik = dist[i][k]
                if dik is None:
                    continue
                di = dist[i]
                for j in range(n):
                    dkj = dk[j]
                    if dkj is None:
                        continue
                    via = dik + dkj
                    if di[j] is None or via < di[j]:
                        di[j] = via
        return tuple(tuple(row) for row in dist)

    def _i(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def d(self, x, y):
        return self._d[self._i(x)][self._i(y)]

    def mu(self, x, y):
        return self._mu[self._i(x)][self._i(y)]

    def neighbors(self, x):
        if x not in self._adj:
            raise UnknownLabel(x)
        return tuple(v for v, _ in self._adj[x])

    def weight(self, u, v):
        key = (u, v) if u < v else (v, u)
        return self.edges[key]

    def has_edge(self, u, v):
        key = (u, v) if u < v else (v, u)
        return key in self.edges

    @property
    def sorted_labels(self):
        return tuple(sorted(self.labels))

    def __repr__(self):
        return f"WeightedGraph({len(self.labels)} vertices, {len(self.edges)} edges)"


def metric_from_graph(g):
    """Path metric of a connected weighted graph, certified as a Metric."""
    matrix = [[g.mu(x, y) for y in g.labels] for x in g.labels]
    return validate_metric(matrix, g.labels)


def underlying_graph(m):
    """Minimal weighted graph whose path metric reproduces m.

    Edges are exactly the label pairs with no third point strictly between;
    the reconstruction is verified and PathMetricMismatch raised otherwise.
    """
    edges = {}
    for x, y in combinations(m.labels, 2):
        dxy = m.d(x, y)
        if all(
            m.d(x, z) + m.d(z, y) > dxy for z in m.labels if z != x and z != y
        ):
            key = (x, y) if x < y else (y, x)
            edges[key] = dxy
    try:
        g = WeightedGraph(m.labels, edges)
    except GraphStructureError as exc:
        raise PathMetricMismatch(str(exc)) from exc
    for x in m.labels:
        for y in m.labels:
            if g.mu(x, y) != m.d(x, y):
                raise PathMetricMismatch(f"path metric differs at {(x, y)}")
    return g


@dataclass(frozen=True)
class OrbitPartition:
    classes: tuple
    orbit_invariant: bool

    def class_of(self, edge):
        u, v = edge
        key = (u, v) if u < v else (v, u)
        for cls in self.classes:
            if key in cls:
                return cls
        raise UnknownLabel(edge)


def _opposite_side_pairs(g):
    """Unordered pairs of vertex-disjoint edges lying on a common 4-cycle."""
    edge_list = sorted(g.edges)
    for e, f in combinations(edge_list, 2):
        a, b = e
        c, d = f
        if len({a, b, c, d}) != 4:
            continue
        if g.has_edge(b, c) and g.has_edge(a, d):
            yield e, f
        elif g.has_edge(b, d) and g.has_edge(a, c):
            yield e, f


def orbits(g):
    """Partition edges into orbits and test weight invariance per class."""
    parent = {e: e for e in g.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for e, f in _opposite_side_pairs(g):
        re, rf = find(e), find(f)
        if re != rf:
            parent[max(re, rf)] = min(re, rf)

    groups = {}
    for e in g.edges:
        groups.setdefault(find(e), []).append(e)
    classes = tuple(
        frozenset(members) for _, members in sorted(groups.items())
    )
    invariant = all(
        len({g.edges[e] for e in cls}) == 1 for cls in classes
    )
    return OrbitPartition(classes, invariant)
