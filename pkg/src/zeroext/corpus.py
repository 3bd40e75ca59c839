"""Random generators for metrics, complexes, semilattices and instances.

Used by the demo scripts and the randomized test suites.  Every generator is
deterministic given its random.Random argument, and every produced object is
revalidated on the way out.
"""

from fractions import Fraction

from .complexes import build_complex
from .metric import WeightedGraph, is_modular, metric_from_graph
from .orientation import admissible_orientation
from .semilattice import validate_valuated_semilattice
from .solver import Instance, PairwiseTerm, UnaryTerm
from .rationals import INF

_WEIGHT_POOL = [
    Fraction(1),
    Fraction(2),
    Fraction(3),
    Fraction(1, 2),
    Fraction(3, 2),
    Fraction(2, 3),
    Fraction(5, 4),
]


def _weight(rng):
    return rng.choice(_WEIGHT_POOL)


def random_tree_graph(rng, n, weighted=True):
    """Random tree on labels t0..t{n-1}; any positive weights are fine."""
    labels = [f"t{i}" for i in range(n)]
    edges = {}
    for i in range(1, n):
        j = rng.randrange(i)
        w = _weight(rng) if weighted else Fraction(1)
        edges[tuple(sorted((labels[i], labels[j])))] = w
    return WeightedGraph(labels, edges)


def grid_graph(rng, rows, cols, weighted=True):
    """Grid with one weight per parallel class, keeping orbit invariance."""
    labels = [f"g{r}-{c}" for r in range(rows) for c in range(cols)]
    col_w = [_weight(rng) if weighted else Fraction(1) for _ in range(cols - 1)]
    row_w = [_weight(rng) if weighted else Fraction(1) for _ in range(rows - 1)]
    edges = {}
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges[tuple(sorted((f"g{r}-{c}", f"g{r}-{c+1}")))] = col_w[c]
            if r + 1 < rows:
                edges[tuple(sorted((f"g{r}-{c}", f"g{r+1}-{c}")))] = row_w[r]
    return WeightedGraph(labels, edges)


def product_graph(g1, g2):
    """Cartesian product of connected weighted graphs."""
    labels = [f"{a}|{b}" for a in g1.labels for b in g2.labels]
    edges = {}
    for a in g1.labels:
        for (u, v), w in g2.edges.items():
            edges[tuple(sorted((f"{a}|{u}", f"{a}|{v}")))] = w
    for (u, v), w in g1.edges.items():
        for b in g2.labels:
            edges[tuple(sorted((f"{u}|{b}", f"{v}|{b}")))] = w
    return WeightedGraph(labels, edges)


def random_modular_graph(rng, max_vertices=9, weighted=True):
    """A graph whose path metric is modular and orientable."""
    kind = rng.choice(["tree", "grid", "product"])
    if kind == "tree":
        g = random_tree_graph(rng, rng.randint(2, max_vertices), weighted)
    elif kind == "grid":
        dims = [(2, 2), (2, 3), (2, 4), (3, 3)]
        rows, cols = rng.choice([d for d in dims if d[0] * d[1] <= max_vertices] or [(2, 2)])
        g = grid_graph(rng, rows, cols, weighted)
    else:
        t1 = random_tree_graph(rng, rng.randint(2, 3), weighted)
        t2 = random_tree_graph(rng, rng.randint(2, max(2, max_vertices // 2)), weighted)
        g = product_graph(t1, t2)
        if len(g.labels) > max_vertices:
            g = random_tree_graph(rng, rng.randint(2, max_vertices), weighted)
    m = metric_from_graph(g)
    assert is_modular(m)
    return g


def random_modular_metric(rng, max_vertices=9, weighted=True):
    return metric_from_graph(random_modular_graph(rng, max_vertices, weighted))


def random_f(rng, labels, max_pairs=3):
    labels = sorted(labels)
    pairs = set()
    for _ in range(rng.randint(0, max_pairs)):
        a, b = rng.sample(labels, 2)
        pairs.add(tuple(sorted((a, b))))
    return sorted(pairs)


def random_complex(rng, max_vertices=8, weighted=True):
    """Random oriented modular graph with a random companion relation."""
    g = random_modular_graph(rng, max_vertices, weighted)
    o = admissible_orientation(g, [])
    rel_kind = rng.choice(["precedes", "boolean_pair"])
    return build_complex(g, o, rel_kind)


def random_instance(rng, metric, fset, max_vars=3, max_terms=6):
    """Feasible random instance over the given tractable pair (metric, F)."""
    n = rng.randint(1, max_vars)
    labels = sorted(metric.labels)
    fset = [tuple(sorted(p)) for p in fset]
    unary = []
    pairwise = []
    budget = rng.randint(1, max_terms)
    hard_used = set()
    for _ in range(budget):
        kinds = ["anchor", "pairwise"]
        if fset:
            kinds.append("pair")
        if len(hard_used) < n:
            kinds.append("hard")
        kind = rng.choice(kinds)
        if kind == "pairwise" and n >= 2:
            i, j = sorted(rng.sample(range(n), 2))
            pairwise.append(PairwiseTerm(i, j, _weight(rng)))
        elif kind == "anchor":
            unary.append(
                UnaryTerm(rng.randrange(n), "anchor", rng.choice(labels), _weight(rng))
            )
        elif kind == "pair":
            unary.append(
                UnaryTerm(
                    rng.randrange(n),
                    "pair",
                    frozenset(rng.choice(fset)),
                    _weight(rng),
                )
            )
        elif kind == "hard":
            var = rng.choice([v for v in range(n) if v not in hard_used])
            hard_used.add(var)
            if fset and rng.random() < 0.5:
                unary.append(
                    UnaryTerm(var, "hard_pair", frozenset(rng.choice(fset)), _weight(rng))
                )
            else:
                unary.append(
                    UnaryTerm(var, "hard_anchor", rng.choice(labels), _weight(rng))
                )
    return Instance(metric, [frozenset(p) for p in fset], n, unary, pairwise)


# --- random valuated modular semilattices -------------------------------------


def _chain(rng, length, prefix="c"):
    elems = [f"{prefix}{i}" for i in range(length)]
    order = [(elems[i], elems[i + 1]) for i in range(length - 1)]
    vals = {}
    total = Fraction(0)
    for e in elems:
        vals[e] = total
        total += _weight(rng)
    return elems, order, vals


def random_semilattice(rng, max_elements=8):
    """Random member of a family of small valuated modular semilattices."""
    family = rng.choice(["chain", "star", "tree", "grid", "cube", "m3"])
    if family == "chain":
        elems, order, vals = _chain(rng, rng.randint(1, max_elements))
        return validate_valuated_semilattice(elems, order, vals)
    if family == "star":
        k = rng.randint(1, max_elements - 1)
        elems = ["s"] + [f"a{i}" for i in range(k)]
        order = [("s", f"a{i}") for i in range(k)]
        vals = {"s": Fraction(0)}
        for i in range(k):
            vals[f"a{i}"] = _weight(rng)
        return validate_valuated_semilattice(elems, order, vals)
    if family == "tree":
        n = rng.randint(2, max_elements)
        elems = [f"n{i}" for i in range(n)]
        order = []
        vals = {"n0": Fraction(0)}
        for i in range(1, n):
            j = rng.randrange(i)
            order.append((f"n{j}", f"n{i}"))
            vals[f"n{i}"] = vals[f"n{j}"] + _weight(rng)
        return validate_valuated_semilattice(elems, order, vals)
    if family == "grid":
        rows = rng.randint(2, 2)
        cols = rng.randint(2, max_elements // 2)
        row_v = [Fraction(0)]
        for _ in range(rows - 1):
            row_v.append(row_v[-1] + _weight(rng))
        col_v = [Fraction(0)]
        for _ in range(cols - 1):
            col_v.append(col_v[-1] + _weight(rng))
        elems = [(r, c) for r in range(rows) for c in range(cols)]
        order = [
            ((r1, c1), (r2, c2))
            for r1, c1 in elems
            for r2, c2 in elems
            if r1 <= r2 and c1 <= c2
        ]
        vals = {(r, c): row_v[r] + col_v[c] for r, c in elems}
        return validate_valuated_semilattice(elems, order, vals)
    if family == "cube":
        unit = [_weight(rng) for _ in range(3)]
        elems = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
        order = [
            (e, f)
            for e in elems
            for f in elems
            if all(x <= y for x, y in zip(e, f))
        ]
        vals = {e: sum((unit[i] for i in range(3) if e[i]), Fraction(0)) for e in elems}
        return validate_valuated_semilattice(elems, order, vals)
    # m3: bottom, three atoms at equal valuation, top
    t = _weight(rng)
    elems = ["bot", "m0", "m1", "m2", "top"]
    order = [("bot", m) for m in ("m0", "m1", "m2")] + [
        (m, "top") for m in ("m0", "m1", "m2")
    ]
    vals = {"bot": Fraction(0), "m0": t, "m1": t, "m2": t, "top": 2 * t}
    return validate_valuated_semilattice(elems, order, vals)


def random_function(rng, lat, inf_prob=Fraction(0), value_pool=None):
    """Random extended-rational table on a semilattice, nonempty domain."""
    pool = value_pool or [Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3)]
    while True:
        f = {}
        for e in lat.elements:
            if rng.random() < inf_prob:
                f[e] = INF
            else:
                f[e] = rng.choice(pool)
        if any(v != INF for v in f.values()):
            return f
