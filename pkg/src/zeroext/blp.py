"""Basic LP relaxation of pairwise instances, with an exact simplex solver.

The relaxation carries one marginal variable per (variable, value) and one
joint variable per binary term and value pair, tied together by
normalization and marginalization equalities.  Everything is solved in exact
rational arithmetic with Bland's anti-cycling rule; minimizers of tight
relaxations are extracted by iterative variable fixing.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyDomain, TightnessViolated, Unbounded
from .rationals import INF


@dataclass(frozen=True)
class LinearProgram:
    """min c.x subject to A x = b, x >= 0, all coefficients rational."""

    var_names: tuple
    objective: tuple
    rows: tuple
    rhs: tuple

    @property
    def num_vars(self):
        return len(self.var_names)

    def dump(self):
        from .rationals import fmt

        lines = []
        obj = " + ".join(
            f"{fmt(c)}*{name}" for c, name in zip(self.objective, self.var_names) if c
        )
        lines.append(f"min {obj or '0'}")
        for row, b in zip(self.rows, self.rhs):
            terms = " + ".join(
                f"{fmt(a)}*{name}" for a, name in zip(row, self.var_names) if a
            )
            lines.append(f"  {terms or '0'} = {fmt(b)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible"
    value: object
    primal: dict


def simplex_solve(lp):
    """Two-phase primal simplex with Bland's rule over exact rationals."""
    n = lp.num_vars
    m = len(lp.rows)
    zero = Fraction(0)
    one = Fraction(1)

    # tableau rows: n structural columns, m artificial columns, then rhs
    width = n + m + 1
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in lp.rows[i]] + [zero] * m + [Fraction(lp.rhs[i])]
        if row[-1] < 0:
            row = [-x for x in row]
        row[n + i] = one
        rows.append(row)
    basis = [n + i for i in range(m)]

    def pivot(r, c):
        prow = rows[r]
        piv = prow[c]
        inv = one / piv
        nz = [j for j in range(width) if prow[j]]
        for j in nz:
            prow[j] *= inv
        for i in range(m):
            if i == r:
                continue
            factor = rows[i][c]
            if factor:
                target = rows[i]
                for j in nz:
                    target[j] -= factor * prow[j]
        basis[r] = c

    def run(cost, allowed):
        # reduced costs relative to the current basis
        z = [Fraction(cost[j]) if j < len(cost) else zero for j in range(width - 1)]
        zval = zero
        for i in range(m):
            cb = cost[basis[i]] if basis[i] < len(cost) else zero
            if cb:
                row = rows[i]
                for j in range(width - 1):
                    if row[j]:
                        z[j] -= cb * row[j]
                zval -= cb * row[-1]
        while True:
            enter = -1
            for j in range(allowed):
                if z[j] < 0 and j not in basis:
                    enter = j
                    break
            if enter < 0:
                return -zval
            leave = -1
            best = None
            for i in range(m):
                a = rows[i][enter]
                if a > 0:
                    ratio = rows[i][-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and basis[i] < basis[leave])
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                raise Unbounded("no leaving variable")
            pivot(leave, enter)
            coeff = z[enter]
            prow = rows[leave]
            for j in range(width - 1):
                if prow[j]:
                    z[j] -= coeff * prow[j]
            zval -= coeff * prow[-1]

    if m:
        phase1_cost = [zero] * n + [one] * m
        residue = run(phase1_cost, allowed=n + m)
        if residue > 0:
            return LPResult("infeasible", INF, {})
        # drive artificials out of the basis or drop their rows as redundant
        for i in range(m):
            if basis[i] >= n:
                prow = rows[i]
                col = next((j for j in range(n) if prow[j]), None)
                if col is not None:
                    pivot(i, col)

    objective = [Fraction(c) for c in lp.objective]
    run(objective + [zero] * m, allowed=n)
    x = [zero] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = rows[i][-1]
    value = sum((c * xi for c, xi in zip(objective, x)), zero)
    primal = {name: x[j] for j, name in enumerate(lp.var_names)}
    return LPResult("optimal", value, primal)


@dataclass(frozen=True)
class TableInstance:
    """Plain pairwise objective given by explicit cost tables.

    unary: one mapping per variable, label -> extended rational.
    binary: triples (i, j, table) with table[(a, b)] an extended rational.
    """

    n: int
    unary: tuple
    binary: tuple

    def cost_tables(self, domains):
        unary = tuple(
            {a: self.unary[i].get(a, INF) for a in domains[i]} for i in range(self.n)
        )
        binary = tuple(
            (
                i,
                j,
                {
                    (a, b): table.get((a, b), INF)
                    for a in domains[i]
                    for b in domains[j]
                },
            )
            for i, j, table in self.binary
        )
        return unary, binary

    def evaluate(self, assignment):
        total = Fraction(0)
        for i in range(self.n):
            c = self.unary[i].get(assignment[i], INF)
            if c == INF:
                return INF
            total += c
        for i, j, table in self.binary:
            c = table.get((assignment[i], assignment[j]), INF)
            if c == INF:
                return INF
            total += c
        return total


def build_blp(instance, domains):
    """Assemble the local-marginal relaxation of an instance restriction.

    Values whose unary cost is infinite are dropped from their domain;
    joint variables for infinite binary entries are omitted entirely.
    """
    unary, binary = instance.cost_tables(domains)
    live = []
    for i in range(instance.n):
        vals = [a for a in sorted(domains[i]) if unary[i][a] != INF]
        if not vals:
            raise EmptyDomain(i)
        live.append(vals)

    var_names = []
    objective = []
    col = {}
    for i in range(instance.n):
        for a in live[i]:
            col[("u", i, a)] = len(var_names)
            var_names.append(("u", i, a))
            objective.append(unary[i][a])
    joint_cols = []
    for t, (i, j, table) in enumerate(binary):
        cols_t = []
        for a in live[i]:
            for b in live[j]:
                cost = table[(a, b)]
                if cost == INF:
                    continue
                col[("p", t, a, b)] = len(var_names)
                var_names.append(("p", t, a, b))
                objective.append(cost)
                cols_t.append((a, b))
        joint_cols.append(cols_t)

    rows = []
    rhs = []

    def new_row():
        return [Fraction(0)] * len(var_names)

    for i in range(instance.n):
        row = new_row()
        for a in live[i]:
            row[col[("u", i, a)]] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for t, (i, j, _) in enumerate(binary):
        for a in live[i]:
            row = new_row()
            for b in live[j]:
                if ("p", t, a, b) in col:
                    row[col[("p", t, a, b)]] = Fraction(1)
            row[col[("u", i, a)]] -= Fraction(1)
            rows.append(row)
            rhs.append(Fraction(0))
        for b in live[j]:
            row = new_row()
            for a in live[i]:
                if ("p", t, a, b) in col:
                    row[col[("p", t, a, b)]] = Fraction(1)
            row[col[("u", j, b)]] -= Fraction(1)
            rows.append(row)
            rhs.append(Fraction(0))

    return LinearProgram(
        tuple(var_names),
        tuple(objective),
        tuple(tuple(r) for r in rows),
        tuple(rhs),
    )


def blp_value(instance, domains):
    """Optimal value of the relaxation, INF when infeasible."""
    result = simplex_solve(build_blp(instance, domains))
    return result.value


def extract_minimizer(instance, domains):
    """Integral minimizer of a tight relaxation by iterative fixing.

    For each variable in order, the first value (in label order) whose fixing
    preserves the LP optimum is committed.  TightnessViolated surfaces any
    failure of the tightness guarantee.
    """
    base = simplex_solve(build_blp(instance, domains))
    if base.status != "optimal":
        raise TightnessViolated("relaxation infeasible on the given domains")
    target = base.value
    working = [tuple(sorted(d)) for d in domains]
    assignment = []
    for i in range(instance.n):
        committed = None
        for a in working[i]:
            trial = list(working)
            trial[i] = (a,)
            try:
                r = simplex_solve(build_blp(instance, trial))
            except EmptyDomain:
                continue
            if r.status == "optimal" and r.value == target:
                committed = a
                working = trial
                break
        if committed is None:
            raise TightnessViolated(
                f"no value of variable {i} preserves the LP optimum"
            )
        assignment.append(committed)
    assignment = tuple(assignment)
    if instance.evaluate(assignment) != target:
        raise TightnessViolated(
            "extracted assignment does not achieve the LP optimum"
        )
    return assignment
