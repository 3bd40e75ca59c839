"""Line-oriented instance files: parsing, validation, canonical emission.

Format (comments start with '#', blank lines ignored):

    [metric]
    labels a b c d
    0 1 2 1        # one matrix row per label, rationals as ints or p/q
    ...
    [f]
    a c            # one unordered pair per line (section optional)
    [terms]
    n 2
    pairwise 0 1 1
    anchor 0 a 1/2
    pair 1 a c 1
    hard_anchor 0 a
    hard_pair 1 a c
    [options]      # optional: method, local, start, brute_limit, seed, trace
    method dsda
    start a c
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AxiomViolation, ParseError, SemanticError
from .metric import validate_metric
from .rationals import fmt
from .solver import Instance, PairwiseTerm, UnaryTerm

_SECTIONS = ("metric", "f", "terms", "options")
_METHODS = ("dsda", "sda", "brute")
_LOCALS = ("blp", "brute")


@dataclass
class ProblemSpec:
    labels: tuple
    matrix: tuple
    f_pairs: tuple
    n: int
    unary: tuple
    pairwise: tuple
    options: dict = field(default_factory=dict)

    def to_metric(self):
        return validate_metric(self.matrix, self.labels)

    def to_instance(self):
        metric = self.to_metric()
        unary = [
            UnaryTerm(var, kind, frozenset(t) if kind.endswith("pair") else t, w)
            for var, kind, t, w in self.unary
        ]
        pairwise = [PairwiseTerm(i, j, w) for i, j, w in self.pairwise]
        return Instance(metric, [frozenset(p) for p in self.f_pairs], self.n, unary, pairwise)

    def emit(self):
        lines = ["[metric]", "labels " + " ".join(self.labels)]
        for row in self.matrix:
            lines.append(" ".join(fmt(x) for x in row))
        if self.f_pairs:
            lines.append("[f]")
            for a, b in self.f_pairs:
                lines.append(f"{a} {b}")
        lines.append("[terms]")
        lines.append(f"n {self.n}")
        for i, j, w in self.pairwise:
            lines.append(f"pairwise {i} {j} {fmt(w)}")
        for var, kind, target, w in self.unary:
            if kind == "anchor":
                lines.append(f"anchor {var} {target} {fmt(w)}")
            elif kind == "hard_anchor":
                lines.append(f"hard_anchor {var} {target}")
            elif kind == "pair":
                a, b = sorted(target)
                lines.append(f"pair {var} {a} {b} {fmt(w)}")
            else:
                a, b = sorted(target)
                lines.append(f"hard_pair {var} {a} {b}")
        if self.options:
            lines.append("[options]")
            for key in sorted(self.options):
                val = self.options[key]
                if key == "start":
                    lines.append("start " + " ".join(val))
                else:
                    lines.append(f"{key} {val}")
        return "\n".join(lines) + "\n"


def _tokenize(text):
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        tokens = []
        col = 1
        i = 0
        for tok in body.split():
            at = body.index(tok, i)
            tokens.append((tok, at + 1))
            i = at + len(tok)
        out.append((lineno, tokens))
    return out


def _rational(tok, lineno, col, what="number"):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, col, f"bad {what}: {tok!r}") from None


def _int(tok, lineno, col, what="integer"):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, col, f"bad {what}: {tok!r}") from None


def parse_instance(text):
    """Parse the documented format into a ProblemSpec.

    Structural problems raise ParseError with a position; consistent syntax
    with bad content (unknown label, negative weight, duplicate F pair)
    raises SemanticError.
    """
    lines = _tokenize(text)
    sections = {}
    current = None
    for lineno, tokens in lines:
        head, col = tokens[0]
        if head.startswith("["):
            name = head.strip("[]").lower()
            if name not in _SECTIONS:
                raise ParseError(lineno, col, f"unknown section {head!r}")
            if len(tokens) > 1:
                raise ParseError(lineno, tokens[1][1], "junk after section header")
            if name in sections:
                raise ParseError(lineno, col, f"duplicate section {head!r}")
            sections[name] = []
            current = name
        else:
            if current is None:
                raise ParseError(lineno, col, "content before any section header")
            sections[current].append((lineno, tokens))

    if "metric" not in sections:
        raise ParseError(1, 1, "missing [metric] section")
    if "terms" not in sections:
        raise ParseError(1, 1, "missing [terms] section")

    metric_lines = sections["metric"]
    if not metric_lines or metric_lines[0][1][0][0] != "labels":
        lineno = metric_lines[0][0] if metric_lines else 1
        raise ParseError(lineno, 1, "metric section must start with a labels line")
    lineno, tokens = metric_lines[0]
    labels = tuple(tok for tok, _ in tokens[1:])
    if not labels:
        raise ParseError(lineno, tokens[0][1], "no labels given")
    if len(set(labels)) != len(labels):
        raise SemanticError("duplicate labels")
    rows = []
    body = metric_lines[1:]
    if len(body) != len(labels):
        raise ParseError(lineno, 1, f"expected {len(labels)} matrix rows, got {len(body)}")
    for rlineno, rtokens in body:
        if len(rtokens) != len(labels):
            raise ParseError(rlineno, rtokens[0][1], "matrix row has wrong width")
        rows.append(tuple(_rational(t, rlineno, c, "distance") for t, c in rtokens))
    matrix = tuple(rows)
    label_set = set(labels)

    f_pairs = []
    for lineno, tokens in sections.get("f", []):
        if len(tokens) != 2:
            raise ParseError(lineno, tokens[0][1], "an F line is two labels")
        a, b = tokens[0][0], tokens[1][0]
        for lab, col in tokens:
            if lab not in label_set:
                raise SemanticError(f"F pair uses unknown label {lab!r}")
        if a == b:
            raise SemanticError(f"F pair ({a},{b}) is degenerate")
        pair = tuple(sorted((a, b)))
        if pair in f_pairs:
            raise SemanticError(f"duplicate F pair {pair}")
        f_pairs.append(pair)

    term_lines = sections["terms"]
    if not term_lines or term_lines[0][1][0][0] != "n":
        lineno = term_lines[0][0] if term_lines else 1
        raise ParseError(lineno, 1, "terms section must start with an n line")
    lineno, tokens = term_lines[0]
    if len(tokens) != 2:
        raise ParseError(lineno, tokens[0][1], "n line is 'n <count>'")
    n = _int(tokens[1][0], lineno, tokens[1][1], "variable count")
    if n < 1:
        raise SemanticError("variable count must be positive")

    def check_var(tok, lineno, col):
        v = _int(tok, lineno, col, "variable index")
        if not 0 <= v < n:
            raise SemanticError(f"variable index {v} out of range")
        return v

    def check_label(tok):
        if tok not in label_set:
            raise SemanticError(f"unknown label {tok!r}")
        return tok

    def check_weight(tok, lineno, col):
        w = _rational(tok, lineno, col, "weight")
        if w < 0:
            raise SemanticError(f"negative weight {tok}")
        return w

    unary = []
    pairwise = []
    for lineno, tokens in term_lines[1:]:
        kind, col = tokens[0]
        args = tokens[1:]
        if kind == "pairwise":
            if len(args) != 3:
                raise ParseError(lineno, col, "pairwise takes i j weight")
            i = check_var(args[0][0], lineno, args[0][1])
            j = check_var(args[1][0], lineno, args[1][1])
            if not i < j:
                raise SemanticError(f"pairwise indices must satisfy i < j, got {i},{j}")
            pairwise.append((i, j, check_weight(args[2][0], lineno, args[2][1])))
        elif kind == "anchor":
            if len(args) != 3:
                raise ParseError(lineno, col, "anchor takes var label weight")
            var = check_var(args[0][0], lineno, args[0][1])
            unary.append(
                (var, "anchor", check_label(args[1][0]), check_weight(args[2][0], lineno, args[2][1]))
            )
        elif kind == "hard_anchor":
            if len(args) != 2:
                raise ParseError(lineno, col, "hard_anchor takes var label")
            var = check_var(args[0][0], lineno, args[0][1])
            unary.append((var, "hard_anchor", check_label(args[1][0]), Fraction(1)))
        elif kind in ("pair", "hard_pair"):
            want = 4 if kind == "pair" else 3
            if len(args) != want:
                raise ParseError(lineno, col, f"{kind} takes var label label" + (" weight" if want == 4 else ""))
            var = check_var(args[0][0], lineno, args[0][1])
            a = check_label(args[1][0])
            b = check_label(args[2][0])
            pair = tuple(sorted((a, b)))
            if pair not in f_pairs:
                raise SemanticError(f"{kind} target {pair} is not an F pair")
            w = check_weight(args[3][0], lineno, args[3][1]) if want == 4 else Fraction(1)
            unary.append((var, kind, pair, w))
        else:
            raise ParseError(lineno, col, f"unknown term kind {kind!r}")

    options = {}
    for lineno, tokens in sections.get("options", []):
        key, col = tokens[0]
        args = tokens[1:]
        if key == "method":
            if len(args) != 1 or args[0][0] not in _METHODS:
                raise ParseError(lineno, col, f"method is one of {_METHODS}")
            options["method"] = args[0][0]
        elif key == "local":
            if len(args) != 1 or args[0][0] not in _LOCALS:
                raise ParseError(lineno, col, f"local is one of {_LOCALS}")
            options["local"] = args[0][0]
        elif key == "start":
            if len(args) != n:
                raise SemanticError(f"start needs {n} labels")
            options["start"] = tuple(check_label(t) for t, _ in args)
        elif key in ("brute_limit", "seed"):
            if len(args) != 1:
                raise ParseError(lineno, col, f"{key} takes one integer")
            options[key] = _int(args[0][0], lineno, args[0][1])
        elif key == "trace":
            if len(args) != 1 or args[0][0] not in ("on", "off"):
                raise ParseError(lineno, col, "trace is on or off")
            options["trace"] = args[0][0]
        else:
            raise ParseError(lineno, col, f"unknown option {key!r}")

    spec = ProblemSpec(
        labels=labels,
        matrix=matrix,
        f_pairs=tuple(f_pairs),
        n=n,
        unary=tuple(unary),
        pairwise=tuple(pairwise),
        options=options,
    )
    try:
        spec.to_instance()  # surfaces remaining content problems (metric axioms...)
    except (AxiomViolation, ValueError) as exc:
        raise SemanticError(str(exc)) from exc
    return spec
