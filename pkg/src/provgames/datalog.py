"""Non-recursive Datalog with negation: syntax, validation, grounding, evaluation.

Program files hold rules ``head :- lit, ..., lit.``; a literal is an atom,
optionally prefixed by ``not`` (or ``!``). Database files hold ground facts
``R(c1,...,cn) [@annotation].`` Comments run from ``%`` to end of line.
Identifiers starting with an uppercase letter are variables, everything
else is a constant.
"""

import itertools
import re
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

from .errors import (
    ArityError,
    DatalogSyntaxError,
    DuplicateFactError,
    EdbIdbConflictError,
    NegationUnsupportedError,
    RecursiveProgramError,
)
from .polynomial import Polynomial, Semiring, pprod, psum


@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return self.name


def term(name):
    if not name:
        raise ValueError("empty term")
    return Var(name) if name[0].isupper() else Const(name)


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple

    @classmethod
    def of(cls, pred, *names):
        return cls(pred, tuple(term(n) for n in names))

    @property
    def arity(self):
        return len(self.args)

    def is_ground(self):
        return all(isinstance(t, Const) for t in self.args)

    def variables(self):
        return {t.name for t in self.args if isinstance(t, Var)}

    def constants(self):
        return tuple(t.name for t in self.args if isinstance(t, Const))

    def substitute(self, binding):
        return Atom(
            self.pred,
            tuple(Const(binding[t.name]) if isinstance(t, Var) else t for t in self.args),
        )

    def __str__(self):
        return f"{self.pred}({','.join(str(t) for t in self.args)})"

    def __repr__(self):
        return f"Atom({str(self)!r})"

    def __lt__(self, other):
        return (self.pred, tuple(map(str, self.args))) < (other.pred, tuple(map(str, other.args)))


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __str__(self):
        return str(self.atom) if self.positive else f"not {self.atom}"


@dataclass(frozen=True)
class Rule:
    index: int
    head: Atom
    body: tuple

    def variables(self):
        """Variable names of the rule in lexicographic order."""
        names = set(self.head.variables())
        for lit in self.body:
            names |= lit.atom.variables()
        return tuple(sorted(names))

    def __str__(self):
        return f"{self.head} :- {', '.join(str(l) for l in self.body)}."


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    @property
    def idb(self):
        return frozenset(r.head.pred for r in self.rules)

    @property
    def edb(self):
        idb = self.idb
        return frozenset(
            lit.atom.pred for r in self.rules for lit in r.body if lit.atom.pred not in idb
        )

    def arities(self):
        out = {}
        for r in self.rules:
            for a in (r.head, *(l.atom for l in r.body)):
                out.setdefault(a.pred, a.arity)
        return out

    def is_positive(self):
        return all(lit.positive for r in self.rules for lit in r.body)

    def rules_for(self, pred):
        return [r for r in self.rules if r.head.pred == pred]

    def constants(self):
        out = set()
        for r in self.rules:
            out.update(r.head.constants())
            for lit in r.body:
                out.update(lit.atom.constants())
        return out

    def idb_order(self):
        """IDB predicates so that every predicate follows those it depends on."""
        idb = self.idb
        ts = TopologicalSorter({p: set() for p in sorted(idb)})
        for r in self.rules:
            ts.add(r.head.pred, *(l.atom.pred for l in r.body if l.atom.pred in idb))
        return [p for p in ts.static_order() if p in idb]


@dataclass(frozen=True)
class Database:
    facts: tuple = ()
    annotations: dict = field(default_factory=dict, compare=False, hash=False)
    _set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.facts))

    def __contains__(self, atom):
        return atom in self._set

    def annotation(self, atom):
        return self.annotations.get(atom, str(atom))

    def constants(self):
        return {c for f in self.facts for c in f.constants()}

    def predicates(self):
        out = {}
        for f in self.facts:
            out.setdefault(f.pred, f.arity)
        return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>%[^\n]*)|(?P<implies>:-)|(?P<ident>[A-Za-z0-9_]+)"
    r"|(?P<punct>[(),.@!])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(source):
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise DatalogSyntaxError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(text if kind == "punct" else kind, text, line, pos - line_start + 1))
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, source):
        self.toks = _tokenize(source)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        return DatalogSyntaxError(f"{msg}, found {found!r}", tok.line, tok.col)

    def expect(self, kind, what=None):
        tok = self.tok
        if tok.kind != kind:
            raise self.error(f"expected {what or kind!r}")
        self.i += 1
        return tok

    def accept(self, kind):
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def atom(self):
        pred = self.expect("ident", "predicate name").text
        self.expect("(")
        args = [term(self.expect("ident", "term").text)]
        while self.accept(","):
            args.append(term(self.expect("ident", "term").text))
        self.expect(")")
        return Atom(pred, tuple(args))

    def literal(self):
        positive = True
        if self.tok.kind == "!":
            self.i += 1
            positive = False
        elif (
            self.tok.kind == "ident"
            and self.tok.text == "not"
            and self.toks[self.i + 1].kind == "ident"
        ):
            self.i += 1
            positive = False
        return Literal(self.atom(), positive)

    def at_end(self):
        return self.tok.kind == "eof"


def parse_program(source):
    """Parse and validate a program; rules are numbered from 1 in file order."""
    p = _Parser(source)
    rules = []
    while not p.at_end():
        start = p.tok
        head = p.atom()
        if p.tok.kind == ".":
            raise DatalogSyntaxError(
                "bodyless clause in program (facts belong in the database file)",
                start.line,
                start.col,
            )
        p.expect("implies", ":-")
        body = [p.literal()]
        while p.accept(","):
            body.append(p.literal())
        p.expect(".")
        rules.append(Rule(len(rules) + 1, head, tuple(body)))
    prog = Program(tuple(rules))
    validate_program(prog)
    return prog


def parse_database(source):
    p = _Parser(source)
    facts = []
    annotations = {}
    seen = set()
    while not p.at_end():
        start = p.tok
        atom = p.atom()
        if not atom.is_ground():
            raise DatalogSyntaxError(f"fact {atom} is not ground", start.line, start.col)
        ann = None
        if p.accept("@"):
            ann = p.expect("ident", "annotation name").text
        p.expect(".")
        if atom in seen:
            raise DuplicateFactError(f"duplicate fact {atom} at line {start.line}")
        seen.add(atom)
        facts.append(atom)
        annotations[atom] = ann if ann is not None else str(atom)
    arity = {}
    for f in facts:
        if arity.setdefault(f.pred, f.arity) != f.arity:
            raise ArityError(f"predicate {f.pred} used with arities {arity[f.pred]} and {f.arity}")
    return Database(tuple(sorted(facts)), annotations)


def parse_atom(text):
    """Parse a single atom such as ``3Hop(a,a)``; a ``not``/``!`` prefix is
    reported through the second return value."""
    p = _Parser(text)
    lit = p.literal()
    p.accept(".")
    if not p.at_end():
        raise p.error("trailing input after atom")
    return lit.atom, lit.positive


def validate_program(prog):
    arity = {}
    for r in prog.rules:
        for a in (r.head, *(l.atom for l in r.body)):
            if arity.setdefault(a.pred, a.arity) != a.arity:
                raise ArityError(
                    f"predicate {a.pred} used with arities {arity[a.pred]} and {a.arity} (rule r{r.index})"
                )
    deps = {}
    for r in prog.rules:
        deps.setdefault(r.head.pred, set()).update(l.atom.pred for l in r.body)
    try:
        tuple(TopologicalSorter(deps).static_order())
    except CycleError as exc:
        cycle = list(exc.args[1])
        raise RecursiveProgramError(list(reversed(cycle))) from None


def validate(prog, db):
    """Check that program and database fit together."""
    validate_program(prog)
    clash = sorted(prog.idb & set(db.predicates()))
    if clash:
        raise EdbIdbConflictError(f"predicate {clash[0]} has both rules and facts")
    arity = prog.arities()
    for pred, n in db.predicates().items():
        if arity.get(pred, n) != n:
            raise ArityError(f"predicate {pred} has arity {arity[pred]} in the program but {n} in the database")


def format_program(prog):
    return "".join(f"{r}\n" for r in prog.rules)


def format_database(db):
    out = []
    for f in db.facts:
        ann = db.annotations.get(f)
        out.append(f"{f}.\n" if ann in (None, str(f)) else f"{f} @{ann}.\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# grounding and reference evaluation


def active_domain(prog, db):
    return tuple(sorted(prog.constants() | db.constants()))


@dataclass(frozen=True)
class GroundRule:
    rule: Rule
    binding: tuple  # ((var, const), ...) in variable-name order

    @property
    def mapping(self):
        return dict(self.binding)

    @property
    def constants(self):
        return tuple(c for _, c in self.binding)

    def head(self):
        return self.rule.head.substitute(self.mapping)

    def goals(self):
        m = self.mapping
        return [Literal(l.atom.substitute(m), l.positive) for l in self.rule.body]


def ground_rule(rule, adom):
    names = rule.variables()
    for values in itertools.product(adom, repeat=len(names)):
        yield GroundRule(rule, tuple(zip(names, values)))


def ground(prog, adom):
    """Every rule instantiated over ``adom`` for all of its variables."""
    out = []
    for r in prog.rules:
        out.extend(ground_rule(r, adom))
    return out


def _match(atom, fact, binding):
    b = dict(binding)
    for t, c in zip(atom.args, fact.args):
        if isinstance(t, Const):
            if t != c:
                return None
        elif b.setdefault(t.name, c.name) != c.name:
            return None
    return b


def _rule_matches(rule, rel, adom):
    """Bindings satisfying the body: join positive goals, then range the
    remaining variables over ``adom`` and filter negated goals."""
    pos = [l.atom for l in rule.body if l.positive]
    neg = [l.atom for l in rule.body if not l.positive]
    names = rule.variables()

    def join(i, binding):
        if i == len(pos):
            yield binding
            return
        a = pos[i]
        for fact in rel.get(a.pred, ()):
            b = _match(a, fact, binding)
            if b is not None:
                yield from join(i + 1, b)

    for b in join(0, {}):
        free = [n for n in names if n not in b]
        for values in itertools.product(adom, repeat=len(free)):
            full = {**b, **dict(zip(free, values))}
            if all(a.substitute(full) not in rel.get(a.pred, ()) for a in neg):
                yield full


def evaluate_stratified(prog, db):
    """Ground IDB atoms true in the stratified model (active-domain semantics)."""
    validate(prog, db)
    adom = active_domain(prog, db)
    rel = {}
    for f in db.facts:
        rel.setdefault(f.pred, set()).add(f)
    result = set()
    for pred in prog.idb_order():
        derived = set()
        for r in prog.rules_for(pred):
            for b in _rule_matches(r, rel, adom):
                derived.add(r.head.substitute(b))
        rel[pred] = derived
        result |= derived
    return frozenset(result)


def evaluate_semiring(prog, db, semiring=Semiring.NX):
    """Annotate every derivable IDB atom with its provenance polynomial."""
    if not prog.is_positive():
        raise NegationUnsupportedError("semiring evaluation needs a positive program")
    validate(prog, db)
    adom = active_domain(prog, db)
    ann = {f: Polynomial.var(db.annotation(f)).project(semiring) for f in db.facts}
    for pred in prog.idb_order():
        acc = {}
        for r in prog.rules_for(pred):
            for gr in ground_rule(r, adom):
                factors = [ann.get(l.atom) for l in gr.goals()]
                if any(f is None for f in factors):
                    continue
                h = gr.head()
                acc[h] = psum([acc.get(h, Polynomial.zero()), pprod(factors, semiring)], semiring)
        ann.update({a: p for a, p in acc.items() if p})
    idb = prog.idb
    return {a: p for a, p in sorted(ann.items()) if a.pred in idb}
