"""Query evaluation games: a Datalog program plus database as a win-move game.

Positions are Skolem-style identifiers for relation nodes ``rel:P(..)``,
negated relation nodes ``neg:P(..)``, ground rule nodes ``rule:ri(..)``,
goal nodes ``goal:gi_j(..)`` and fact-rule nodes ``fact:r_P(..)``. A ground
atom is in the query result iff its relation node is won.
"""

import enum
import itertools
from dataclasses import dataclass, field

from .datalog import Atom, Const, active_domain, ground, validate
from .errors import DrawnPositionError, UnknownAtomError
from .game import GameGraph, NodeValue, solve


class NodeKind(enum.Enum):
    REL = "rel"
    NEG = "neg"
    RULE = "rule"
    GOAL = "goal"
    FACT = "fact"


class BuildVariant(enum.Enum):
    FULL = "full"
    TRIO = "trio"


@dataclass(frozen=True, eq=True)
class GameNodeId:
    kind: NodeKind
    name: str  # predicate (rel/neg/fact); rule number as text for rule/goal
    args: tuple  # constants
    position: int = None  # goal position, None when collapsed
    literal: str = ""  # collapsed goals only: "P" or "!P"
    _text: str = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        args = ",".join(self.args)
        k = self.kind
        if k is NodeKind.RULE:
            text = f"rule:r{self.name}({args})"
        elif k is NodeKind.GOAL:
            if self.position is None:
                text = f"goal:g{self.name}:{self.literal}({args})"
            else:
                text = f"goal:g{self.name}_{self.position}({args})"
        elif k is NodeKind.FACT:
            text = f"fact:r_{self.name}({args})"
        else:
            text = f"{k.value}:{self.name}({args})"
        object.__setattr__(self, "_text", text)

    def __str__(self):
        return self._text

    def __lt__(self, other):
        return self._text < other._text

    @property
    def rule_index(self):
        return int(self.name) if self.kind in (NodeKind.RULE, NodeKind.GOAL) else None

    def atom(self):
        """Ground atom of a relation, negated relation or fact-rule node."""
        if self.kind not in (NodeKind.REL, NodeKind.NEG, NodeKind.FACT):
            raise ValueError(f"{self} does not denote an atom")
        return Atom(self.name, tuple(Const(c) for c in self.args))


def _consts(atom):
    return tuple(t.name for t in atom.args)


def rel_node(atom):
    return GameNodeId(NodeKind.REL, atom.pred, _consts(atom))


def neg_node(atom):
    return GameNodeId(NodeKind.NEG, atom.pred, _consts(atom))


def fact_node(atom):
    return GameNodeId(NodeKind.FACT, atom.pred, _consts(atom))


def rule_node(index, constants):
    return GameNodeId(NodeKind.RULE, str(index), tuple(constants))


def goal_node(index, position, literal, variant=BuildVariant.FULL):
    args = _consts(literal.atom)
    if BuildVariant(variant) is BuildVariant.TRIO:
        sign = "" if literal.positive else "!"
        return GameNodeId(NodeKind.GOAL, str(index), args, None, sign + literal.atom.pred)
    return GameNodeId(NodeKind.GOAL, str(index), args, position)


@dataclass(frozen=True)
class GoalOrigin:
    rule_index: int
    positions: tuple
    literal: object  # ground Literal


@dataclass(frozen=True)
class TypedGameGraph:
    """Game graph over :class:`GameNodeId` with links back to the program.

    ``origins`` maps relation and fact nodes to their ground atom, rule
    nodes to their :class:`~provgames.datalog.GroundRule` and goal nodes
    to a :class:`GoalOrigin`.
    """

    graph: GameGraph
    origins: dict
    variant: BuildVariant
    program: object
    database: object
    adom: tuple


def build_game(prog, db, variant=BuildVariant.FULL):
    variant = BuildVariant(variant)
    validate(prog, db)
    adom = active_domain(prog, db)
    arity = {**db.predicates(), **prog.arities()}
    positions = set()
    moves = []
    origins = {}

    for pred in sorted(arity):
        for tup in itertools.product(adom, repeat=arity[pred]):
            atom = Atom(pred, tuple(Const(c) for c in tup))
            r, n = rel_node(atom), neg_node(atom)
            positions.update((r, n))
            origins[r] = origins[n] = atom
            moves.append((n, r))

    goal_positions = {}
    for gr in ground(prog, adom):
        head = rel_node(gr.head())
        rn = rule_node(gr.rule.index, gr.constants)
        positions.add(rn)
        origins[rn] = gr
        moves.append((head, rn))
        for j, lit in enumerate(gr.goals(), start=1):
            gn = goal_node(gr.rule.index, j, lit, variant)
            positions.add(gn)
            goal_positions.setdefault(gn, (gr.rule.index, set(), lit))[1].add(j)
            moves.append((rn, gn))
            moves.append((gn, neg_node(lit.atom) if lit.positive else rel_node(lit.atom)))
    for gn, (i, js, lit) in goal_positions.items():
        origins[gn] = GoalOrigin(i, tuple(sorted(js)), lit)

    for fact in db.facts:
        fn = fact_node(fact)
        positions.add(fn)
        origins[fn] = fact
        moves.append((rel_node(fact), fn))

    return TypedGameGraph(GameGraph(positions, moves), origins, variant, prog, db, adom)


def solve_typed(tg, backend=None):
    sg = solve(tg.graph, backend=backend)
    drawn = sg.positions_with(NodeValue.DRAWN)
    if drawn:
        raise DrawnPositionError(f"query game has drawn position {drawn[0]}")
    return sg


def solve_query_game(prog, db, variant=BuildVariant.FULL, backend=None):
    return solve_typed(build_game(prog, db, variant), backend=backend)


def atom_node(tg, atom, positive=True):
    node = rel_node(atom) if positive else neg_node(atom)
    if node not in tg.graph:
        raise UnknownAtomError(
            f"{atom} has no position in the game (unknown predicate, wrong arity "
            "or constant outside the active domain)"
        )
    return node


# schema-level move types
A_TO_R = "A->R"
R_TO_G = "R->G"
G_TO_NOT_A = "G->notA"
NOT_A_TO_A = "notA->A"
R_TO_N = "R->N"
N_TO_A = "N->A"

_KIND_PAIRS = {
    (NodeKind.REL, NodeKind.RULE): A_TO_R,
    (NodeKind.REL, NodeKind.FACT): A_TO_R,
    (NodeKind.GOAL, NodeKind.NEG): G_TO_NOT_A,
    (NodeKind.NEG, NodeKind.REL): NOT_A_TO_A,
    (NodeKind.GOAL, NodeKind.REL): N_TO_A,
}


def move_type(tg, edge):
    src, dst = edge
    if (src.kind, dst.kind) == (NodeKind.RULE, NodeKind.GOAL):
        return R_TO_G if tg.origins[dst].literal.positive else R_TO_N
    try:
        return _KIND_PAIRS[(src.kind, dst.kind)]
    except KeyError:
        raise ValueError(f"{src} -> {dst} is not a query game move") from None


def move_claim(tg, edge):
    """The claim a player makes by playing ``edge``."""
    src, dst = edge
    kind = move_type(tg, edge)
    if kind == A_TO_R:
        rname = f"r_{dst.name}" if dst.kind is NodeKind.FACT else f"r{dst.name}"
        return f"{tg.origins[src]} is true: it's the head of this instance of {rname}."
    if kind in (R_TO_G, R_TO_N):
        lit = tg.origins[dst].literal
        if kind == R_TO_N:
            return f"Negative goal ¬{lit.atom} in the rule body fails."
        label = f"g{dst.position} (={lit.atom})" if dst.position is not None else str(lit.atom)
        return f"Positive goal {label} in your rule body fails!"
    if kind == G_TO_NOT_A:
        a = tg.origins[dst]
        return f"No! Its negation ¬{a} fails and {a} is true."
    if kind == NOT_A_TO_A:
        return f"No: atom {tg.origins[dst]} fails!"
    a = tg.origins[dst]
    return f"No: ¬{a} succeeds, but {a} fails."
