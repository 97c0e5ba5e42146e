"""Reading provenance out of solved query games.

Won relation nodes of positive programs turn into operator DAGs whose
evaluation gives N[X] (or B[X], Trio(X)) polynomials. Lost relation nodes
are explained by the missing and blocking input facts at the leaves of
their game provenance.
"""

import enum
from dataclasses import dataclass

from .errors import DerivedError, NegationUnsupportedError, NotDerivedError
from .game import EdgeLabel, NodeValue, edge_label, provenance
from .polynomial import Polynomial, Semiring, pprod, psum
from .qgame import BuildVariant, NodeKind, atom_node, build_game, solve_typed


class Op(enum.Enum):
    PLUS = "+"
    TIMES = "*"
    LEAF = "leaf"


@dataclass(frozen=True)
class OpDag:
    root: object
    nodes: tuple
    edges: tuple
    labels: dict  # node -> Op
    leaves: dict  # leaf node -> annotation variable

    def children(self):
        out = {n: [] for n in self.nodes}
        for src, dst in self.edges:
            out[src].append(dst)
        return out


def omega(gamma, annotations):
    """Relabel a won relation node's provenance as a +/* operator DAG.

    ``annotations`` maps ground fact atoms to variable names (a
    :class:`~provgames.datalog.Database` works via its ``annotation``).
    """
    root = gamma.root
    if root.kind is not NodeKind.REL or gamma.values[root] is not NodeValue.WON:
        raise ValueError(f"operator DAGs are built for won relation nodes, not {root}")
    lookup = annotations.annotation if hasattr(annotations, "annotation") else annotations.__getitem__
    for src, dst in gamma.edges:
        if src.kind is NodeKind.GOAL and dst.kind is NodeKind.REL:
            raise NegationUnsupportedError(f"negated goal {src} is in the provenance of {root}")
    labels, leaves = {}, {}
    for sink in gamma.sinks():
        if sink.kind is not NodeKind.FACT:
            raise NegationUnsupportedError(
                f"leaf {sink} is a missing fact; polynomials need a positive program"
            )
    sinks = set(gamma.sinks())
    for n in gamma.nodes:
        if n in sinks:
            labels[n] = Op.LEAF
            leaves[n] = lookup(n.atom())
        else:
            labels[n] = Op.PLUS if gamma.values[n] is NodeValue.WON else Op.TIMES
    return OpDag(root, gamma.nodes, tuple(gamma.edges), labels, leaves)


def eval_dag(dag, semiring=Semiring.NX):
    semiring = Semiring(semiring)
    children = dag.children()
    memo = {}
    stack = [dag.root]
    while stack:
        n = stack[-1]
        if n in memo:
            stack.pop()
            continue
        pending = [c for c in children[n] if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        op = dag.labels[n]
        if op is Op.LEAF:
            memo[n] = Polynomial.var(dag.leaves[n]).project(semiring)
        elif op is Op.PLUS:
            memo[n] = psum((memo[c] for c in children[n]), semiring)
        else:
            memo[n] = pprod((memo[c] for c in children[n]), semiring)
    return memo[dag.root]


def provenance_polynomial(prog, db, atom, semiring=Semiring.NX):
    semiring = Semiring(semiring)
    if not prog.is_positive():
        raise NegationUnsupportedError("provenance polynomials need a positive program; use why/whynot")
    variant = BuildVariant.TRIO if semiring is Semiring.TRIO else BuildVariant.FULL
    tg = build_game(prog, db, variant)
    sg = solve_typed(tg)
    node = atom_node(tg, atom)
    if sg.gamma[node] is not NodeValue.WON:
        raise NotDerivedError(f"{atom} is not derived; run whynot")
    return eval_dag(omega(provenance(sg, node), db), semiring)


def why_leaves(gamma):
    """Split the sinks of a provenance graph into present facts and absent atoms."""
    present, absent = set(), set()
    for sink in gamma.sinks():
        if sink.kind is NodeKind.FACT:
            present.add(sink.atom())
        elif sink.kind is NodeKind.REL:
            absent.add(sink.atom())
    return frozenset(present), frozenset(absent)


@dataclass(frozen=True)
class GoalExplanation:
    position: tuple  # goal positions in the rule body (one unless collapsed)
    literal: object  # ground Literal
    missing: frozenset  # absent facts the argument ends on
    blocking: frozenset  # present facts the argument ends on


@dataclass(frozen=True)
class Instantiation:
    rule_index: int
    binding: tuple  # ((var, const), ...)
    goals: tuple  # GoalExplanation per failing (why-not) or succeeding (why) goal

    def binding_text(self):
        return ",".join(f"{v}/{c}" for v, c in self.binding)


@dataclass(frozen=True)
class WhyNotReport:
    atom: object
    instantiations: tuple
    missing: frozenset
    blocking: frozenset

    def to_dict(self):
        return _report_dict(self, "failing_goals")


@dataclass(frozen=True)
class WhyReport:
    atom: object
    instantiations: tuple
    used: frozenset
    absent: frozenset

    def to_dict(self):
        return _report_dict(self, "goals")


def _report_dict(rep, goals_key):
    def lits(xs):
        return sorted(str(x) for x in xs)

    out = {"atom": str(rep.atom), "instantiations": []}
    for inst in rep.instantiations:
        out["instantiations"].append(
            {
                "rule": f"r{inst.rule_index}",
                "binding": {v: c for v, c in inst.binding},
                goals_key: [
                    {
                        "positions": list(g.position),
                        "literal": str(g.literal),
                        "missing": lits(g.missing),
                        "present": lits(g.blocking),
                    }
                    for g in inst.goals
                ],
            }
        )
    if isinstance(rep, WhyNotReport):
        out["missing"], out["blocking"] = lits(rep.missing), lits(rep.blocking)
    else:
        out["used"], out["absent"] = lits(rep.used), lits(rep.absent)
    return out


def _instantiations(tg, sg, rel, rule_value):
    insts = []
    for rn in tg.graph.followers(rel):
        if rn.kind is not NodeKind.RULE or sg.gamma[rn] is not rule_value:
            continue
        gr = tg.origins[rn]
        goals = []
        for gn in tg.graph.followers(rn):
            if edge_label(sg.gamma[rn], sg.gamma[gn]) is EdgeLabel.BAD:
                continue
            origin = tg.origins[gn]
            present, absent = why_leaves(provenance(sg, gn))
            goals.append(GoalExplanation(origin.positions, origin.literal, absent, present))
        insts.append(Instantiation(gr.rule.index, gr.binding, tuple(goals)))
    return tuple(insts)


def why_not_report(prog, db, atom):
    tg = build_game(prog, db, BuildVariant.FULL)
    sg = solve_typed(tg)
    rel = atom_node(tg, atom)
    if sg.gamma[rel] is NodeValue.WON:
        raise DerivedError(f"{atom} is derived; run why")
    present, absent = why_leaves(provenance(sg, atom_node(tg, atom, positive=False)))
    insts = _instantiations(tg, sg, rel, NodeValue.WON)
    return WhyNotReport(atom, insts, absent, present)


def why_report(prog, db, atom):
    tg = build_game(prog, db, BuildVariant.FULL)
    sg = solve_typed(tg)
    rel = atom_node(tg, atom)
    if sg.gamma[rel] is not NodeValue.WON:
        raise NotDerivedError(f"{atom} is not derived; run whynot")
    present, absent = why_leaves(provenance(sg, rel))
    insts = _instantiations(tg, sg, rel, NodeValue.LOST)
    return WhyReport(atom, insts, present, absent)
