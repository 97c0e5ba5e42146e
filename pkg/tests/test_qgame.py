import random
from collections import Counter

import pytest

from provgames import BuildVariant, GameGraph, NodeValue, build_game, evaluate_stratified, solve_query_game
from provgames.datalog import Atom, Database, Program, parse_database, parse_program
from provgames.errors import ArityError, RecursiveProgramError, UnknownAtomError
from provgames.qgame import (
    A_TO_R,
    G_TO_NOT_A,
    N_TO_A,
    NOT_A_TO_A,
    R_TO_G,
    R_TO_N,
    NodeKind,
    atom_node,
    goal_node,
    move_claim,
    move_type,
    rel_node,
    rule_node,
    solve_typed,
)

from support import D, invariant_problems, random_program, read

QABC = parse_program(read("abc.dl"))
DABC = parse_database(read("abc.facts"))
Q3 = parse_program(read("3hop.dl"))
D3 = parse_database(read("3hop.facts"))


def node(text, tg):
    return next(x for x in tg.graph.positions if str(x) == text)


def test_qabc_node_families():
    tg = build_game(QABC, DABC)
    kinds = Counter(x.kind for x in tg.graph.positions)
    assert len(tg.graph) == 29
    assert kinds == {NodeKind.REL: 8, NodeKind.NEG: 8, NodeKind.RULE: 4, NodeKind.GOAL: 6, NodeKind.FACT: 3}
    goals = sorted(str(x) for x in tg.graph.positions if x.kind is NodeKind.GOAL)
    assert goals == [
        "goal:g1_1(a,a)", "goal:g1_1(a,b)", "goal:g1_1(b,a)", "goal:g1_1(b,b)",
        "goal:g1_2(a)", "goal:g1_2(b)",
    ]
    side = Counter(x.name for x in tg.graph.positions if x.kind in (NodeKind.REL, NodeKind.NEG))
    assert side == {"A": 4, "B": 8, "C": 4}


def test_qabc_edges():
    tg = build_game(QABC, DABC)
    moves = {(str(a), str(b)) for a, b in tg.graph.moves}
    assert ("rel:A(a)", "rule:r1(a,b)") in moves
    assert ("rule:r1(a,b)", "goal:g1_2(b)") in moves
    assert ("goal:g1_2(b)", "rel:C(b)") in moves
    assert ("goal:g1_1(a,b)", "neg:B(a,b)") in moves
    assert ("rel:B(a,b)", "fact:r_B(a,b)") in moves
    assert len(moves) == 8 + 4 + 8 + 6 + 3


def test_three_hop_rule_binding():
    tg = build_game(Q3, D3)
    assert rule_node(1, ("a", "a", "b", "a")) in tg.graph
    assert str(rule_node(1, ("a", "a", "b", "a"))) == "rule:r1(a,a,b,a)"


def test_empty_inputs_give_empty_graph():
    tg = build_game(Program(), Database())
    assert tg.graph == GameGraph()


def test_build_rejects_bad_programs():
    with pytest.raises(RecursiveProgramError):
        build_game(Program(parse_program("P(X) :- Q(X).").rules + parse_program("Q(X) :- P(X).").rules), Database())
    with pytest.raises(ArityError):
        build_game(QABC, parse_database("B(a)."))


def test_qabc_values():
    sg = solve_query_game(QABC, DABC)
    expect = {"A(a)": "W", "A(b)": "L", "B(a,b)": "W", "B(b,b)": "L", "C(a)": "W", "C(b)": "L"}
    got = {str(x)[4:]: sg.gamma[x].value for x in sg.graph.positions if x.kind is NodeKind.REL}
    assert {k: got[k] for k in expect} == expect
    assert not sg.positions_with(D)


def test_three_hop_c_a_lost():
    tg = build_game(Q3, D3)
    sg = solve_typed(tg)
    assert sg.gamma[atom_node(tg, Atom.of("3Hop", "c", "a"))] is NodeValue.LOST
    assert sg.gamma[atom_node(tg, Atom.of("3Hop", "a", "a"))] is NodeValue.WON


def test_unknown_atom():
    tg = build_game(QABC, DABC)
    with pytest.raises(UnknownAtomError):
        atom_node(tg, Atom.of("A", "z"))
    with pytest.raises(UnknownAtomError):
        atom_node(tg, Atom.of("Nope", "a"))


def test_serialization_injective_and_stable():
    tg = build_game(Q3, D3)
    texts = [str(x) for x in tg.graph.positions]
    assert len(set(texts)) == len(texts)
    assert texts == sorted(texts)


def test_trio_goal_ids_keep_predicate_and_sign():
    prog = parse_program("A(X) :- B(X), not C(X), B(X).")
    db = parse_database("B(a).")
    tg = build_game(prog, db, BuildVariant.TRIO)
    goals = sorted(str(x) for x in tg.graph.positions if x.kind is NodeKind.GOAL)
    assert goals == ["goal:g1:!C(a)", "goal:g1:B(a)"]
    assert tg.origins[node("goal:g1:B(a)", tg)].positions == (1, 3)


SCHEMA = {
    (NodeKind.NEG, NodeKind.REL),
    (NodeKind.REL, NodeKind.RULE),
    (NodeKind.RULE, NodeKind.GOAL),
    (NodeKind.GOAL, NodeKind.NEG),
    (NodeKind.GOAL, NodeKind.REL),
    (NodeKind.REL, NodeKind.FACT),
}


def _schema_problems(tg):
    g = tg.graph
    out = []
    for a, b in g.moves:
        if (a.kind, b.kind) not in SCHEMA:
            out.append((a, b))
    for x in g.positions:
        if x.kind is NodeKind.FACT and (len(g.predecessors(x)) != 1 or g.followers(x)):
            out.append(x)
        if x.kind is NodeKind.NEG and g.followers(x) != (rel_node(x.atom()),):
            out.append(x)
    return out


def _quotient(full):
    """Erase goal positions in the full graph, merging nodes and edges."""
    def q(x):
        if x.kind is not NodeKind.GOAL:
            return x
        lit = full.origins[x].literal
        return goal_node(x.rule_index, None, lit, BuildVariant.TRIO)

    return GameGraph({q(x) for x in full.graph.positions}, {(q(a), q(b)) for a, b in full.graph.moves})


@pytest.mark.parametrize("seed", range(120))
def test_random_programs(seed):
    prog, db = random_program(random.Random(seed), negation=True)
    full = build_game(prog, db)
    sg = solve_typed(full)
    assert invariant_problems(sg) == []
    assert _schema_problems(full) == []
    derived = evaluate_stratified(prog, db)
    for x in full.graph.positions:
        if x.kind is NodeKind.REL and x.name in prog.idb:
            assert (sg.gamma[x] is NodeValue.WON) == (x.atom() in derived), x
    trio = build_game(prog, db, BuildVariant.TRIO)
    assert trio.graph == _quotient(full)
    tsg = solve_typed(trio)
    for x in full.graph.positions:
        if x.kind is NodeKind.REL:
            assert tsg.gamma[x] is sg.gamma[x]


def test_move_types_cover_schema():
    tg = build_game(QABC, DABC)
    types = {move_type(tg, m) for m in tg.graph.moves}
    assert types == {A_TO_R, R_TO_G, R_TO_N, G_TO_NOT_A, NOT_A_TO_A, N_TO_A}


def test_move_claims():
    tg = build_game(QABC, DABC)
    claim = lambda a, b: move_claim(tg, (node(a, tg), node(b, tg)))  # noqa: E731
    assert claim("rel:A(a)", "rule:r1(a,b)") == "A(a) is true: it's the head of this instance of r1."
    assert claim("rule:r1(a,b)", "goal:g1_1(a,b)").startswith("Positive goal")
    assert claim("rule:r1(a,b)", "goal:g1_1(a,b)").endswith("in your rule body fails!")
    assert claim("goal:g1_2(b)", "rel:C(b)") == "No: ¬C(b) succeeds, but C(b) fails."
    assert claim("rel:B(a,b)", "fact:r_B(a,b)").endswith("instance of r_B.")
    assert "fails" in claim("neg:B(a,b)", "rel:B(a,b)")
    with pytest.raises(ValueError):
        move_type(tg, (node("rel:A(a)", tg), node("rel:B(a,b)", tg)))
