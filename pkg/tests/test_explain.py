import random

import pytest

from provgames import (
    Atom,
    BuildVariant,
    Polynomial,
    Semiring,
    build_game,
    eval_dag,
    evaluate_semiring,
    omega,
    provenance,
    provenance_polynomial,
    why_leaves,
    why_not_report,
    why_report,
)
from provgames.datalog import Database, parse_database, parse_program
from provgames.errors import DerivedError, NegationUnsupportedError, NotDerivedError
from provgames.explain import Op
from provgames.qgame import NodeKind, atom_node, solve_typed

from support import random_program, read

QABC = parse_program(read("abc.dl"))
DABC = parse_database(read("abc.facts"))
Q3 = parse_program(read("3hop.dl"))
D3 = parse_database(read("3hop.facts"))
A = Atom.of


def gamma_of(prog, db, atom, positive=True, variant=BuildVariant.FULL):
    tg = build_game(prog, db, variant)
    sg = solve_typed(tg)
    return provenance(sg, atom_node(tg, atom, positive))


def test_three_hop_polynomials():
    assert str(provenance_polynomial(Q3, D3, A("3Hop", "a", "a"))) == "p^3 + 2*p*q*r"
    assert str(provenance_polynomial(Q3, D3, A("3Hop", "a", "a"), Semiring.TRIO)) == "p + 2*p*q*r"
    assert str(provenance_polynomial(Q3, D3, A("3Hop", "a", "a"), Semiring.BX)) == "p + p*q*r"


def test_three_hop_dag_shape():
    g = gamma_of(Q3, D3, A("3Hop", "a", "a"))
    dag = omega(g, D3)
    assert dag.labels[dag.root] is Op.PLUS
    rules = dag.children()[dag.root]
    assert len(rules) == 3
    assert all(dag.labels[x] is Op.TIMES for x in rules)
    assert sorted(dag.leaves.values()) == ["p", "q", "r"]
    assert (len(g.nodes), len(g.edges)) == (20, 25)


def test_three_hop_trio_graph_reads_trio_polynomial():
    g = gamma_of(Q3, D3, A("3Hop", "a", "a"), variant=BuildVariant.TRIO)
    assert str(eval_dag(omega(g, D3), Semiring.NX)) == "p + 2*p*q*r"


def test_copy_rule_chain():
    prog = parse_program("R(X) :- E(X).")
    db = parse_database("E(a) @p.")
    g = gamma_of(prog, db, A("R", "a"))
    dag = omega(g, db)
    for s in Semiring:
        assert eval_dag(dag, s) == Polynomial.var("p")
    assert dag.labels[dag.root] is Op.PLUS
    assert len(dag.leaves) == 1


def test_omega_rejects_negation():
    g = gamma_of(QABC, DABC, A("A", "a"))
    with pytest.raises(NegationUnsupportedError):
        omega(g, DABC)
    with pytest.raises(NegationUnsupportedError):
        provenance_polynomial(QABC, DABC, A("A", "a"))


def test_omega_requires_won_relation_root():
    with pytest.raises(ValueError):
        omega(gamma_of(Q3, D3, A("3Hop", "c", "a")), D3)


def test_not_derived():
    with pytest.raises(NotDerivedError):
        provenance_polynomial(Q3, D3, A("3Hop", "c", "a"))


def test_why_leaves_qabc():
    assert why_leaves(gamma_of(QABC, DABC, A("A", "a"))) == ({A("B", "a", "b")}, {A("C", "b")})
    assert why_leaves(gamma_of(QABC, DABC, A("A", "b"), positive=False)) == ({A("C", "a")}, {A("B", "b", "b")})


def test_why_leaves_three_hop_c_a():
    present, absent = why_leaves(gamma_of(Q3, D3, A("3Hop", "c", "a"), positive=False))
    assert present == frozenset()
    assert {A("hop", "c", "a"), A("hop", "c", "b"), A("hop", "c", "c")} <= absent


def test_negation_dependency():
    prog = parse_program(read("abc_neg.dl"))
    db = parse_database(read("abc_neg.facts"))
    assert why_leaves(gamma_of(prog, db, A("A", "a"))) == ({A("B", "a", "a")}, {A("E", "a", "a")})


def test_why_not_qabc():
    rep = why_not_report(QABC, DABC, A("A", "b"))
    assert len(rep.instantiations) == 2
    by_y = {dict(i.binding)["Y"]: i for i in rep.instantiations}
    (ga,) = by_y["a"].goals
    assert str(ga.literal) == "not C(a)" and ga.blocking == {A("C", "a")} and not ga.missing
    (gb,) = by_y["b"].goals
    assert str(gb.literal) == "B(b,b)" and gb.missing == {A("B", "b", "b")} and not gb.blocking
    assert rep.missing == {A("B", "b", "b")} and rep.blocking == {A("C", "a")}


def test_why_not_three_hop():
    rep = why_not_report(Q3, D3, A("3Hop", "c", "a"))
    inst = next(i for i in rep.instantiations if dict(i.binding)["Z1"] == "a" and dict(i.binding)["Z2"] == "a")
    first = next(g for g in inst.goals if g.position == (1,))
    assert first.missing == {A("hop", "c", "a")}
    assert all(not g.blocking for i in rep.instantiations for g in i.goals)


def test_why_not_single_rule_empty_db():
    # a variable rule would see an empty active domain here, so the constant is spelled out
    prog = parse_program("P(c) :- E(c,c).")
    rep = why_not_report(prog, Database(), A("P", "c"))
    assert len(rep.instantiations) == 1
    assert rep.instantiations[0].goals[0].missing == {A("E", "c", "c")}


def test_why_not_on_derived_atom():
    with pytest.raises(DerivedError):
        why_not_report(QABC, DABC, A("A", "a"))


def test_why_report():
    rep = why_report(QABC, DABC, A("A", "a"))
    (inst,) = rep.instantiations
    assert dict(inst.binding) == {"X": "a", "Y": "b"}
    assert rep.used == {A("B", "a", "b")} and rep.absent == {A("C", "b")}
    d = rep.to_dict()
    assert d["instantiations"][0]["rule"] == "r1"
    with pytest.raises(NotDerivedError):
        why_report(QABC, DABC, A("A", "b"))


@pytest.mark.parametrize("seed", range(100))
def test_random_positive_programs(seed):
    prog, db = random_program(random.Random(seed))
    oracle = evaluate_semiring(prog, db)
    full = build_game(prog, db)
    sg = solve_typed(full)
    trio = build_game(prog, db, BuildVariant.TRIO)
    tsg = solve_typed(trio)
    for x in full.graph.positions:
        if x.kind is not NodeKind.REL or x.name not in prog.idb:
            continue
        atom = x.atom()
        g = provenance(sg, x)
        present, absent = why_leaves(g)
        if atom not in oracle:
            assert present == frozenset()
            continue
        assert absent == frozenset()
        dag = omega(g, db)
        nx = eval_dag(dag, Semiring.NX)
        assert nx == oracle[atom]
        assert eval_dag(dag, Semiring.BX) == nx.cap_exponents().cap_coefficients()
        tdag = omega(provenance(tsg, x), db)
        assert eval_dag(tdag, Semiring.TRIO) == eval_dag(tdag, Semiring.NX).cap_exponents()
        assert provenance_polynomial(prog, db, atom, Semiring.TRIO) == eval_dag(tdag, Semiring.TRIO)
