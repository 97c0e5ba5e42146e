"""Shared helpers for the test suite: generators, reference solvers and the
structural invariant checker."""

import functools
import math
import random
from pathlib import Path

from provgames import GameGraph, NodeValue, check_regular_structure, label_edges, provenance, solve
from provgames.datalog import Atom, Const, Database, Literal, Program, Rule, Var

DATA = Path(__file__).parent / "data"
W, L, D = NodeValue.WON, NodeValue.LOST, NodeValue.DRAWN


def read(name):
    return (DATA / name).read_text()


def random_graph(rng, max_nodes=10, density=None):
    n = rng.randint(0, max_nodes)
    p = rng.random() if density is None else density
    names = [f"v{i}" for i in range(n)]
    moves = [(a, b) for a in names for b in names if rng.random() < p]
    return GameGraph(names, moves)


def rounds_reference(g):
    """Synchronous rounds: in round k every undecided position looks only at
    what was known after round k-1."""
    state = {}
    k = 0
    while True:
        new = {}
        for x in g.positions:
            if x in state:
                continue
            fs = g.followers(x)
            if any(state.get(y, (None,))[0] is L for y in fs):
                new[x] = (W, k)
            elif all(state.get(y, (None,))[0] is W for y in fs):
                new[x] = (L, k)
        if not new:
            break
        state.update(new)
        k += 1
    return {x: state.get(x, (D, math.inf)) for x in g.positions}


def minimax_reference(g):
    """Exhaustive bounded search: ``x`` is won within ``k`` plies if some
    move leads to a position lost within ``k-1``; lost within ``k`` if every
    move leads to a position won within ``k-1``."""
    horizon = 2 * len(g.positions) + 2

    @functools.lru_cache(maxsize=None)
    def won_within(x, k):
        return k > 0 and any(lost_within(y, k - 1) for y in g.followers(x))

    @functools.lru_cache(maxsize=None)
    def lost_within(x, k):
        fs = g.followers(x)
        if not fs:
            return True
        return k > 0 and all(won_within(y, k - 1) for y in fs)

    out = {}
    for x in g.positions:
        k = next((k for k in range(horizon) if won_within(x, k)), None)
        if k is not None:
            out[x] = (W, k)
            continue
        k = next((k for k in range(horizon) if lost_within(x, k)), None)
        out[x] = (L, k) if k is not None else (D, math.inf)
    return out


def invariant_problems(sg):
    """Every violated structural law of a solved game, as readable strings."""
    problems = []
    g = sg.graph
    gamma, length = sg.gamma, sg.length
    for x in g.positions:
        fs = g.followers(x)
        v, n = gamma[x], length[x]
        if not fs:
            if (v, n) != (L, 0):
                problems.append(f"sink {x} is {v} {n}")
            continue
        lost = [length[y] for y in fs if gamma[y] is L]
        if v is W:
            if not lost or n != 1 + min(lost):
                problems.append(f"won {x} has len {n}")
            if n % 2 != 1:
                problems.append(f"won {x} has even len {n}")
        elif v is L:
            if any(gamma[y] is not W for y in fs) or n != 1 + max(length[y] for y in fs):
                problems.append(f"lost {x} has len {n}")
            if n % 2 != 0:
                problems.append(f"lost {x} has odd len {n}")
        else:
            if n != math.inf or lost or not any(gamma[y] is D for y in fs):
                problems.append(f"drawn {x} breaks the draw rule")
    try:
        label_edges(sg)
    except Exception as exc:  # noqa: BLE001
        problems.append(f"edge labels: {exc}")
        return problems
    for x in g.positions:
        p = provenance(sg, x)
        if not check_regular_structure(p):
            problems.append(f"irregular provenance at {x}")
        again = solve(p.as_game())
        for y in p.nodes:
            if again.gamma[y] is not gamma[y] or again.length[y] != length[y]:
                problems.append(f"provenance of {x} does not determine {y}")
                break
    return problems


EDB_PREDS = (("E", 2), ("F", 1), ("G", 2))
IDB_PREDS = (("P", 1), ("Q", 2), ("R", 1))
VARS = ("X", "Y", "Z")


def _random_atom(rng, pred, arity, consts, var_pool):
    args = []
    for _ in range(arity):
        if rng.random() < 0.15:
            args.append(Const(rng.choice(consts)))
        else:
            args.append(Var(rng.choice(var_pool)))
    return Atom(pred, tuple(args))


def random_program(rng, negation=False, max_rules=3, max_goals=3, consts=("a", "b", "c")):
    """Random non-recursive program plus annotated database.

    IDB predicates are layered P < Q < R; a rule for one may only use EDB
    predicates and strictly earlier IDB predicates, so no cycle can form.
    """
    n_consts = rng.randint(1, len(consts))
    consts = consts[:n_consts]
    rules = []
    for i in range(1, rng.randint(1, max_rules) + 1):
        layer = rng.randrange(len(IDB_PREDS))
        head_pred, head_arity = IDB_PREDS[layer]
        usable = list(EDB_PREDS) + list(IDB_PREDS[:layer])
        body = []
        for _ in range(rng.randint(1, max_goals)):
            pred, arity = rng.choice(usable)
            positive = not (negation and rng.random() < 0.3)
            body.append(Literal(_random_atom(rng, pred, arity, consts, VARS), positive))
        head = _random_atom(rng, head_pred, head_arity, consts, VARS)
        rules.append(Rule(i, head, tuple(body)))
    facts = set()
    for pred, arity in EDB_PREDS:
        for _ in range(rng.randint(0, 4)):
            facts.add(Atom(pred, tuple(Const(rng.choice(consts)) for _ in range(arity))))
    facts = sorted(facts)
    annotations = {f: f"x{k}" for k, f in enumerate(facts)}
    return Program(tuple(rules)), Database(tuple(facts), annotations)


def seeded(seed):
    return random.Random(seed)
