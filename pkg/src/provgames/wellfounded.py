"""Three-valued well-founded model of ``win(X) :- move(X,Y), not win(Y)``.

Computed by the alternating fixpoint directly over the move relation.
Kept free of any dependency on the game solver so the two can be
cross-checked.
"""

import enum


class ThreeValued(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEF = "undef"


def _t_operator(moves_from, positions, s):
    # one application of win(X) <- move(X,Y), not win(Y) with "not" read against s
    return frozenset(x for x in positions if any(y not in s for y in moves_from[x]))


def iterate_alternating(g):
    """Yield ``(under, over)`` pairs ``(U_i, O_i)`` until ``U`` is stable."""
    positions = list(g.positions)
    moves_from = {x: [] for x in positions}
    for x, y in g.moves:
        moves_from[x].append(y)
    under = frozenset()
    while True:
        over = _t_operator(moves_from, positions, under)
        yield under, over
        nxt = _t_operator(moves_from, positions, over)
        if nxt == under:
            return
        under = nxt


def alternating_fixpoint(g):
    under = over = frozenset()
    for under, over in iterate_alternating(g):
        pass
    out = {}
    for x in g.positions:
        if x in under:
            out[x] = ThreeValued.TRUE
        elif x in over:
            out[x] = ThreeValued.UNDEF
        else:
            out[x] = ThreeValued.FALSE
    return out
