"""Win-move games: representation, solving, edge labels and game provenance.

A game is a finite directed graph. Players alternate moving a token along
an edge; the player who cannot move loses. Solving assigns each position
a value (won, lost or drawn for the player about to move) and a length
(shortest forced win, longest possible delay, or infinity for draws).
"""

import enum
import math
import random
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType

from . import _kernel
from .errors import InconsistentGameError, UnknownPositionError

INF = math.inf


class NodeValue(enum.Enum):
    WON = "W"
    LOST = "L"
    DRAWN = "D"

    def __str__(self):
        return self.value


class EdgeLabel(enum.Enum):
    WINNING = "winning"
    DELAYING = "delaying"
    DRAWING = "drawing"
    BAD = "bad"

    @property
    def letter(self):
        return {"winning": "g", "delaying": "r", "drawing": "y", "bad": "b"}[self.value]

    def __str__(self):
        return self.value


W, L, D = NodeValue.WON, NodeValue.LOST, NodeValue.DRAWN

_LABELS = {
    (W, L): EdgeLabel.WINNING,
    (L, W): EdgeLabel.DELAYING,
    (D, D): EdgeLabel.DRAWING,
    (W, W): EdgeLabel.BAD,
    (W, D): EdgeLabel.BAD,
    (D, W): EdgeLabel.BAD,
}


def _key(x):
    return str(x)


def _move_key(m):
    return (str(m[0]), str(m[1]))


class GameGraph:
    """Immutable game graph ``(positions, moves)``.

    Positions may be any hashable objects; they are ordered by their
    string form, which is also the iteration order everywhere.
    """

    __slots__ = ("positions", "moves", "_index", "_succ", "_pred")

    def __init__(self, positions=(), moves=()):
        pos = set(positions)
        mv = set()
        for src, dst in moves:
            if src not in pos or dst not in pos:
                missing = src if src not in pos else dst
                raise ValueError(f"move endpoint {missing!r} is not a position")
            mv.add((src, dst))
        self.positions = tuple(sorted(pos, key=_key))
        self.moves = tuple(sorted(mv, key=_move_key))
        self._index = {x: i for i, x in enumerate(self.positions)}
        succ = {x: [] for x in self.positions}
        pred = {x: [] for x in self.positions}
        for src, dst in self.moves:
            succ[src].append(dst)
            pred[dst].append(src)
        self._succ = {x: tuple(ys) for x, ys in succ.items()}
        self._pred = {x: tuple(ys) for x, ys in pred.items()}

    @classmethod
    def from_moves(cls, moves, positions=()):
        """Build a graph whose positions are the move endpoints plus ``positions``."""
        moves = list(moves)
        pos = set(positions)
        for src, dst in moves:
            pos.add(src)
            pos.add(dst)
        return cls(pos, moves)

    def __contains__(self, x):
        return x in self._index

    def __len__(self):
        return len(self.positions)

    def __eq__(self, other):
        if not isinstance(other, GameGraph):
            return NotImplemented
        return set(self.positions) == set(other.positions) and set(self.moves) == set(other.moves)

    def __hash__(self):
        return hash((frozenset(self.positions), frozenset(self.moves)))

    def __repr__(self):
        return f"GameGraph({len(self.positions)} positions, {len(self.moves)} moves)"

    def _check(self, x):
        if x not in self._index:
            raise UnknownPositionError(x)

    def followers(self, x):
        self._check(x)
        return self._succ[x]

    def predecessors(self, x):
        self._check(x)
        return self._pred[x]

    def index(self, x):
        self._check(x)
        return self._index[x]

    def csr(self):
        """Return ``(succ_off, succ_idx, pred_off, pred_idx)`` over position indices."""
        idx = self._index
        succ_off, succ_idx, pred_off, pred_idx = [0], [], [0], []
        for x in self.positions:
            succ_idx.extend(idx[y] for y in self._succ[x])
            succ_off.append(len(succ_idx))
            pred_idx.extend(idx[y] for y in self._pred[x])
            pred_off.append(len(pred_idx))
        return succ_off, succ_idx, pred_off, pred_idx


@dataclass(frozen=True)
class SolvedGame:
    graph: GameGraph
    gamma: MappingProxyType
    length: MappingProxyType

    def value(self, x):
        return value(self, x)

    def len(self, x):
        if x not in self.graph:
            raise UnknownPositionError(x)
        return self.length[x]

    def positions_with(self, v):
        return [x for x in self.graph.positions if self.gamma[x] is v]


_STATUS = {0: D, 1: W, 2: L}


def solve(g, backend=None):
    """Solve ``g`` round by round (retrograde analysis).

    Sinks are lost with length 0. A position is won as soon as some
    follower is lost and lost once every follower is won; its length is
    the round in which this happens, which gives the shortest win and the
    longest delay respectively. Whatever is left undecided is drawn.
    """
    n = len(g.positions)
    succ_off, _, pred_off, pred_idx = g.csr()
    status, length = _kernel.solve_csr(n, succ_off, pred_off, pred_idx, backend=backend)
    gamma = {}
    lens = {}
    for i, x in enumerate(g.positions):
        gamma[x] = _STATUS[status[i]]
        lens[x] = INF if status[i] == 0 else length[i]
    return SolvedGame(g, MappingProxyType(gamma), MappingProxyType(lens))


def solve_fair_pick(g, rng=None):
    """Values only, by repeatedly picking a random undecided position.

    This is the non-deterministic relative of :func:`solve`; it converges to
    the same values but its order of discovery carries no length meaning.
    """
    rng = rng or random.Random(0)
    gamma = {x: None for x in g.positions}
    undecided = list(g.positions)
    while True:
        changed = False
        rng.shuffle(undecided)
        still = []
        for x in undecided:
            fs = g.followers(x)
            if any(gamma[y] is L for y in fs):
                gamma[x] = W
                changed = True
            elif all(gamma[y] is W for y in fs):
                gamma[x] = L
                changed = True
            else:
                still.append(x)
        undecided = still
        if not changed:
            break
    return {x: (D if v is None else v) for x, v in gamma.items()}


def value(sg, x):
    if x not in sg.graph:
        raise UnknownPositionError(x)
    return sg.gamma[x]


def edge_label(src_value, dst_value):
    try:
        return _LABELS[(src_value, dst_value)]
    except KeyError:
        raise InconsistentGameError(
            f"impossible move from a {src_value.name} to a {dst_value.name} position"
        ) from None


def label_edges(sg):
    """Map every move of the solved game to its :class:`EdgeLabel`."""
    gamma = sg.gamma
    out = {}
    for src, dst in sg.graph.moves:
        try:
            out[(src, dst)] = edge_label(gamma[src], gamma[dst])
        except InconsistentGameError as exc:
            raise InconsistentGameError(f"{exc}: {src} -> {dst}") from None
    return out


@dataclass(frozen=True)
class ProvenanceSubgraph:
    """Part of a solved game reachable from ``root`` along good moves."""

    root: object
    nodes: tuple
    edges: dict = field(repr=False)
    values: dict = field(repr=False)
    lengths: dict = field(repr=False, default_factory=dict)

    def followers(self, x):
        return tuple(dst for (src, dst) in self.edges if src == x)

    def successors(self):
        succ = {x: [] for x in self.nodes}
        for src, dst in self.edges:
            succ[src].append(dst)
        return succ

    def sinks(self):
        has_out = {src for src, _ in self.edges}
        return [x for x in self.nodes if x not in has_out]

    def as_game(self):
        return GameGraph(self.nodes, self.edges)


def provenance(sg, x):
    """Game provenance of ``x``: everything reachable via non-bad moves."""
    g = sg.graph
    if x not in g:
        raise UnknownPositionError(x)
    gamma = sg.gamma
    seen = {x}
    edges = {}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in g.followers(u):
            lab = edge_label(gamma[u], gamma[v])
            if lab is EdgeLabel.BAD:
                continue
            edges[(u, v)] = lab
            if v not in seen:
                seen.add(v)
                queue.append(v)
    nodes = tuple(sorted(seen, key=_key))
    edges = {m: edges[m] for m in sorted(edges, key=_move_key)}
    return ProvenanceSubgraph(
        root=x,
        nodes=nodes,
        edges=edges,
        values={n: gamma[n] for n in nodes},
        lengths={n: sg.length[n] for n in nodes},
    )


# Automaton over edge labels: state = label expected next.
_EXPECT_NEXT = {
    ("g", EdgeLabel.WINNING): "r",
    ("r", EdgeLabel.DELAYING): "g",
    ("y", EdgeLabel.DRAWING): "y",
}
_START = {W: "g", L: "r", D: "y"}


def check_regular_structure(p):
    """True iff every label path from the root is a prefix of
    ``g(rg)*`` (won root), ``(rg)*`` (lost root) or ``y+`` (drawn root)."""
    succ = p.successors()
    start = (p.root, _START[p.values[p.root]])
    seen = {start}
    stack = [start]
    while stack:
        node, want = stack.pop()
        for nxt in succ[node]:
            state = _EXPECT_NEXT.get((want, p.edges[(node, nxt)]))
            if state is None:
                return False
            item = (nxt, state)
            if item not in seen:
                seen.add(item)
                stack.append(item)
    return True


def optimal_moves(sg, x, strict=False):
    """Good moves out of ``x``, in canonical order.

    With ``strict`` only the shortest wins (won ``x``) or the longest
    delays (lost ``x``) are kept; drawn positions keep all drawing moves.
    """
    g = sg.graph
    if x not in g:
        raise UnknownPositionError(x)
    gx = sg.gamma[x]
    good = [y for y in g.followers(x) if edge_label(gx, sg.gamma[y]) is not EdgeLabel.BAD]
    if strict and good and gx is not D:
        pick = min if gx is W else max
        best = pick(sg.length[y] for y in good)
        good = [y for y in good if sg.length[y] == best]
    return [(x, y) for y in good]
