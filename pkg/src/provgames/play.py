"""Terminal dialogue: a human argues against the engine on a query game."""

from dataclasses import dataclass

from .game import EdgeLabel, NodeValue, edge_label
from .qgame import move_claim

PLAYERS = ("I", "II")


def engine_move(sg, x):
    """Best move from ``x``: quickest win, else a draw, else the longest
    delay; ties go to the smallest canonical id. ``None`` at a sink."""
    fs = sorted(sg.graph.followers(x), key=str)
    if not fs:
        return None
    gx = sg.gamma[x]
    labelled = [(y, edge_label(gx, sg.gamma[y])) for y in fs]
    wins = [y for y, lab in labelled if lab is EdgeLabel.WINNING]
    if wins:
        return min(wins, key=lambda y: (sg.length[y], str(y)))
    draws = [y for y, lab in labelled if lab is EdgeLabel.DRAWING]
    if draws:
        return draws[0]
    delays = [y for y, lab in labelled if lab is EdgeLabel.DELAYING]
    return min(delays, key=lambda y: (-sg.length[y], str(y)))


@dataclass
class PlayResult:
    winner: str  # "I", "II", or "" when aborted
    human: str
    bad_moves: int
    plies: int
    aborted: bool = False


def play(tg, sg, start, human="I", read=input, write=print, max_plies=10_000):
    """Run one game from ``start``; player I moves first.

    ``read`` is called with a prompt and returns the human's choice; it may
    raise ``EOFError`` to abort. Returns a :class:`PlayResult`.
    """
    if human not in PLAYERS:
        raise ValueError(f"human must play I or II, not {human!r}")
    x = start
    mover = 0
    bad = 0
    plies = 0
    write(f"Game starts at {start} ({sg.gamma[start].name.lower()} for player I). You are player {human}.")
    while plies < max_plies:
        player = PLAYERS[mover]
        fs = sorted(sg.graph.followers(x), key=str)
        if not fs:
            winner = PLAYERS[1 - mover]
            write(f"Player {player} cannot move from {x}. Player {winner} wins.")
            if winner == human:
                write("You win.")
            elif bad == 0:
                write("You lose. Your loss was forced: no choice of yours could change the outcome.")
            else:
                write(f"You lose after {bad} bad move(s).")
            return PlayResult(winner, human, bad, plies)
        if player == human:
            write(f"Your move (player {player}) from {x}:")
            for i, y in enumerate(fs, start=1):
                write(f"  [{i}] {y}: {move_claim(tg, (x, y))}")
            y = _ask(read, len(fs), write)
            if y is None:
                write("Aborted.")
                return PlayResult("", human, bad, plies, aborted=True)
            y = fs[y - 1]
            if edge_label(sg.gamma[x], sg.gamma[y]) is EdgeLabel.BAD:
                bad += 1
                was = "won" if sg.gamma[x] is NodeValue.WON else "drawn"
                write(f"  (bad move: {x} was {was} for you, {y} hands the advantage away)")
        else:
            y = engine_move(sg, x)
            write(f"Engine (player {player}) plays {y}: {move_claim(tg, (x, y))}")
        x = y
        mover = 1 - mover
        plies += 1
    write("Move limit reached; the game is drawn.")
    return PlayResult("", human, bad, plies)


def _ask(read, n, write):
    while True:
        try:
            raw = read(f"choose 1-{n}: ")
        except EOFError:
            return None
        raw = raw.strip()
        if raw.isdigit() and 1 <= int(raw) <= n:
            return int(raw)
        write(f"  invalid choice {raw!r}; enter a number between 1 and {n}")
