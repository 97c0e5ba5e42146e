"""Pure-Python retrograde kernel; same contract as the compiled ``_solve_ext``."""

UNKNOWN = 0
WON = 1
LOST = 2


def solve_csr(n, succ_off, pred_off, pred_idx):
    """Solve a win-move game given in CSR form.

    ``succ_off`` only supplies out-degrees; predecessors drive the
    propagation. Positions are settled round by round, so a position's
    length equals the round in which its value became known.

    Returns ``(status, length)`` lists; drawn positions keep status 0 and
    length -1.
    """
    status = [UNKNOWN] * n
    length = [-1] * n
    remaining = [succ_off[i + 1] - succ_off[i] for i in range(n)]
    frontier = [i for i in range(n) if remaining[i] == 0]
    for i in frontier:
        status[i] = LOST
        length[i] = 0
    rnd = 0
    while frontier:
        nxt = []
        rnd += 1
        for y in frontier:
            y_lost = status[y] == LOST
            for k in range(pred_off[y], pred_off[y + 1]):
                x = pred_idx[k]
                if status[x] != UNKNOWN:
                    continue
                if y_lost:
                    status[x] = WON
                    length[x] = rnd
                    nxt.append(x)
                else:
                    remaining[x] -= 1
                    if remaining[x] == 0:
                        status[x] = LOST
                        length[x] = rnd
                        nxt.append(x)
        frontier = nxt
    return status, length
