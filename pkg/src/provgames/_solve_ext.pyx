# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled retrograde kernel; mirrors ``_solve_py.solve_csr``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def solve_csr(Py_ssize_t n, const cnp.int64_t[::1] succ_off,
              const cnp.int64_t[::1] pred_off, const cnp.int64_t[::1] pred_idx):
    cdef cnp.int8_t[::1] status = np.zeros(n, dtype=np.int8)
    cdef cnp.int64_t[::1] length = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] remaining = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] frontier = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] nxt = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] tmp
    cdef Py_ssize_t i, k, x, y, nf = 0, nn
    cdef cnp.int64_t rnd = 0
    cdef bint y_lost

    for i in range(n):
        remaining[i] = succ_off[i + 1] - succ_off[i]
        if remaining[i] == 0:
            status[i] = 2
            length[i] = 0
            frontier[nf] = i
            nf += 1

    while nf > 0:
        rnd += 1
        nn = 0
        for i in range(nf):
            y = frontier[i]
            y_lost = status[y] == 2
            for k in range(pred_off[y], pred_off[y + 1]):
                x = pred_idx[k]
                if status[x] != 0:
                    continue
                if y_lost:
                    status[x] = 1
                    length[x] = rnd
                    nxt[nn] = x
                    nn += 1
                else:
                    remaining[x] -= 1
                    if remaining[x] == 0:
                        status[x] = 2
                        length[x] = rnd
                        nxt[nn] = x
                        nn += 1
        tmp = frontier
        frontier = nxt
        nxt = tmp
        nf = nn

    return np.asarray(status), np.asarray(length)
