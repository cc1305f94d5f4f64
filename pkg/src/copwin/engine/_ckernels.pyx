# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled solver kernels; the hot twin of ``pykernels``.

Same contracts, same canonical move order, same tie-breaking, same
transition accounting.  Vertex sets are single 64-bit words, so n is
capped at 62; the engine selector falls back to the pure backend above
that.
"""
from libc.stdlib cimport free, malloc, realloc

from ..errors import StateBudgetExceededError

NAME = "c"

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


cdef inline u64 c_reach(u64* succ, u64 src, u64 forbidden) noexcept nogil:
    cdef u64 closed = src & ~forbidden
    cdef u64 frontier = closed
    cdef u64 nxt, f, low
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & (~f + 1)
            nxt |= succ[__builtin_ctzll(low)]
            f ^= low
        frontier = nxt & ~forbidden & ~closed
        closed |= frontier
    return closed


cdef u64* _to_u64_array(object values) except NULL:
    cdef Py_ssize_t size = len(values)
    cdef u64* arr = <u64*> malloc((size if size else 1) * sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        arr[i] = <u64> values[i]
    return arr


def reach_mask(succ, src, forbidden):
    cdef u64* csucc = _to_u64_array(succ)
    try:
        return c_reach(csucc, <u64> src, <u64> forbidden)
    finally:
        free(csucc)


def solve_visible(succ, pred, n, moves, monotone, strong, budget):
    """See pykernels.solve_visible; identical contract and outputs."""
    cdef int cn = n
    if cn > 62:
        raise ValueError("compiled kernels support at most 62 vertices")
    cdef Py_ssize_t m = len(moves)
    cdef Py_ssize_t num_pos = m * cn
    cdef long long cbudget = budget
    if num_pos * m > cbudget:
        raise StateBudgetExceededError(budget, num_pos * m)

    cdef u64* csucc = NULL
    cdef u64* cpred = NULL
    cdef u64* cmoves = NULL
    cdef u64* space = NULL
    cdef u64* opts_arr = NULL
    cdef int* win_round = NULL
    cdef int* best_move = NULL
    cdef int* cnt = NULL
    cdef int* rev_deg = NULL
    cdef long long* rev_off = NULL
    cdef long long* rev_fill = NULL
    cdef long long* rev_dat = NULL
    cdef long long* queue = NULL

    cdef long long transitions = 0
    cdef Py_ssize_t ci, j, rid, base, jbase, pid, pid2
    cdef long long eidx
    cdef int r, r2, t, cmono = 1 if monotone else 0, cstrong = 1 if strong else 0
    cdef u64 cmask, cj, guard, opts, f, low, s_old, rbit
    cdef int vetoed
    cdef Py_ssize_t qlen = 0, head = 0
    cdef long long total_edges
    cdef bint cops_win

    try:
        csucc = _to_u64_array(succ)
        cpred = _to_u64_array(pred)
        cmoves = _to_u64_array(moves)
        win_round = <int*> malloc((num_pos if num_pos else 1) * sizeof(int))
        best_move = <int*> malloc((num_pos if num_pos else 1) * sizeof(int))
        cnt = <int*> malloc((num_pos * m if num_pos else 1) * sizeof(int))
        opts_arr = <u64*> malloc((num_pos * m if num_pos else 1) * sizeof(u64))
        rev_deg = <int*> malloc((num_pos if num_pos else 1) * sizeof(int))
        queue = <long long*> malloc((num_pos if num_pos else 1) * sizeof(long long))
        if (win_round == NULL or best_move == NULL or cnt == NULL or
                opts_arr == NULL or rev_deg == NULL or queue == NULL):
            raise MemoryError()
        for pid in range(num_pos):
            win_round[pid] = 0
            best_move[pid] = -1
            rev_deg[pid] = 0
        for rid in range(num_pos * m):
            cnt[rid] = 0
            opts_arr[rid] = 0

        if cmono:
            space = <u64*> malloc((num_pos if num_pos else 1) * sizeof(u64))
            if space == NULL:
                raise MemoryError()
            for ci in range(m):
                cmask = cmoves[ci]
                base = ci * cn
                for r in range(cn):
                    if not cmask >> r & 1:
                        space[base + r] = c_reach(csucc, (<u64> 1) << r, cmask)
                    else:
                        space[base + r] = 0

        # pass A: evaluate every (position, move), record live robber nodes
        for ci in range(m):
            cmask = cmoves[ci]
            base = ci * cn
            for r in range(cn):
                if cmask >> r & 1:
                    continue
                pid = base + r
                rbit = (<u64> 1) << r
                for j in range(m):
                    if j == ci:  # C' = C never changes any state
                        continue
                    cj = cmoves[j]
                    transitions += 1
                    if transitions > cbudget:
                        raise StateBudgetExceededError(budget, transitions)
                    guard = cmask & cj
                    opts = c_reach(csucc, rbit, guard)
                    if cstrong:
                        opts &= c_reach(cpred, rbit, guard)
                    opts &= ~cj
                    if opts == 0:
                        win_round[pid] = 1
                        best_move[pid] = <int> j
                        queue[qlen] = pid
                        qlen += 1
                        break
                    if cmono:
                        s_old = space[pid]
                        jbase = j * cn
                        f = opts
                        vetoed = 0
                        while f:
                            low = f & (~f + 1)
                            if space[jbase + __builtin_ctzll(low)] & ~s_old:
                                vetoed = 1
                                break
                            f ^= low
                        if vetoed:
                            continue
                    rid = pid * m + j
                    jbase = j * cn
                    f = opts
                    while f:
                        low = f & (~f + 1)
                        rev_deg[jbase + __builtin_ctzll(low)] += 1
                        cnt[rid] += 1
                        f ^= low
                    transitions += cnt[rid]
                    if transitions > cbudget:
                        raise StateBudgetExceededError(budget, transitions)
                    opts_arr[rid] = opts

        # pass B: reverse adjacency in CSR form
        rev_off = <long long*> malloc((num_pos + 1) * sizeof(long long))
        rev_fill = <long long*> malloc((num_pos if num_pos else 1) * sizeof(long long))
        if rev_off == NULL or rev_fill == NULL:
            raise MemoryError()
        rev_off[0] = 0
        for pid in range(num_pos):
            rev_off[pid + 1] = rev_off[pid] + rev_deg[pid]
            rev_fill[pid] = rev_off[pid]
        total_edges = rev_off[num_pos]
        rev_dat = <long long*> malloc((total_edges if total_edges else 1) * sizeof(long long))
        if rev_dat == NULL:
            raise MemoryError()
        for rid in range(num_pos * m):
            opts = opts_arr[rid]
            if opts == 0:
                continue
            j = rid % m
            jbase = j * cn
            f = opts
            while f:
                low = f & (~f + 1)
                pid2 = jbase + __builtin_ctzll(low)
                rev_dat[rev_fill[pid2]] = rid
                rev_fill[pid2] += 1
                f ^= low

        # backward induction, FIFO = nondecreasing capture rank
        head = 0
        while head < qlen:
            pid2 = <Py_ssize_t> queue[head]
            head += 1
            t = win_round[pid2]
            for eidx in range(rev_off[pid2], rev_off[pid2 + 1]):
                rid = rev_dat[eidx]
                cnt[rid] -= 1
                if cnt[rid] == 0:
                    pid = rid // m
                    j = rid - pid * m
                    if win_round[pid] == 0:
                        win_round[pid] = t + 1
                        best_move[pid] = <int> j
                        queue[qlen] = pid
                        qlen += 1
                    elif win_round[pid] == t + 1 and j < best_move[pid]:
                        best_move[pid] = <int> j

        cops_win = True
        for r in range(cn):
            if win_round[r] == 0:
                cops_win = False
                break
        if not cops_win:
            return False, None, transitions
        strategy = {}
        for ci in range(m):
            cmask = cmoves[ci]
            base = ci * cn
            for r in range(cn):
                if cmask >> r & 1:
                    continue
                if win_round[base + r]:
                    strategy[(int(cmask), r)] = int(cmoves[best_move[base + r]])
        return True, strategy, transitions
    finally:
        free(csucc)
        free(cpred)
        free(cmoves)
        free(space)
        free(opts_arr)
        free(win_round)
        free(best_move)
        free(cnt)
        free(rev_deg)
        free(rev_off)
        free(rev_fill)
        free(rev_dat)
        free(queue)


def solve_invisible(succ, n, moves, lazy, monotone, budget):
    """See pykernels.solve_invisible; identical contract and outputs."""
    cdef int cn = n
    if cn > 62:
        raise ValueError("compiled kernels support at most 62 vertices")
    cdef u64 full = ((<u64> 1) << cn) - 1
    if full == 0:
        return True, [], 0
    cdef Py_ssize_t m = len(moves)
    cdef long long cbudget = budget
    cdef int clazy = 1 if lazy else 0, cmono = 1 if monotone else 0

    cdef u64* csucc = NULL
    cdef u64* cmoves = NULL
    cdef int* state_ci = NULL
    cdef u64* state_r = NULL
    cdef long long* parent = NULL
    cdef int* parent_move = NULL
    cdef Py_ssize_t cap = 1024, n_states = 1, head = 0, sid, cur
    cdef long long transitions = 0
    cdef Py_ssize_t ci, j
    cdef u64 cmask, cj, guard, rmask, rp, hit

    seen = {int(full)}

    try:
        csucc = _to_u64_array(succ)
        cmoves = _to_u64_array(moves)
        state_ci = <int*> malloc(cap * sizeof(int))
        state_r = <u64*> malloc(cap * sizeof(u64))
        parent = <long long*> malloc(cap * sizeof(long long))
        parent_move = <int*> malloc(cap * sizeof(int))
        if state_ci == NULL or state_r == NULL or parent == NULL or parent_move == NULL:
            raise MemoryError()
        state_ci[0] = 0
        state_r[0] = full
        parent[0] = -1
        parent_move[0] = -1

        while head < n_states:
            ci = state_ci[head]
            rmask = state_r[head]
            sid = head
            head += 1
            cmask = cmoves[ci]
            for j in range(m):
                if clazy and j == ci:  # inert robbers never move on their own
                    continue
                cj = cmoves[j]
                transitions += 1
                if transitions > cbudget:
                    raise StateBudgetExceededError(budget, transitions)
                guard = cmask & cj
                if clazy:
                    hit = rmask & cj
                    if hit:
                        rp = (rmask | c_reach(csucc, hit, guard)) & ~cj
                    else:
                        rp = rmask & ~cj
                else:
                    rp = c_reach(csucc, rmask, guard) & ~cj
                if cmono and rp & ~rmask:
                    continue
                if rp == 0:
                    seq = [int(cj)]
                    cur = sid
                    while cur > 0:
                        seq.append(int(cmoves[parent_move[cur]]))
                        cur = <Py_ssize_t> parent[cur]
                    seq.reverse()
                    return True, seq, transitions
                key = (int(j) << cn) | int(rp)
                if key not in seen:
                    seen.add(key)
                    if n_states == cap:
                        cap *= 2
                        state_ci = <int*> _regrow(state_ci, cap, sizeof(int))
                        state_r = <u64*> _regrow(state_r, cap, sizeof(u64))
                        parent = <long long*> _regrow(parent, cap, sizeof(long long))
                        parent_move = <int*> _regrow(parent_move, cap, sizeof(int))
                    state_ci[n_states] = <int> j
                    state_r[n_states] = rp
                    parent[n_states] = sid
                    parent_move[n_states] = <int> j
                    n_states += 1
        return False, None, transitions
    finally:
        free(csucc)
        free(cmoves)
        free(state_ci)
        free(state_r)
        free(parent)
        free(parent_move)


cdef void* _regrow(void* ptr, Py_ssize_t new_count, size_t item) except NULL:
    # on failure the old block stays valid; the caller's finally frees it
    cdef void* out = realloc(ptr, new_count * item)
    if out == NULL:
        raise MemoryError()
    return out
