"""Pure-Python solver kernels.

These are the hot loops: bit-mask reachability, the backward-induction
attractor for the visible game, and the breadth-first contamination
search for the invisible games.  ``_ckernels`` is the compiled twin;
both backends must return identical winners, strategies, sequences and
transition counts, which the parity tests enforce.

Kernel inputs are already lowered: successor/predecessor masks, a
canonically ordered cop-move list, plain ints everywhere.
"""
from __future__ import annotations

from ..errors import StateBudgetExceededError

NAME = "py"


def reach_mask(succ, src, forbidden):
    closed = src & ~forbidden
    frontier = closed
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= succ[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~forbidden & ~closed
        closed |= frontier
    return closed


def solve_visible(succ, pred, n, moves, monotone, strong, budget):
    """Attractor over the bipartite arena of the visible fast-robber game.

    Positions are (cop set, robber vertex) with the cops to move; the
    robber answers each cop move with any legal landing spot.  Returns
    (cops_win, strategy, transitions) where strategy maps (cop_mask,
    robber) -> move mask for every cop-winning position, picking the
    fastest-capture move and breaking ties by the canonical move order.
    """
    m = len(moves)
    num_pos = m * n
    if num_pos * m > budget:
        raise StateBudgetExceededError(budget, num_pos * m)

    transitions = 0
    # robber spaces, needed only to enforce monotone transitions
    space = None
    if monotone:
        space = [0] * num_pos
        for ci in range(m):
            cmask = moves[ci]
            base = ci * n
            for r in range(n):
                if not cmask >> r & 1:
                    space[base + r] = reach_mask(succ, 1 << r, cmask)

    win_round = [0] * num_pos
    best_move = [-1] * num_pos
    cnt = [0] * (num_pos * m)
    rev = [[] for _ in range(num_pos)]
    queue = []

    for ci in range(m):
        cmask = moves[ci]
        base = ci * n
        for r in range(n):
            if cmask >> r & 1:
                continue
            pid = base + r
            rbit = 1 << r
            for j in range(m):
                if j == ci:  # C' = C never changes any state
                    continue
                cj = moves[j]
                transitions += 1
                if transitions > budget:
                    raise StateBudgetExceededError(budget, transitions)
                guard = cmask & cj
                opts = reach_mask(succ, rbit, guard)
                if strong:
                    opts &= reach_mask(pred, rbit, guard)
                opts &= ~cj
                if opts == 0:
                    # capture: rank-1 win, no later move can beat it
                    win_round[pid] = 1
                    best_move[pid] = j
                    queue.append(pid)
                    break
                if monotone:
                    s_old = space[pid]
                    jbase = j * n
                    f = opts
                    vetoed = False
                    while f:
                        low = f & -f
                        if space[jbase + (low.bit_length() - 1)] & ~s_old:
                            vetoed = True
                            break
                        f ^= low
                    if vetoed:
                        continue  # some response re-grows the territory: losing move
                rid = pid * m + j
                jbase = j * n
                deg = 0
                f = opts
                while f:
                    low = f & -f
                    rev[jbase + (low.bit_length() - 1)].append(rid)
                    deg += 1
                    f ^= low
                transitions += deg
                if transitions > budget:
                    raise StateBudgetExceededError(budget, transitions)
                cnt[rid] = deg

    # backward induction: FIFO processes positions in nondecreasing round order
    head = 0
    while head < len(queue):
        pid2 = queue[head]
        head += 1
        t = win_round[pid2]
        for rid in rev[pid2]:
            c = cnt[rid] - 1
            cnt[rid] = c
            if c == 0:
                pid = rid // m
                j = rid - pid * m
                if win_round[pid] == 0:
                    win_round[pid] = t + 1
                    best_move[pid] = j
                    queue.append(pid)
                elif win_round[pid] == t + 1 and j < best_move[pid]:
                    best_move[pid] = j

    cops_win = all(win_round[r] for r in range(n))  # moves[0] is the empty set
    if not cops_win:
        return False, None, transitions
    strategy = {}
    for ci in range(m):
        cmask = moves[ci]
        base = ci * n
        for r in range(n):
            if cmask >> r & 1:
                continue
            if win_round[base + r]:
                strategy[(cmask, r)] = moves[best_move[base + r]]
    return True, strategy, transitions


def solve_invisible(succ, n, moves, lazy, monotone, budget):
    """Breadth-first search over contamination states (C, R) from (0, V).

    Single-player: the cops win iff some move sequence empties R.
    Returns (cops_win, sequence_of_move_masks, transitions); the BFS
    plus canonical move order makes the found sequence deterministic
    (shortest, then earliest in move order).
    """
    full = (1 << n) - 1
    if full == 0:
        return True, [], 0
    m = len(moves)
    start_key = full  # cop-set index 0, contamination V
    seen = {start_key}
    state_ci = [0]
    state_r = [full]
    parent = [-1]
    parent_move = [-1]
    transitions = 0
    head = 0
    while head < len(state_ci):
        ci = state_ci[head]
        rmask = state_r[head]
        sid = head
        head += 1
        cmask = moves[ci]
        for j in range(m):
            if lazy and j == ci:  # inert robbers never move on their own
                continue
            cj = moves[j]
            transitions += 1
            if transitions > budget:
                raise StateBudgetExceededError(budget, transitions)
            guard = cmask & cj
            if lazy:
                hit = rmask & cj
                if hit:
                    rp = (rmask | reach_mask(succ, hit, guard)) & ~cj
                else:
                    rp = rmask & ~cj
            else:
                rp = reach_mask(succ, rmask, guard) & ~cj
            if monotone and rp & ~rmask:
                continue
            if rp == 0:
                seq = [cj]
                cur = sid
                while cur > 0:
                    seq.append(moves[parent_move[cur]])
                    cur = parent[cur]
                seq.reverse()
                return True, seq, transitions
            key = (j << n) | rp
            if key not in seen:
                seen.add(key)
                state_ci.append(j)
                state_r.append(rp)
                parent.append(sid)
                parent_move.append(j)
    return False, None, transitions
