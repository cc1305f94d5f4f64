"""Exact desk-scale solvers for classic hard digraph problems.

Every solver is exact with an explicit instance-size precondition; the
point of this module is oracle-grade ground truth next to instances
whose game-measured width is small.  Where two independent routes
exist (feedback-arc subset search vs ordering minimization, subset-DP
Hamiltonicity vs permutation brute force, equivalent-subgraph search vs
transitive reduction on DAGs) both are exposed so they can be played
against each other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .digraph import Digraph, closure_masks, induced_subgraph, is_acyclic
from .errors import SizeLimitError, StateBudgetExceededError
from .solver import DEFAULT_STATE_BUDGET
from .width import dag_width, kelly_width

HAMILTONIAN_MAX_N = 18
HAMILTONIAN_ORACLE_MAX_N = 8
FVS_MAX_N = 14
FAS_MAX_N = 9
FAS_MAX_M = 20
MES_MAX_N = 8


@dataclass(frozen=True)
class ProblemSolution:
    problem: str
    witness: Optional[tuple]
    value: int
    optimal: bool = True


def _acyclic_masks(succ, pred, active):
    """Kahn-style elimination restricted to the vertices in ``active``."""
    remaining = active
    changed = True
    while remaining and changed:
        changed = False
        f = remaining
        while f:
            low = f & -f
            f ^= low
            if pred[low.bit_length() - 1] & remaining == 0:
                remaining ^= low
                changed = True
    return remaining == 0


# ---------------------------------------------------------------------------
# Hamiltonian cycle
# ---------------------------------------------------------------------------

def hamiltonian_cycle(d: Digraph) -> ProblemSolution:
    """Subset DP over (visited set, endpoint), anchored at vertex 0.

    Witness is the cycle as a vertex sequence starting at 0 (the closing
    arc back to 0 is implicit), or None: the search is exhaustive either
    way.  n is capped at 18 (2^n * n states).
    """
    n = d.n
    if n > HAMILTONIAN_MAX_N:
        raise SizeLimitError(f"hamiltonian_cycle handles n <= {HAMILTONIAN_MAX_N}, got {n}")
    if n < 2:
        return ProblemSolution("hamiltonian_cycle", None, 0)
    succ = d.succ_masks
    full = d.full_mask
    size = 1 << n
    ends = [0] * size
    ends[1] = 1
    for s in range(1, size):
        if not s & 1:
            continue
        e = ends[s]
        while e:
            low = e & -e
            e ^= low
            ext = succ[low.bit_length() - 1] & ~s
            while ext:
                lw = ext & -ext
                ext ^= lw
                ends[s | lw] |= lw
    finishers = ends[full] & d.pred_masks[0] & ~1
    if not finishers:
        return ProblemSolution("hamiltonian_cycle", None, 0)
    # walk the DP backwards, smallest vertex first, for a deterministic witness
    path = [(finishers & -finishers).bit_length() - 1]
    s = full
    while len(path) < n:
        v = path[-1]
        prevs = ends[s ^ (1 << v)] & d.pred_masks[v]
        path.append((prevs & -prevs).bit_length() - 1)
        s ^= 1 << v
    path.reverse()
    return ProblemSolution("hamiltonian_cycle", tuple(path), n)


def hamiltonian_cycle_bruteforce(d: Digraph) -> bool:
    """Permutation oracle: try every rooted vertex order (n <= 8)."""
    n = d.n
    if n > HAMILTONIAN_ORACLE_MAX_N:
        raise SizeLimitError(
            f"permutation oracle handles n <= {HAMILTONIAN_ORACLE_MAX_N}, got {n}"
        )
    if n < 2:
        return False
    for perm in itertools.permutations(range(1, n)):
        order = (0,) + perm
        if all(d.has_arc(order[i], order[(i + 1) % n]) for i in range(n)):
            return True
    return False


def validate_hamiltonian_witness(d: Digraph, witness) -> bool:
    if witness is None:
        return False
    if sorted(witness) != list(range(d.n)) or d.n < 2:
        return False
    return all(
        d.has_arc(witness[i], witness[(i + 1) % d.n]) for i in range(d.n)
    )


# ---------------------------------------------------------------------------
# Feedback vertex set
# ---------------------------------------------------------------------------

def min_feedback_vertex_set(d: Digraph) -> ProblemSolution:
    """Smallest S with D - S acyclic, by cardinality-increasing subset search."""
    n = d.n
    if n > FVS_MAX_N:
        raise SizeLimitError(f"min_feedback_vertex_set handles n <= {FVS_MAX_N}, got {n}")
    succ, pred = d.succ_masks, d.pred_masks
    full = d.full_mask
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            drop = 0
            for v in combo:
                drop |= 1 << v
            if _acyclic_masks(succ, pred, full & ~drop):
                return ProblemSolution("feedback_vertex_set", tuple(combo), size)
    raise AssertionError("unreachable: deleting all vertices is acyclic")


# ---------------------------------------------------------------------------
# Feedback arc set
# ---------------------------------------------------------------------------

def min_feedback_arc_set(d: Digraph) -> ProblemSolution:
    """Smallest arc set whose deletion breaks every cycle (subset search)."""
    if d.n > FAS_MAX_N and d.m > FAS_MAX_M:
        raise SizeLimitError(
            f"min_feedback_arc_set handles n <= {FAS_MAX_N} or m <= {FAS_MAX_M}; "
            f"got n={d.n}, m={d.m}"
        )
    arcs = d.arcs
    pred = d.pred_masks
    full = d.full_mask
    for size in range(d.m + 1):
        for combo in itertools.combinations(range(d.m), size):
            succ = list(d.succ_masks)
            pred_mod = list(pred)
            for i in combo:
                u, v = arcs[i]
                succ[u] &= ~(1 << v)
                pred_mod[v] &= ~(1 << u)
            if _acyclic_masks(succ, pred_mod, full):
                return ProblemSolution(
                    "feedback_arc_set", tuple(arcs[i] for i in combo), size
                )
    raise AssertionError("unreachable: deleting all arcs is acyclic")


def feedback_arc_number_by_orderings(d: Digraph) -> int:
    """Independent oracle: minimum backward arcs over all vertex orderings.

    Exhaustive recursion over orderings; branches whose partial backward
    count already matches the best known are cut, which never changes
    the minimum.  Equals the minimum feedback arc set size (deleting the
    backward arcs of an ordering is acyclic, and any acyclic remainder
    has a topological ordering).
    """
    n = d.n
    pred = d.pred_masks
    best = d.m

    def rec(unplaced, acc):
        nonlocal best
        if acc >= best:
            return
        if not unplaced:
            best = acc
            return
        f = unplaced
        while f:
            low = f & -f
            f ^= low
            rest = unplaced ^ low
            rec(rest, acc + (pred[low.bit_length() - 1] & rest).bit_count())

    rec(d.full_mask, 0)
    return best


def validate_feedback_witness(d: Digraph, solution: ProblemSolution) -> bool:
    if solution.problem == "feedback_vertex_set":
        dropped = set(solution.witness)
        if not dropped <= set(range(d.n)):
            return False
        sub, _ = induced_subgraph(d, [v for v in range(d.n) if v not in dropped])
        return is_acyclic(sub)
    if solution.problem == "feedback_arc_set":
        dropped = set(solution.witness)
        if not dropped <= d.arc_set:
            return False
        return is_acyclic(Digraph(d.n, [a for a in d.arcs if a not in dropped]))
    raise ValueError(f"not a feedback solution: {solution.problem}")


# ---------------------------------------------------------------------------
# Minimum equivalent subgraph
# ---------------------------------------------------------------------------

def min_equivalent_subgraph(d: Digraph) -> ProblemSolution:
    """Fewest arcs of D whose transitive closure equals D's.

    Arcs whose single deletion already changes the closure are in every
    equivalent subgraph (closure is monotone in the arc set), so the
    subset search runs over the remaining optional arcs only, by
    increasing kept-count.
    """
    if d.n > MES_MAX_N:
        raise SizeLimitError(f"min_equivalent_subgraph handles n <= {MES_MAX_N}, got {d.n}")
    target = closure_masks(d)
    mandatory = []
    optional = []
    for arc in d.arcs:
        trimmed = Digraph(d.n, [a for a in d.arcs if a != arc])
        if closure_masks(trimmed) == target:
            optional.append(arc)
        else:
            mandatory.append(arc)
    for keep_count in range(len(optional) + 1):
        for kept in itertools.combinations(optional, keep_count):
            candidate = Digraph(d.n, mandatory + list(kept))
            if closure_masks(candidate) == target:
                witness = tuple(sorted(mandatory + list(kept)))
                return ProblemSolution("minimum_equivalent_subgraph", witness, len(witness))
    raise AssertionError("unreachable: keeping every optional arc restores D")


def transitive_reduction_dag(d: Digraph) -> Tuple[Tuple[int, int], ...]:
    """Unique minimum equivalent subgraph of an acyclic digraph.

    An arc (u,v) is redundant iff another out-neighbour of u already
    reaches v; on a DAG no such alternative route can revisit u, so
    dropping all redundant arcs at once is sound.
    """
    if not is_acyclic(d):
        raise ValueError("transitive reduction requires an acyclic digraph")
    closure = closure_masks(d)
    keep = []
    for u, v in d.arcs:
        others = d.succ_masks[u] & ~(1 << v)
        redundant = False
        f = others
        while f:
            low = f & -f
            f ^= low
            if closure[low.bit_length() - 1] >> v & 1:
                redundant = True
                break
        if not redundant:
            keep.append((u, v))
    return tuple(keep)


def validate_mes_witness(d: Digraph, solution: ProblemSolution) -> bool:
    if not set(solution.witness) <= d.arc_set:
        return False
    return closure_masks(Digraph(d.n, solution.witness)) == closure_masks(d)


# ---------------------------------------------------------------------------
# Width-annotated instance report
# ---------------------------------------------------------------------------

REPORT_FIELDS = (
    "instance",
    "n",
    "m",
    "dagwidth",
    "kellywidth",
    "fvs",
    "fas",
    "ham",
    "mes",
    "status",
)


def width_annotated_report(
    instances: Iterable[Tuple[str, Digraph]],
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> List[dict]:
    """One row per instance joining problem objectives with game widths.

    Size-limit and budget failures are recorded in the row's status and
    leave the affected cell empty; the report always completes.
    """
    rows = []
    for name, d in instances:
        row = {f: None for f in REPORT_FIELDS}
        row["instance"] = name
        row["n"] = d.n
        row["m"] = d.m
        notes = []

        def attempt(field, fn):
            try:
                row[field] = fn()
            except SizeLimitError:
                notes.append(f"{field}:size-limit")
            except StateBudgetExceededError:
                notes.append(f"{field}:budget-exceeded")

        attempt("dagwidth", lambda: dag_width(d, state_budget).value)
        attempt("kellywidth", lambda: kelly_width(d, state_budget).value)
        attempt("fvs", lambda: min_feedback_vertex_set(d).value)
        attempt("fas", lambda: min_feedback_arc_set(d).value)
        attempt("ham", lambda: 1 if hamiltonian_cycle(d).witness else 0)
        attempt("mes", lambda: min_equivalent_subgraph(d).value)
        row["status"] = "ok" if not notes else ";".join(notes)
        rows.append(row)
    return rows
