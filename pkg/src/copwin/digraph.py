"""Directed-graph data model, edge-list I/O, and structure primitives.

All digraphs are finite and simple: no self-loops, no duplicate arcs.
Vertices are dense 0-based integers, so isolated vertices are allowed
and every vertex set can be carried as a bit mask.  Instances are
immutable and safe to share across threads; every operation here is a
pure function.
"""
from __future__ import annotations

import hashlib
from typing import Dict, FrozenSet, Iterable, Tuple

from .bits import iter_bits, mask_from
from .errors import EdgeListParseError


class Digraph:
    """Immutable simple digraph on vertices 0..n-1."""

    __slots__ = ("_n", "_arcs", "_arc_set", "_succ", "_pred", "_hash")

    def __init__(self, n: int, arcs: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        arc_list = []
        seen = set()
        for arc in arcs:
            u, v = arc
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) not allowed in a simple digraph")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
            arc_list.append((u, v))
        arc_list.sort()
        succ = [0] * n
        pred = [0] * n
        for u, v in arc_list:
            succ[u] |= 1 << v
            pred[v] |= 1 << u
        self._n = n
        self._arcs = tuple(arc_list)
        self._arc_set = frozenset(arc_list)
        self._succ = tuple(succ)
        self._pred = tuple(pred)
        self._hash = hash((n, self._arcs))

    @property
    def n(self) -> int:
        return self._n

    @property
    def arcs(self) -> Tuple[Tuple[int, int], ...]:
        """Arcs in ascending lexicographic order."""
        return self._arcs

    @property
    def arc_set(self) -> FrozenSet[Tuple[int, int]]:
        return self._arc_set

    @property
    def m(self) -> int:
        return len(self._arcs)

    @property
    def succ_masks(self) -> Tuple[int, ...]:
        """Out-neighbourhoods as bit masks, indexed by vertex."""
        return self._succ

    @property
    def pred_masks(self) -> Tuple[int, ...]:
        return self._pred

    @property
    def vertices(self) -> range:
        return range(self._n)

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(iter_bits(self._succ[v]))

    def in_neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(iter_bits(self._pred[v]))

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_set

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._arcs == other._arcs

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Digraph(n={self._n}, m={len(self._arcs)})"


# ---------------------------------------------------------------------------
# Edge-list v1 format
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Digraph:
    """Parse the line-oriented edge-list v1 format.

    Comment lines start with ``#``.  An optional first non-comment line
    ``n <count>`` declares the vertex count; otherwise it is inferred as
    1 + the largest id seen (0 for an empty input).  Every other line is
    one arc ``u v``.  Self-loops, duplicate arcs, and ids at or above a
    declared count are hard errors.
    """
    declared_n = None
    arcs = []
    max_id = -1
    saw_arc = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if saw_arc or declared_n is not None:
                raise EdgeListParseError("header 'n <count>' must be the first data line", line_no)
            if len(parts) != 2:
                raise EdgeListParseError(f"malformed header {line!r}", line_no)
            try:
                declared_n = int(parts[1])
            except ValueError:
                raise EdgeListParseError(f"malformed vertex count {parts[1]!r}", line_no) from None
            if declared_n < 0:
                raise EdgeListParseError("vertex count must be non-negative", line_no)
            continue
        if len(parts) != 2:
            raise EdgeListParseError(f"malformed arc line {line!r}", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"malformed arc line {line!r}", line_no) from None
        saw_arc = True
        if u < 0 or v < 0:
            raise EdgeListParseError(f"negative vertex id in {line!r}", line_no)
        if u == v:
            raise EdgeListParseError(f"self-loop ({u},{v}) forbidden (digraphs are simple)", line_no)
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise EdgeListParseError(
                f"vertex id in ({u},{v}) exceeds declared count {declared_n}", line_no
            )
        if (u, v) in set(arcs):
            raise EdgeListParseError(f"duplicate arc ({u},{v})", line_no)
        arcs.append((u, v))
        max_id = max(max_id, u, v)
    n = declared_n if declared_n is not None else max_id + 1
    return Digraph(n, arcs)


def to_edge_list(d: Digraph) -> str:
    """Canonical writer: header line, then arcs sorted lexicographically."""
    lines = [f"n {d.n}"]
    lines.extend(f"{u} {v}" for u, v in d.arcs)
    return "\n".join(lines) + "\n"


def fingerprint(d: Digraph) -> str:
    """SHA-256 of the canonical edge-list text; identifies the graph in certificates."""
    return hashlib.sha256(to_edge_list(d).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Structure primitives
# ---------------------------------------------------------------------------

def reach_mask(succ, src: int, forbidden: int) -> int:
    """Vertices reachable from ``src & ~forbidden`` along arcs avoiding ``forbidden``."""
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


def reach(d: Digraph, sources: Iterable[int], forbidden: Iterable[int] = ()) -> FrozenSet[int]:
    """All u outside ``forbidden`` with a path from some non-forbidden source in D - forbidden.

    Sources count as reachable (length-0 paths); the result is closed
    under out-arcs avoiding ``forbidden``.
    """
    src = mask_from(sources)
    forb = mask_from(forbidden)
    _check_subset(d, src, "sources")
    _check_subset(d, forb, "forbidden")
    return frozenset(iter_bits(reach_mask(d.succ_masks, src, forb)))


def scc(d: Digraph) -> Tuple[FrozenSet[int], ...]:
    """Strongly connected components, in reverse topological order (Tarjan)."""
    n = d.n
    succ = d.succ_masks
    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter_bits(succ[root]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter_bits(succ[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return tuple(comps)


def is_acyclic(d: Digraph) -> bool:
    """True iff every strongly connected component is a singleton."""
    return all(len(c) == 1 for c in scc(d))


def induced_subgraph(d: Digraph, x: Iterable[int]) -> Tuple[Digraph, Dict[int, int]]:
    """Subgraph induced by X, relabeled densely; returns (subgraph, old->new map)."""
    xs = sorted(set(x))
    for v in xs:
        if not 0 <= v < d.n:
            raise ValueError(f"vertex {v} not in V(D)")
    relabel = {old: new for new, old in enumerate(xs)}
    keep = set(xs)
    arcs = [(relabel[u], relabel[v]) for u, v in d.arcs if u in keep and v in keep]
    return Digraph(len(xs), arcs), relabel


def delete_arcs(d: Digraph, arcs: Iterable[Tuple[int, int]]) -> Digraph:
    """Same vertex set, arcs(D) minus the given arcs; missing arcs are an error."""
    drop = set()
    for arc in arcs:
        arc = (arc[0], arc[1])
        if arc not in d.arc_set:
            raise ValueError(f"arc {arc} not present")
        drop.add(arc)
    return Digraph(d.n, (a for a in d.arcs if a not in drop))


def bidirect(n: int, edges: Iterable[Tuple[int, int]]) -> Digraph:
    """Digraph with both arcs (u,v),(v,u) for each undirected edge {u,v}."""
    arcs = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop {{{u},{v}}} not allowed")
        arcs.add((u, v))
        arcs.add((v, u))
    return Digraph(n, sorted(arcs))


def transitive_closure(d: Digraph) -> Tuple[FrozenSet[int], ...]:
    """Row u = {v : u = v or u has a path to v}; reflexive by convention."""
    return tuple(
        frozenset(iter_bits(reach_mask(d.succ_masks, 1 << u, 0)))
        for u in range(d.n)
    )


def closure_masks(d: Digraph) -> Tuple[int, ...]:
    """transitive_closure as row bit masks (reflexive)."""
    return tuple(reach_mask(d.succ_masks, 1 << u, 0) for u in range(d.n))


def _check_subset(d: Digraph, mask: int, what: str) -> None:
    if mask & ~d.full_mask:
        raise ValueError(f"{what} contains vertices outside V(D)")
