"""Exact game solving: winners, cop numbers, strategy certificates.

The visible game is solved by backward induction (attractor) over the
explicitly materialized bipartite arena; the invisible games by a
memoized breadth-first search over contamination states.  Both are
exact; exceeding the arena-transition budget raises
StateBudgetExceededError, never a silent robber verdict.

Certificates are replayable by ``verify_certificate``, which is written
against the arena-module semantics only and shares no code with the
solving kernels.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from . import __version__
from .arena import (
    Agility,
    Confinement,
    GameVariant,
    Visibility,
    contaminate_mask,
    robber_options_mask,
)
from .bits import iter_bits, mask_from, mask_to_tuple, subsets_upto
from .digraph import Digraph, fingerprint, reach_mask
from .engine import get_backend
from .errors import CertificateError, StateBudgetExceededError

DEFAULT_STATE_BUDGET = 50_000_000

CERTIFICATE_FORMAT = "copwin-certificate/1"


class Winner(enum.Enum):
    COPS = "cops"
    ROBBER = "robber"


@dataclass(frozen=True)
class Certificate:
    """Serializable winning cop strategy.

    ``kind='positional'``: map from visible positions to the next cop
    set.  ``kind='sequence'``: the cop sets played against an invisible
    robber, in order.  Vertex sets appear as ascending tuples; the body
    is sorted, so equal strategies serialize to equal bytes.
    """

    variant: str
    k: int
    monotone: bool
    graph_sha256: str
    kind: str
    body: tuple
    tool_version: str = __version__

    def to_json_text(self) -> str:
        if self.kind == "positional":
            body = [
                {"cops": list(c), "robber": r, "move": list(mv)}
                for c, r, mv in self.body
            ]
        else:
            body = [list(c) for c in self.body]
        doc = {
            "format": CERTIFICATE_FORMAT,
            "tool_version": self.tool_version,
            "variant": self.variant,
            "k": self.k,
            "monotone": self.monotone,
            "graph_sha256": self.graph_sha256,
            "kind": self.kind,
            "body": body,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def from_json_text(text: str) -> "Certificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"certificate is not valid JSON: {exc}") from None
        if not isinstance(doc, dict) or doc.get("format") != CERTIFICATE_FORMAT:
            raise CertificateError("unrecognized certificate format")
        try:
            kind = doc["kind"]
            if kind == "positional":
                body = tuple(
                    sorted(
                        (tuple(e["cops"]), e["robber"], tuple(e["move"]))
                        for e in doc["body"]
                    )
                )
            elif kind == "sequence":
                body = tuple(tuple(c) for c in doc["body"])
            else:
                raise CertificateError(f"unknown certificate kind {kind!r}")
            return Certificate(
                variant=doc["variant"],
                k=int(doc["k"]),
                monotone=bool(doc["monotone"]),
                graph_sha256=doc["graph_sha256"],
                kind=kind,
                body=body,
                tool_version=doc.get("tool_version", "unknown"),
            )
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"malformed certificate: {exc!r}") from None


@dataclass(frozen=True)
class Outcome:
    winner: Winner
    certificate: Optional[Certificate]
    states_explored: int

    @property
    def cops_win(self) -> bool:
        return self.winner is Winner.COPS


@dataclass(frozen=True)
class CopNumberResult:
    value: int
    outcome: Outcome


@dataclass(frozen=True)
class GapResult:
    cop_number: int
    monotone_cop_number: int
    gap: int
    ratio: float
    plain: CopNumberResult
    monotone: CopNumberResult


@dataclass(frozen=True)
class VerificationResult:
    valid: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.valid


def solve(
    d: Digraph,
    k: int,
    variant: GameVariant,
    monotone: bool = False,
    state_budget: int = DEFAULT_STATE_BUDGET,
    engine: Optional[str] = None,
) -> Outcome:
    """Decide the winner with k cops; certificate attached to cop wins."""
    if not 0 <= k <= d.n:
        raise ValueError(f"cop budget {k} outside 0..{d.n}")
    backend = get_backend(engine, n=d.n)
    # refuse obviously hopeless instances before materializing the move list
    move_count = sum(math.comb(d.n, i) for i in range(k + 1))
    if variant.visibility is Visibility.VISIBLE:
        arena_bound = move_count * d.n * move_count
    else:
        arena_bound = move_count
    if d.n > 0 and arena_bound > state_budget:
        raise StateBudgetExceededError(state_budget, arena_bound)
    moves = subsets_upto(d.n, k)
    if variant.visibility is Visibility.VISIBLE:
        strong = variant.confinement is Confinement.STRONG_COMPONENT
        cops_win, strategy, transitions = backend.solve_visible(
            d.succ_masks, d.pred_masks, d.n, moves, monotone, strong, state_budget
        )
        if not cops_win:
            return Outcome(Winner.ROBBER, None, transitions)
        cert = _positional_certificate(d, k, variant, monotone, strategy, strong)
        return Outcome(Winner.COPS, cert, transitions)
    lazy = variant.agility is Agility.LAZY
    cops_win, seq, transitions = backend.solve_invisible(
        d.succ_masks, d.n, moves, lazy, monotone, state_budget
    )
    if not cops_win:
        return Outcome(Winner.ROBBER, None, transitions)
    cert = Certificate(
        variant=variant.name,
        k=k,
        monotone=monotone,
        graph_sha256=fingerprint(d),
        kind="sequence",
        body=tuple(mask_to_tuple(c) for c in seq),
    )
    return Outcome(Winner.COPS, cert, transitions)


def solve_visible(
    d: Digraph,
    k: int,
    confinement: Confinement = Confinement.REACHABILITY,
    monotone: bool = False,
    state_budget: int = DEFAULT_STATE_BUDGET,
    engine: Optional[str] = None,
) -> Outcome:
    variant = GameVariant(Visibility.VISIBLE, Agility.FAST, confinement)
    return solve(d, k, variant, monotone, state_budget, engine)


def solve_invisible(
    d: Digraph,
    k: int,
    agility: Agility = Agility.LAZY,
    monotone: bool = False,
    state_budget: int = DEFAULT_STATE_BUDGET,
    engine: Optional[str] = None,
) -> Outcome:
    variant = GameVariant(Visibility.INVISIBLE, agility)
    return solve(d, k, variant, monotone, state_budget, engine)


def cop_number(
    d: Digraph,
    variant: GameVariant,
    monotone: bool = False,
    state_budget: int = DEFAULT_STATE_BUDGET,
    engine: Optional[str] = None,
    min_k: int = 0,
) -> CopNumberResult:
    """Smallest k whose solve reports a cop win (n cops always suffice)."""
    for k in range(min_k, d.n + 1):
        outcome = solve(d, k, variant, monotone, state_budget, engine)
        if outcome.cops_win:
            return CopNumberResult(k, outcome)
    raise AssertionError("unreachable: n cops always win")


def gap(
    d: Digraph,
    variant: GameVariant,
    state_budget: int = DEFAULT_STATE_BUDGET,
    engine: Optional[str] = None,
) -> GapResult:
    """Plain vs monotone cop number; gap >= 0 and ratio >= 1 by construction."""
    plain = cop_number(d, variant, False, state_budget, engine)
    # a monotone win is a fortiori a plain win, so the sweep may start at plain k
    mono = cop_number(d, variant, True, state_budget, engine, min_k=plain.value)
    g = mono.value - plain.value
    ratio = mono.value / plain.value if plain.value else 1.0
    return GapResult(plain.value, mono.value, g, ratio, plain, mono)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def _positional_certificate(d, k, variant, monotone, strategy, strong):
    """Trim the full winning-strategy map to positions reachable under it."""
    entries = []
    seen = set()
    stack = [(0, r) for r in range(d.n - 1, -1, -1)]
    while stack:
        cmask, r = stack.pop()
        if (cmask, r) in seen:
            continue
        seen.add((cmask, r))
        move = strategy[(cmask, r)]
        entries.append((mask_to_tuple(cmask), r, mask_to_tuple(move)))
        opts = robber_options_mask(d, cmask, move, r, strong=strong)
        for r2 in iter_bits(opts):
            if (move, r2) not in seen:
                stack.append((move, r2))
    entries.sort()
    return Certificate(
        variant=variant.name,
        k=k,
        monotone=monotone,
        graph_sha256=fingerprint(d),
        kind="positional",
        body=tuple(entries),
    )


def verify_certificate(d: Digraph, cert: Certificate) -> VerificationResult:
    """Independently replay a certificate against the arena semantics.

    Positional certificates are replayed against every robber response
    from every initial robber choice; sequence certificates are run
    through the contamination update.  Returns the first violation
    found.  A fingerprint mismatch or malformed certificate raises
    CertificateError instead (it is not a game result).
    """
    if cert.graph_sha256 != fingerprint(d):
        raise CertificateError("certificate fingerprint does not match the graph")
    variant = GameVariant.from_name(cert.variant)
    if not 0 <= cert.k <= d.n:
        raise CertificateError(f"cop budget {cert.k} outside 0..{d.n}")
    if variant.visibility is Visibility.VISIBLE:
        if cert.kind != "positional":
            raise CertificateError("visible-game certificate must be positional")
        return _verify_positional(d, cert, variant)
    if cert.kind != "sequence":
        raise CertificateError("invisible-game certificate must be a move sequence")
    return _verify_sequence(d, cert, variant)


def _verify_positional(d, cert, variant):
    full = d.full_mask
    strong = variant.confinement is Confinement.STRONG_COMPONENT
    strategy: Dict[Tuple[int, int], int] = {}
    for cops, robber, move in cert.body:
        cmask = mask_from(cops)
        mmask = mask_from(move)
        if cmask & ~full or mmask & ~full or not 0 <= robber < d.n:
            raise CertificateError(f"entry ({cops},{robber}) outside V(D)")
        if len(cops) > cert.k or len(move) > cert.k:
            return VerificationResult(
                False, f"cop set exceeds budget k={cert.k} at ({cops},{robber})"
            )
        if cmask >> robber & 1:
            raise CertificateError(f"entry ({cops},{robber}) puts the robber on a cop")
        strategy[(cmask, robber)] = mmask

    verified = set()

    def open_position(key):
        """Check one position, return its successor positions (or a failure)."""
        cmask, r = key
        if key not in strategy:
            return None, (
                f"no move recorded for reachable position ({mask_to_tuple(cmask)},{r})"
            )
        move = strategy[key]
        opts = robber_options_mask(d, cmask, move, r, strong=strong)
        if cert.monotone:
            old_space = reach_mask(d.succ_masks, 1 << r, cmask)
            for r2 in iter_bits(opts):
                if reach_mask(d.succ_masks, 1 << r2, move) & ~old_space:
                    return None, (
                        f"non-monotone step at ({mask_to_tuple(cmask)},{r}) -> "
                        f"({mask_to_tuple(move)},{r2})"
                    )
        return [(move, r2) for r2 in iter_bits(opts)], None

    # depth-first replay; a position revisited on the current play is an
    # infinite play, hence an invalid strategy
    for r0 in range(d.n):
        root = (0, r0)
        if root in verified:
            continue
        succs, fail = open_position(root)
        if fail:
            return VerificationResult(False, fail)
        stack = [(root, iter(succs))]
        path = {root}
        while stack:
            key, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.remove(key)
                verified.add(key)
                continue
            if nxt in verified:
                continue
            if nxt in path:
                return VerificationResult(
                    False,
                    f"strategy loops at position ({mask_to_tuple(nxt[0])},{nxt[1]})",
                )
            succs, fail = open_position(nxt)
            if fail:
                return VerificationResult(False, fail)
            stack.append((nxt, iter(succs)))
            path.add(nxt)
    return VerificationResult(True)


def _verify_sequence(d, cert, variant):
    full = d.full_mask
    lazy = variant.agility is Agility.LAZY
    r_mask = full
    c_mask = 0
    for i, move in enumerate(cert.body):
        mmask = mask_from(move)
        if mmask & ~full:
            raise CertificateError(f"move {i} outside V(D)")
        if len(move) > cert.k:
            return VerificationResult(False, f"move {i} exceeds budget k={cert.k}")
        new_r = contaminate_mask(d, c_mask, mmask, r_mask, lazy)
        if cert.monotone and new_r & ~r_mask:
            return VerificationResult(
                False,
                f"move {i} recontaminates {mask_to_tuple(new_r & ~r_mask)}",
            )
        r_mask = new_r
        c_mask = mmask
    if r_mask:
        return VerificationResult(
            False, f"contamination {mask_to_tuple(r_mask)} left after the last move"
        )
    return VerificationResult(True)
