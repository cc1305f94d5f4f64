import random

import pytest

from copwin.arena import (
    INVISIBLE_FAST,
    INVISIBLE_LAZY,
    VISIBLE_FAST,
    Agility,
    Confinement,
    ContaminationState,
    GameVariant,
    VisiblePosition,
    Visibility,
    contaminate,
    cop_moves,
    initial_state,
    is_monotone_transition,
    robber_options,
    robber_space,
)
from copwin.digraph import Digraph, bidirect, delete_arcs, reach
from copwin.errors import UnsupportedVariantError
from copwin.lab import random_digraph

C3 = Digraph(3, [(0, 1), (1, 2), (2, 0)])
CHAIN = Digraph(3, [(0, 1), (1, 2)])


# ---------------------------------------------------------------------------
# variants and positions
# ---------------------------------------------------------------------------

def test_supported_variant_names():
    assert GameVariant.from_name("visible") is VISIBLE_FAST
    assert GameVariant.from_name("inert") is INVISIBLE_LAZY
    assert GameVariant.from_name("invisible-fast") is INVISIBLE_FAST
    assert GameVariant.from_name("dpw") is INVISIBLE_FAST


def test_unsupported_variants_rejected():
    with pytest.raises(UnsupportedVariantError):
        GameVariant(Visibility.VISIBLE, Agility.LAZY)
    with pytest.raises(UnsupportedVariantError):
        GameVariant(Visibility.INVISIBLE, Agility.LAZY, Confinement.STRONG_COMPONENT)
    with pytest.raises(UnsupportedVariantError):
        GameVariant(Visibility.INVISIBLE, Agility.FAST, Confinement.STRONG_COMPONENT)
    with pytest.raises(UnsupportedVariantError):
        GameVariant.from_name("nonsense")


def test_positions_validate():
    with pytest.raises(ValueError):
        VisiblePosition(frozenset({1}), 1)
    with pytest.raises(ValueError):
        ContaminationState(frozenset({0}), frozenset({0, 1}))
    VisiblePosition(frozenset({1}), 0)
    ContaminationState(frozenset({0}), frozenset({1}))


# ---------------------------------------------------------------------------
# cop moves
# ---------------------------------------------------------------------------

def test_cop_moves_counts():
    assert len(list(cop_moves(C3, 1))) == 4
    assert len(list(cop_moves(C3, 3))) == 8
    assert list(cop_moves(Digraph(0), 0)) == [frozenset()]


def test_cop_moves_unique_and_bounded():
    moves = list(cop_moves(C3, 2))
    assert len(moves) == len(set(moves)) == 7
    assert all(len(c) <= 2 for c in moves)
    assert moves[0] == frozenset()


def test_cop_moves_budget_validated():
    with pytest.raises(ValueError):
        list(cop_moves(C3, 4))
    with pytest.raises(ValueError):
        list(cop_moves(C3, -1))


def test_cop_moves_follows_canonical_solver_order():
    from copwin.bits import mask_from, subsets_upto

    moves = [mask_from(c) for c in cop_moves(C3, 2)]
    assert moves == subsets_upto(3, 2)


# ---------------------------------------------------------------------------
# robber options
# ---------------------------------------------------------------------------

def test_robber_options_examples():
    assert robber_options(C3, [], [0], 0) == {1, 2}
    # lifting every cop never captures: r itself stays reachable
    for d in (C3, CHAIN):
        for r in range(d.n):
            opts = robber_options(d, [v for v in range(d.n) if v != r][:1], [], r)
            assert r in opts
    assert robber_options(CHAIN, [], [2], 2) == frozenset()


def test_robber_options_avoid_only_stationary_cops():
    # cop moving 0 -> 1 on the chain: guard is empty, robber at 2 keeps {2}
    assert robber_options(CHAIN, [0], [1], 2) == {2}
    # stationary cop at 1 blocks the chain: robber at 0 trapped at 0, then caught
    assert robber_options(CHAIN, [1], [1, 0], 0) == frozenset()


def test_robber_options_strong_component_confinement():
    # one big cycle: without confinement the robber may run anywhere ahead;
    # the strong component of C3 minus nothing is everything, so equal here
    assert robber_options(C3, [], [0], 0, Confinement.STRONG_COMPONENT) == {1, 2}
    # chain has singleton components: a fast robber may still only sit still
    assert robber_options(CHAIN, [], [1], 0, Confinement.STRONG_COMPONENT) == {0}


def test_robber_options_rejects_robber_on_cop():
    with pytest.raises(ValueError):
        robber_options(C3, [0], [1], 0)


# ---------------------------------------------------------------------------
# contamination
# ---------------------------------------------------------------------------

def test_contaminate_examples():
    assert contaminate(C3, [], [0], [0, 1, 2], Agility.LAZY) == {1, 2}
    assert contaminate(CHAIN, [], [0], [1, 2], Agility.LAZY) == {1, 2}
    assert contaminate(CHAIN, [0], [0, 1], [1, 2], Agility.FAST) == {2}


def test_contaminate_rejects_overlap():
    with pytest.raises(ValueError):
        contaminate(C3, [0], [1], [0], Agility.LAZY)


def test_lazy_subset_of_fast_on_random_instances():
    rng = random.Random(4242)
    for trial in range(120):
        n = rng.randint(1, 8)
        d = random_digraph(n, rng.choice([0.2, 0.4, 0.6]), rng.randrange(10**6))
        c = {v for v in range(n) if rng.random() < 0.3}
        c2 = {v for v in range(n) if rng.random() < 0.3}
        r = {v for v in range(n) if v not in c and rng.random() < 0.6}
        lazy = contaminate(d, c, c2, r, Agility.LAZY)
        fast = contaminate(d, c, c2, r, Agility.FAST)
        assert lazy <= fast


def test_cop_idle_step_changes_nothing():
    rng = random.Random(99)
    for trial in range(80):
        n = rng.randint(1, 7)
        d = random_digraph(n, 0.4, trial)
        c = {v for v in range(n) if rng.random() < 0.3}
        r = {v for v in range(n) if v not in c and rng.random() < 0.6}
        assert contaminate(d, c, c, r, Agility.LAZY) == frozenset(r)
        # for a fast robber the idle step fixes exactly the game-closed sets,
        # i.e. those already closed under out-arcs avoiding the cops
        closed = reach(d, r, c)
        assert contaminate(d, c, c, closed, Agility.FAST) == closed


def test_arc_deletion_dominance():
    rng = random.Random(7)
    for trial in range(60):
        n = rng.randint(2, 7)
        d = random_digraph(n, 0.5, trial)
        if not d.arcs:
            continue
        drop = [a for a in d.arcs if rng.random() < 0.4]
        d2 = delete_arcs(d, drop)
        c = {v for v in range(n) if rng.random() < 0.25}
        c2 = {v for v in range(n) if rng.random() < 0.25}
        r = {v for v in range(n) if v not in c and rng.random() < 0.6}
        for ag in (Agility.LAZY, Agility.FAST):
            assert contaminate(d2, c, c2, r, ag) <= contaminate(d, c, c2, r, ag)
        for robber in range(n):
            if robber in c:
                continue
            assert robber_options(d2, c, c2, robber) <= robber_options(d, c, c2, robber)


# ---------------------------------------------------------------------------
# robber space / monotonicity / initial states
# ---------------------------------------------------------------------------

def test_robber_space_examples():
    assert robber_space(C3, [1], 0) == {0}
    assert robber_space(C3, [], 0) == {0, 1, 2}
    k3 = bidirect(3, [(0, 1), (0, 2), (1, 2)])
    assert robber_space(k3, [2], 0) == {0, 1}


def test_is_monotone_transition():
    assert not is_monotone_transition({1, 2}, {1, 2, 0})
    assert is_monotone_transition({1, 2}, {2})
    assert is_monotone_transition({1, 2}, {1, 2})


def test_initial_states():
    assert initial_state(C3, INVISIBLE_LAZY) == ContaminationState(
        frozenset(), frozenset({0, 1, 2})
    )
    single = initial_state(Digraph(1), VISIBLE_FAST)
    assert single == (VisiblePosition(frozenset(), 0),)
    assert initial_state(Digraph(0), VISIBLE_FAST) == ()
    assert initial_state(Digraph(0), INVISIBLE_FAST) == ContaminationState(
        frozenset(), frozenset()
    )
