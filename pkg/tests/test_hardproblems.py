import random

import pytest

from copwin.digraph import Digraph, bidirect, is_acyclic
from copwin.errors import SizeLimitError
from copwin.hardproblems import (
    REPORT_FIELDS,
    feedback_arc_number_by_orderings,
    hamiltonian_cycle,
    hamiltonian_cycle_bruteforce,
    min_equivalent_subgraph,
    min_feedback_arc_set,
    min_feedback_vertex_set,
    transitive_reduction_dag,
    validate_feedback_witness,
    validate_hamiltonian_witness,
    validate_mes_witness,
    width_annotated_report,
)
from copwin.lab import enumerate_digraphs, random_digraph
from copwin.reports import rows_to_csv

C3 = Digraph(3, [(0, 1), (1, 2), (2, 0)])
C5 = Digraph(5, [(i, (i + 1) % 5) for i in range(5)])
CHAIN = Digraph(3, [(0, 1), (1, 2)])
TOURNAMENT = Digraph(3, [(0, 1), (0, 2), (1, 2)])
DAG = Digraph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


def _random_dag(n, p, seed):
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and pos[u] < pos[v] and rng.random() < p
    ]
    return Digraph(n, arcs)


# ---------------------------------------------------------------------------
# Hamiltonian cycle
# ---------------------------------------------------------------------------

def test_hamiltonian_examples():
    sol = hamiltonian_cycle(C5)
    assert sol.witness == (0, 1, 2, 3, 4)
    assert sol.value == 5
    assert hamiltonian_cycle(DAG).witness is None
    k4 = bidirect(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    sol = hamiltonian_cycle(k4)
    assert validate_hamiltonian_witness(k4, sol.witness)
    assert hamiltonian_cycle_bruteforce(k4)


def test_hamiltonian_tiny_graphs():
    assert hamiltonian_cycle(Digraph(0)).witness is None
    assert hamiltonian_cycle(Digraph(1)).witness is None
    two = Digraph(2, [(0, 1), (1, 0)])
    assert hamiltonian_cycle(two).witness == (0, 1)


def test_hamiltonian_size_limit():
    with pytest.raises(SizeLimitError):
        hamiltonian_cycle(Digraph(19))
    with pytest.raises(SizeLimitError):
        hamiltonian_cycle_bruteforce(Digraph(9))


def test_hamiltonian_matches_bruteforce():
    rng = random.Random(6)
    for trial in range(40):
        n = rng.randint(2, 7)
        d = random_digraph(n, rng.choice([0.3, 0.5, 0.7]), 500 + trial)
        dp = hamiltonian_cycle(d)
        assert (dp.witness is not None) == hamiltonian_cycle_bruteforce(d)
        if dp.witness is not None:
            assert validate_hamiltonian_witness(d, dp.witness)


# ---------------------------------------------------------------------------
# feedback vertex set
# ---------------------------------------------------------------------------

def test_fvs_examples():
    assert min_feedback_vertex_set(DAG).witness == ()
    assert min_feedback_vertex_set(C3).value == 1
    two = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert min_feedback_vertex_set(two).value == 2


def test_fvs_witness_validates():
    rng = random.Random(3)
    for trial in range(25):
        d = random_digraph(rng.randint(1, 6), 0.4, 900 + trial)
        sol = min_feedback_vertex_set(d)
        assert validate_feedback_witness(d, sol)


def test_fvs_size_limit():
    with pytest.raises(SizeLimitError):
        min_feedback_vertex_set(Digraph(15))


# ---------------------------------------------------------------------------
# feedback arc set
# ---------------------------------------------------------------------------

def test_fas_examples():
    assert min_feedback_arc_set(DAG).value == 0
    assert min_feedback_arc_set(C3).value == 1
    two_cycle = Digraph(2, [(0, 1), (1, 0)])
    assert min_feedback_arc_set(two_cycle).value == 1
    assert feedback_arc_number_by_orderings(two_cycle) == 1


def test_fas_subset_search_matches_ordering_oracle_exhaustive_n3():
    for d in enumerate_digraphs(3):
        sol = min_feedback_arc_set(d)
        assert sol.value == feedback_arc_number_by_orderings(d)
        assert validate_feedback_witness(d, sol)


def test_fas_matches_oracle_random():
    rng = random.Random(12)
    for trial in range(25):
        n = rng.randint(2, 7)
        d = random_digraph(n, 0.3, 700 + trial)
        sol = min_feedback_arc_set(d)
        assert sol.value == feedback_arc_number_by_orderings(d), d.arcs
        assert validate_feedback_witness(d, sol)


def test_fas_size_limits():
    dense = bidirect(7, [(u, v) for u in range(7) for v in range(u + 1, 7)])
    assert dense.m == 42  # n=7 <= 9, so allowed despite m > 20
    big = Digraph(10, [(u, (u + 1) % 10) for u in range(10)])
    assert big.m <= 20  # n=10 > 9 but m <= 20, allowed
    min_feedback_arc_set(big)
    with pytest.raises(SizeLimitError):
        min_feedback_arc_set(
            bidirect(11, [(u, v) for u in range(11) for v in range(u + 1, 11)])
        )


def test_acyclicity_zero_objective_equivalence():
    for d in enumerate_digraphs(3):
        fvs0 = min_feedback_vertex_set(d).value == 0
        fas0 = min_feedback_arc_set(d).value == 0
        assert fvs0 == fas0 == is_acyclic(d)


# ---------------------------------------------------------------------------
# minimum equivalent subgraph
# ---------------------------------------------------------------------------

def test_mes_examples():
    sol = min_equivalent_subgraph(TOURNAMENT)
    assert sol.witness == ((0, 1), (1, 2))
    assert sol.value == 2
    assert min_equivalent_subgraph(C3).value == 3
    assert min_equivalent_subgraph(CHAIN).witness == CHAIN.arcs


def test_mes_witness_validates():
    rng = random.Random(88)
    for trial in range(15):
        d = random_digraph(rng.randint(1, 5), 0.4, 300 + trial)
        sol = min_equivalent_subgraph(d)
        assert validate_mes_witness(d, sol)


def test_mes_size_limit():
    with pytest.raises(SizeLimitError):
        min_equivalent_subgraph(Digraph(9))


def test_transitive_reduction_examples():
    assert transitive_reduction_dag(TOURNAMENT) == ((0, 1), (1, 2))
    assert transitive_reduction_dag(CHAIN) == CHAIN.arcs
    assert transitive_reduction_dag(Digraph(3)) == ()
    with pytest.raises(ValueError):
        transitive_reduction_dag(C3)


def test_mes_equals_transitive_reduction_on_dags():
    for trial in range(20):
        d = _random_dag(random.Random(trial).randint(1, 7), 0.5, trial)
        assert is_acyclic(d)
        mes = min_equivalent_subgraph(d) if d.n <= 8 else None
        if mes is not None:
            assert set(mes.witness) == set(transitive_reduction_dag(d))


# ---------------------------------------------------------------------------
# width-annotated report
# ---------------------------------------------------------------------------

def test_width_annotated_report_rows():
    rows = width_annotated_report([("dag", DAG), ("c3", C3)])
    dag_row, c3_row = rows
    assert dag_row["dagwidth"] == 1 and dag_row["kellywidth"] == 1
    assert dag_row["fvs"] == 0 and dag_row["fas"] == 0 and dag_row["ham"] == 0
    assert c3_row["dagwidth"] == 2 and c3_row["kellywidth"] == 2
    assert c3_row["fvs"] == 1 and c3_row["fas"] == 1 and c3_row["ham"] == 1
    assert dag_row["status"] == c3_row["status"] == "ok"


def test_width_annotated_report_records_size_limits():
    big = Digraph(15, [(u, u + 1) for u in range(14)])
    rows = width_annotated_report([("big", big)])
    row = rows[0]
    assert row["dagwidth"] == 1  # games still run fine at this size
    assert row["fvs"] is None and "fvs:size-limit" in row["status"]
    assert row["mes"] is None and "mes:size-limit" in row["status"]


def test_width_annotated_report_empty():
    assert width_annotated_report([]) == []
    text = rows_to_csv(REPORT_FIELDS, [])
    assert text.splitlines()[0] == "instance,n,m,dagwidth,kellywidth,fvs,fas,ham,mes,status"
