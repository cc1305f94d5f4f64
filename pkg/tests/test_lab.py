import random

import pytest

from copwin.arena import INVISIBLE_LAZY, VISIBLE_FAST
from copwin.digraph import Digraph, fingerprint
from copwin.errors import ConstructionUnavailableError, SizeLimitError
from copwin.lab import (
    GAP_FIELDS,
    canonical_graph_key,
    counterexample_family,
    enumerate_connected_graphs,
    enumerate_digraphs,
    gap_scan,
    graph_id_of,
    random_digraph,
)
from copwin.reports import rows_to_csv, rows_to_jsonl


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def test_enumerate_digraph_counts():
    assert sum(1 for _ in enumerate_digraphs(1)) == 1
    assert sum(1 for _ in enumerate_digraphs(2)) == 4
    assert sum(1 for _ in enumerate_digraphs(3)) == 64


def test_enumerate_digraphs_distinct_and_deterministic():
    run1 = [fingerprint(d) for d in enumerate_digraphs(3)]
    run2 = [fingerprint(d) for d in enumerate_digraphs(3)]
    assert run1 == run2
    assert len(set(run1)) == 64


def test_enumerate_digraphs_size_limit():
    with pytest.raises(SizeLimitError):
        list(enumerate_digraphs(6))


# ---------------------------------------------------------------------------
# random digraphs
# ---------------------------------------------------------------------------

def test_random_digraph_extremes():
    assert random_digraph(5, 0.0, 1).m == 0
    assert random_digraph(5, 1.0, 1).m == 20


def test_random_digraph_deterministic():
    a = random_digraph(5, 0.3, 42)
    b = random_digraph(5, 0.3, 42)
    assert a == b
    c = random_digraph(5, 0.3, 43)
    assert a != c  # different seed, virtually certain to differ


def test_random_digraph_validates_p():
    with pytest.raises(ValueError):
        random_digraph(3, 1.5, 0)


# ---------------------------------------------------------------------------
# connected undirected graphs up to isomorphism
# ---------------------------------------------------------------------------

def test_connected_graph_class_counts():
    # numbers of connected graphs up to isomorphism on 1..5 vertices
    for n, count in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)]:
        assert len(enumerate_connected_graphs(n)) == count


def test_canonical_key_invariant_under_relabeling():
    rng = random.Random(17)
    for trial in range(40):
        n = rng.randint(2, 6)
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5
        ]
        perm = list(range(n))
        rng.shuffle(perm)
        permuted = [tuple(sorted((perm[u], perm[v]))) for u, v in edges]
        assert canonical_graph_key(n, edges) == canonical_graph_key(n, permuted)


def test_canonical_key_separates_non_isomorphic():
    path = [(0, 1), (1, 2), (2, 3)]
    star = [(0, 1), (0, 2), (0, 3)]
    assert canonical_graph_key(4, path) != canonical_graph_key(4, star)


# ---------------------------------------------------------------------------
# gap scanning
# ---------------------------------------------------------------------------

def test_gap_scan_all_n3_visible_gap_free():
    result = gap_scan(list(enumerate_digraphs(3)), VISIBLE_FAST)
    assert result.summary.instances == 64
    assert result.summary.gaps_positive == 0
    assert result.summary.errors == 0
    assert all(r.gap == 0 and r.ratio == 1.0 and r.status == "ok" for r in result.records)


def test_gap_scan_empty_source():
    result = gap_scan([], INVISIBLE_LAZY)
    assert result.summary.instances == 0
    assert result.summary.max_gap == 0
    assert result.records == ()


def test_gap_scan_deterministic_reports():
    graphs = [random_digraph(4, 0.4, s) for s in range(8)]
    r1 = gap_scan(graphs, VISIBLE_FAST)
    r2 = gap_scan(graphs, VISIBLE_FAST)
    csv1 = rows_to_csv(GAP_FIELDS, [r.to_row() for r in r1.records])
    csv2 = rows_to_csv(GAP_FIELDS, [r.to_row() for r in r2.records])
    assert csv1 == csv2
    jl1 = rows_to_jsonl([r.to_row() for r in r1.records])
    jl2 = rows_to_jsonl([r.to_row() for r in r2.records])
    assert jl1 == jl2


def test_gap_scan_parallel_matches_serial():
    graphs = [random_digraph(4, 0.4, s) for s in range(6)]
    serial = gap_scan(graphs, INVISIBLE_LAZY, jobs=1)
    parallel = gap_scan(graphs, INVISIBLE_LAZY, jobs=2)
    assert [r.to_row() for r in serial.records] == [r.to_row() for r in parallel.records]


def test_gap_scan_budget_error_recorded_in_row():
    graphs = [Digraph(3, [(0, 1), (1, 2), (2, 0)]), Digraph(2, [])]
    result = gap_scan(graphs, VISIBLE_FAST, state_budget=30)
    assert result.records[0].status == "budget-exceeded"
    assert result.records[0].copnum is None
    # the scan continued: the trivial second instance still solved
    assert result.records[1].status == "ok"
    assert result.summary.errors == 1


def test_gap_scan_honours_explicit_ids():
    graphs = [("mine", Digraph(1))]
    result = gap_scan(graphs, VISIBLE_FAST)
    assert result.records[0].graph_id == "mine"


def test_gap_record_invariants_on_scan():
    result = gap_scan(list(enumerate_digraphs(2)), INVISIBLE_LAZY)
    for rec in result.records:
        assert rec.gap >= 0
        assert rec.ratio >= 1.0
        assert rec.n == 2
        assert len(rec.graph_id) == 12
        assert rec.graph_id == graph_id_of(Digraph(2, []))[:12] or rec.m > 0


def test_csv_headers_match_contract():
    text = rows_to_csv(GAP_FIELDS, [])
    assert text == "graph_id,n,m,variant,copnum,mon_copnum,gap,ratio,runtime_ms,status\n"


# ---------------------------------------------------------------------------
# counterexample family stub
# ---------------------------------------------------------------------------

def test_family_rejects_bad_k():
    with pytest.raises(ValueError):
        counterexample_family(0, VISIBLE_FAST)


def test_family_construction_unavailable():
    with pytest.raises(ConstructionUnavailableError):
        counterexample_family(1, VISIBLE_FAST)
    with pytest.raises(ConstructionUnavailableError):
        counterexample_family(3, INVISIBLE_LAZY)
