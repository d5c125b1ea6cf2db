import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_general_position, fraction_rank, rigidity_rows, small_graphs
from rigidrank.families import chained_k4, chained_k5_minus_edge, complete_graph, path
from rigidrank.graph import Graph, ParseError, delete_edges
from rigidrank.rigidity import (
    Configuration,
    ConfigurationError,
    _integer_rows,
    bareiss_rank,
    build_rigidity_matrix,
    format_configuration,
    generic_rank,
    generic_trial,
    is_general_position,
    parse_configuration,
    random_prime,
    rank_at,
    rank_mod_prime,
    sample_general_position,
    trial_streams,
)

TRI = Configuration.of([(0, 0), (1, 0), (0, 1)])

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def framework(draw, max_n=7):
    g = draw(small_graphs(max_n=max_n))
    pts = draw(st.lists(st.tuples(rationals, rationals), min_size=g.vertex_count, max_size=g.vertex_count))
    return g, Configuration(tuple(pts))


def test_single_edge_row():
    g = Graph(2, frozenset({(0, 1)}))
    R = build_rigidity_matrix(g, Configuration.of([(0, 0), (1, 0)]))
    assert R.entries == ((-1, 0, 1, 0),)
    assert (R.rows, R.cols) == (1, 4)


def test_coincident_points_give_zero_matrix():
    g = complete_graph(4)
    R = build_rigidity_matrix(g, Configuration.of([(3, 5)] * 4))
    assert all(x == 0 for row in R.entries for x in row)
    assert rank_at(g, Configuration.of([(3, 5)] * 4)).rank == 0


def test_triangle():
    R = build_rigidity_matrix(complete_graph(3), TRI)
    assert (R.rows, R.cols) == (3, 6)
    assert fraction_rank(R.entries) == 3
    res = rank_at(complete_graph(3), TRI)
    assert (res.rank, res.stress_count) == (3, 0)


def test_collinear_path_and_empty():
    p = Configuration.of([(0, 0), (1, 0), (2, 0)])
    assert rank_at(path(3), p).rank == 2
    assert rank_at(Graph(0), Configuration(())).rank == 0
    assert rank_at(Graph(3), p).rank == 0


def test_size_mismatch():
    with pytest.raises(ConfigurationError):
        rank_at(complete_graph(3), Configuration.of([(0, 0)]))
    with pytest.raises(ConfigurationError):
        build_rigidity_matrix(complete_graph(3), Configuration.of([(0, 0)]))


def test_bareiss_small_matrices():
    assert bareiss_rank([]) == 0
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([[0, 1, 2], [0, 2, 5], [3, 0, 0]]) == 3
    assert bareiss_rank([[2, 4, 6], [1, 2, 3], [0, 0, 1]]) == 2


@settings(max_examples=100, deadline=None)
@given(framework())
def test_rank_matches_fraction_oracle(fw):
    g, p = fw
    rows = rigidity_rows(g.vertex_count, g.edges, p.points)
    res = rank_at(g, p)
    assert res.rank == fraction_rank(rows)
    assert res.rank + res.stress_count == g.edge_count
    R = build_rigidity_matrix(g, p)
    assert [list(r) for r in R.entries] == rows
    assert all(sum(1 for x in r if x) <= 4 for r in R.entries)


@settings(max_examples=80, deadline=None)
@given(framework())
def test_rigid_motions_in_kernel(fw):
    g, p = fw
    R = build_rigidity_matrix(g, p)
    tx = [Fraction(k % 2 == 0) for k in range(R.cols)]
    ty = [Fraction(k % 2 == 1) for k in range(R.cols)]
    rot = []
    for x, y in p.points:
        rot += [-y, x]
    for field in (tx, ty, rot):
        assert all(sum(a * b for a, b in zip(row, field)) == 0 for row in R.entries)
    if g.vertex_count >= 2:
        assert rank_at(g, p).rank <= min(g.edge_count, 2 * g.vertex_count - 3)


def test_row_antisymmetry_under_endpoint_swap():
    g = Graph(2, frozenset({(0, 1)}))
    a = build_rigidity_matrix(g, Configuration.of([(1, 2), (5, -3)])).entries[0]
    b = build_rigidity_matrix(g, Configuration.of([(5, -3), (1, 2)])).entries[0]
    assert a == tuple(-x for x in b)


@settings(max_examples=60, deadline=None)
@given(framework(max_n=6), rationals.filter(bool), rationals, rationals)
def test_affine_invariance(fw, a, tx, ty):
    g, p = fw
    assert rank_at(g, p).rank == rank_at(g, p.affine(a, tx, ty)).rank


@settings(max_examples=60, deadline=None)
@given(framework(max_n=6))
def test_edge_deletion_changes_rank_by_at_most_one(fw):
    g, p = fw
    r = rank_at(g, p)
    for e in g.edge_list:
        r2 = rank_at(delete_edges(g, [e]), p)
        assert r2.rank in (r.rank - 1, r.rank)
        assert r.stress_count - 1 <= r2.stress_count <= r.stress_count


def test_generic_rank_examples():
    g = complete_graph(5)
    est = generic_rank(g, 5, 1)
    assert est.rank == 7 and est.certified and est.method == "generic-estimate" and est.trials == 5
    # oracle: exact Fraction rank at one random rational configuration
    rng = random.Random(3)
    pts = [(Fraction(rng.randint(-999, 999), rng.randint(1, 50)), Fraction(rng.randint(-999, 999), 7)) for _ in range(5)]
    assert fraction_rank(rigidity_rows(5, g.edges, pts)) == 7
    assert generic_rank(chained_k5_minus_edge(3), 5, 0).rank == 24
    assert generic_rank(chained_k4(2), 5, 0).rank == 13
    assert generic_rank(Graph(0), 1, 0).rank == 0
    with pytest.raises(ValueError):
        generic_rank(g, 0, 0)


def test_generic_rank_deterministic():
    g = chained_k4(3)
    assert generic_rank(g, 3, 11) == generic_rank(g, 3, 11)
    a = [r.random() for r in trial_streams(5, 4)]
    b = [r.random() for r in trial_streams(5, 6)][:4]
    assert a == b  # trial k's stream does not depend on how many trials run


@settings(max_examples=30, deadline=None)
@given(small_graphs(max_n=7), st.integers(0, 2**32))
def test_modular_trial_bounded_by_exact_rank(g, seed):
    for rng in trial_streams(seed, 2):
        pts, prime, r_mod = generic_trial(g, rng)
        assert r_mod <= bareiss_rank(_integer_rows(g, pts))
        assert prime.bit_length() == 62


def test_rank_mod_prime_detects_dependence_mod_p():
    assert rank_mod_prime([[1, 2], [3, 4]], 2) == 1
    assert rank_mod_prime([[1, 2], [3, 4]], 101) == 2
    assert rank_mod_prime([], 7) == 0


def test_random_prime_is_prime():
    import gmpy2

    rng = random.Random(1)
    for _ in range(5):
        q = random_prime(rng)
        assert gmpy2.is_prime(q) and 2**61 <= q < 2**62


def test_general_position_examples():
    moment = Configuration.of([(t, t * t) for t in range(-3, 5)])
    assert is_general_position(moment)
    assert not is_general_position(Configuration.of([(0, 0), (5, 1), (1, 1), (2, 2)]))
    assert is_general_position(Configuration.of([(0, 0), (0, 0)]))
    assert not is_general_position(Configuration.of([(0, 0), (0, 0), (1, 2)]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=7))
def test_general_position_matches_triples(pts):
    assert is_general_position(Configuration.of(pts)) == brute_general_position(pts)


def test_sample_general_position():
    assert len(sample_general_position(0, 0)) == 0
    for seed in range(5):
        p = sample_general_position(3, seed)
        assert is_general_position(p)
    p = sample_general_position(15, 1)
    assert brute_general_position(p.points)
    assert rank_at(chained_k5_minus_edge(3), p).rank == 24
    assert sample_general_position(9, 4) == sample_general_position(9, 4)
    # not all on one parabola
    assert any(y != x * x for x, y in p.points)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(rationals, rationals), max_size=6))
def test_configuration_text_round_trip(pts):
    p = Configuration.of(pts)
    assert parse_configuration(format_configuration(p)) == p


@pytest.mark.parametrize("text, line", [("1 2\n3\n", 2), ("1 2/4\n", 1), ("1 2/0\n", 1), ("x 1\n", 1), ("1 -2/3\n1 2/-3\n", 2)])
def test_configuration_diagnostics(text, line):
    with pytest.raises(ParseError) as info:
        parse_configuration(text)
    assert info.value.line == line
