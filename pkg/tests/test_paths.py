import random

import pytest
from hypothesis import given, settings, strategies as st

from media import (
    LengthFunction,
    Orientation,
    all_complementary_pairs,
    all_pairs_shortest_paths,
    apply_message,
    complement_of,
    compute_content,
    content_dag,
    content_orientation,
    distances_to_state,
    is_straight_path,
    permutation_medium,
    powerset_medium,
    reset_sequence,
    single_source_distances,
    straight_path_between,
)
from media.oracles import brute_complement_pairs, brute_distances, brute_shortest_reset

from corpus import family_medium, named_media, random_family_medium, random_lengths, six_subsets


def label_pairs(M, pairs):
    return sorted(tuple(sorted((M.state_label(a), M.state_label(b)))) for a, b in pairs)


def state(M, label):
    return [M.state_label(s) for s in range(M.n)].index(label)


def test_content_dag_unique_sink():
    M = permutation_medium(3)
    for q in range(M.n):
        arcs = content_dag(M, content_orientation(M, q))
        sources = {a for a, _ in arcs}
        assert [s for s in range(M.n) if s not in sources] == [q]


def test_content_dag_powerset2():
    M = powerset_medium(2)
    arcs = content_dag(M, Orientation.default(M.tokens))
    assert len(arcs) == 4
    assert {b for _, b in arcs} - {a for a, _ in arcs} == {state(M, "{1,2}")}
    assert content_dag(powerset_medium(0), Orientation(())) == []


@pytest.mark.parametrize("name,M", named_media())
def test_reset_sequence(name, M):
    res = reset_sequence(M)
    assert len(res.word) == max(M.n - 1, 0)
    assert {apply_message(M, s, res.word) for s in range(M.n)} == {res.sink}


def test_reset_examples():
    assert reset_sequence(powerset_medium(0)).word == ()
    S = six_subsets()
    assert len(reset_sequence(S).word) == 5
    assert len(brute_shortest_reset(S)) == 4
    assert len(reset_sequence(permutation_medium(3)).word) == 5


def test_unit_distances_are_content_differences():
    M = permutation_medium(4)
    unit = LengthFunction.unit(M.tau)
    for q in (0, 7, 23):
        d = distances_to_state(M, unit, q)
        for s in range(M.n):
            assert d[s] == len(compute_content(M, q) - compute_content(M, s))
    P = permutation_medium(3)
    assert single_source_distances(P, LengthFunction.unit(P.tau), state(P, "abc"))[state(P, "cba")] == 3


@pytest.mark.parametrize("name,M", named_media())
def test_apsp_matches_per_target(name, M):
    rng = random.Random(name)
    lam = random_lengths(M, rng)
    table = all_pairs_shortest_paths(M, lam)
    brute = brute_distances(M, lam)
    assert [list(r) for r in table.dist] == brute
    for q in range(M.n):
        col = distances_to_state(M, lam, q)
        assert [table.dist[s][q] for s in range(M.n)] == col
    for s in range(M.n):
        assert list(single_source_distances(M, lam, s)) == [table.dist[s][q] for q in range(M.n)]


@pytest.mark.parametrize("name,M", named_media())
def test_straight_paths_from_table(name, M):
    table = all_pairs_shortest_paths(M, LengthFunction.unit(M.tau))
    for s in range(M.n):
        for q in range(M.n):
            w = straight_path_between(M, table, s, q)
            assert is_straight_path(M, s, w)
            assert apply_message(M, s, w) == q
            assert set(w) == compute_content(M, q) - compute_content(M, s)


def test_straight_path_example():
    S = six_subsets()
    table = all_pairs_shortest_paths(S, LengthFunction.unit(S.tau))
    assert len(straight_path_between(S, table, state(S, "{1}"), state(S, "{2,3}"))) == 3
    assert straight_path_between(S, table, 2, 2) == ()


def test_complement_examples():
    P = powerset_medium(3)
    assert P.state_label(complement_of(P, state(P, "{1}"))) == "{2,3}"
    assert len(all_complementary_pairs(P)) == 4
    F = family_medium([[], [1], [2]], names=[1, 2])
    assert complement_of(F, state(F, "{}")) is None
    S = six_subsets()
    assert label_pairs(S, all_complementary_pairs(S)) == [("{1,2}", "{3}"), ("{1,3}", "{2}"), ("{1}", "{2,3}")]


@pytest.mark.parametrize("name,M", named_media())
def test_complements_match_brute(name, M):
    pairs = all_complementary_pairs(M)
    assert pairs == brute_complement_pairs(M)
    for a, b in pairs:
        assert complement_of(M, a) == b and complement_of(M, b) == a
    partners = [x for p in pairs for x in set(p)]
    assert len(partners) == len(set(partners))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_complement_is_farthest_for_nonnegative_lengths(seed):
    rng = random.Random(seed)
    M = random_family_medium(rng, 5, 20)
    lam = random_lengths(M, rng, lo=0, hi=6)
    table = all_pairs_shortest_paths(M, lam)
    for a, b in all_complementary_pairs(M):
        assert table.dist[a][b] == max(table.dist[a])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_apsp_random(seed):
    rng = random.Random(seed)
    M = random_family_medium(rng, rng.randint(1, 7), rng.randint(1, 40))
    lam = random_lengths(M, rng)
    table = all_pairs_shortest_paths(M, lam)
    assert [list(r) for r in table.dist] == brute_distances(M, lam)
    assert table.scan_steps <= 4 * M.n * (M.tau // 2 + 2 * M.n)


@pytest.mark.parametrize("name,M", [(n, M) for n, M in named_media() if M.n <= 8])
def test_reset_not_shorter_than_optimum(name, M):
    assert len(reset_sequence(M).word) >= len(brute_shortest_reset(M))
