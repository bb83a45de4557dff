"""One test per acceptance criterion; the conftest prints a PASS/FAIL line for each."""

import math
import random
import time
from functools import lru_cache

from media import (
    LengthFunction,
    Medium,
    apply_message,
    black_box_reset_sequence,
    content_orientation,
    enumerate_states,
    find_closed_orientation,
    find_violating_triple,
    is_closed,
    all_complementary_pairs,
    all_pairs_shortest_paths,
    complement_of,
    positive_effective_count,
    reset_sequence,
    set_family_oracle,
    verify_medium,
    wrap_explicit,
)
from media.blackbox import counted, powerset_oracle
from media.generators import permutation_medium
from media.oracles import (
    brute_axioms,
    brute_closed_scan,
    brute_complement_pairs,
    brute_distances,
    brute_is_closed,
    brute_shortest_reset,
)
from media.orientations import floor_log2

from corpus import generated_media, random_family_medium, random_lengths, six_subsets
from test_blackbox import Live, live_powerset


@lru_cache(maxsize=None)
def media():
    return tuple(generated_media())


def corrupted(M: Medium, rng: random.Random):
    """Variants of ``M`` with one transition removed or redirected."""
    arcs = list(M.transitions())
    if not arcs:
        return
    rows = [dict(row) for row in M.adjacency]
    s, t, q = rng.choice(arcs)
    dropped = [dict(r) for r in rows]
    del dropped[s][t]
    yield dropped
    if M.n > 2:
        moved = [dict(r) for r in rows]
        others = [x for x in range(M.n) if x not in (s, q)]
        moved[s][t] = rng.choice(others)
        yield moved


def rebuild(M, rows):
    return Medium(M.n, M.tokens, tuple(tuple(sorted(r.items())) for r in rows))


def report(label, **values):
    print(label, " ".join(f"{k}={v}" for k, v in values.items()))


def test_criterion_1_axioms_and_structure():
    start = time.perf_counter()
    rng = random.Random(1)
    checked = agreed = 0
    for name, M in media():
        assert verify_medium(M).ok, name
        if M.n <= 12:
            variants = [M] + [rebuild(M, rows) for rows in corrupted(M, rng)]
            for V in variants:
                checked += 1
                assert verify_medium(V).ok == (not brute_axioms(V)), name
                agreed += 1
    elapsed = time.perf_counter() - start
    report("criterion 1", media=len(media()), oracle_cases=checked, seconds=round(elapsed, 2))
    assert checked > 500
    assert elapsed < 60


def test_criterion_2_bounds():
    for name, M in media():
        n, tau, m = M.n, M.tau, M.m
        assert m <= n * math.log2(n) + 1e-9, name
        assert n <= 2 ** (tau // 2), name


def test_criterion_3_reset():
    start = time.perf_counter()
    for name, M in media():
        res = reset_sequence(M)
        assert len(res.word) == M.n - 1, name
        assert all(apply_message(M, s, res.word) == res.sink for s in range(M.n)), name
    S = six_subsets()
    best = brute_shortest_reset(S)
    assert best is not None and len(best) > 3
    elapsed = time.perf_counter() - start
    report("criterion 3", shortest_six_subsets=len(best), seconds=round(elapsed, 2))
    assert elapsed < 10


def test_criterion_4_shortest_paths():
    start = time.perf_counter()
    rng = random.Random(4)
    pool = [M for _, M in media() if 1 < M.n <= 60]
    cases = negative = 0
    while cases < 240:
        if cases % 2:
            M = rng.choice(pool)
        else:
            M = random_family_medium(rng, rng.randint(2, 8), rng.randint(2, 60))
        lam = random_lengths(M, rng)
        negative += any(v < 0 for v in lam.values)
        table = all_pairs_shortest_paths(M, lam)
        assert [list(r) for r in table.dist] == brute_distances(M, lam)
        assert table.scan_steps <= 4 * M.n * (M.tau // 2 + 2 * M.n)
        cases += 1
    elapsed = time.perf_counter() - start
    report("criterion 4", cases=cases, with_negative_lengths=negative, seconds=round(elapsed, 2))
    assert negative >= 200
    assert elapsed < 60


def test_criterion_5_complements():
    checked = 0
    for name, M in media():
        if M.n > 64:
            continue
        pairs = all_complementary_pairs(M)
        assert pairs == brute_complement_pairs(M), name
        seen = [x for p in pairs for x in set(p)]
        assert len(seen) == len(set(seen)), name
        for a, b in pairs:
            assert complement_of(M, a) == b and complement_of(M, b) == a, name
        checked += 1
    report("criterion 5", media=checked)


def replays(M, o, tri):
    row = dict(M.adjacency[tri.state])
    return (o.positive[tri.t] and o.positive[tri.t2] and tri.t in row and tri.t2 in row
            and tri.t2 not in dict(M.adjacency[row[tri.t]]))


def test_criterion_6_closed_orientations():
    start = time.perf_counter()
    orientations = scans = 0
    for name, M in media():
        if M.n <= 64:
            for q in range(M.n):
                o = content_orientation(M, q)
                closed = is_closed(M, o)
                assert closed == brute_is_closed(M, o), name
                tri = find_violating_triple(M, o)
                assert (tri is None) == closed, name
                if tri is not None:
                    assert replays(M, o, tri), name
                orientations += 1
        if M.tau <= 16:
            assert (find_closed_orientation(M) is None) == (not brute_closed_scan(M)), name
            scans += 1
    assert find_closed_orientation(six_subsets()) is None
    elapsed = time.perf_counter() - start
    report("criterion 6", orientations=orientations, scans=scans, seconds=round(elapsed, 2))
    assert elapsed < 120


def test_criterion_7_closed_orientation_bounds():
    found = 0
    for name, M in media():
        candidates = []
        o = find_closed_orientation(M)
        if o is not None:
            candidates.append(o)
        if M.tau <= 8:
            candidates += brute_closed_scan(M)
        for o in candidates:
            found += 1
            p = [positive_effective_count(M, o, s) for s in range(M.n)]
            assert max(p) <= floor_log2(M.n), name
            for s, row in enumerate(M.adjacency):
                for t, q in row:
                    if o.positive[t]:
                        assert p[q] >= p[s] - 1, name
    report("criterion 7", closed_orientations=found)
    assert found > 0


def test_criterion_8_black_box_enumeration():
    start = time.perf_counter()
    six = {0b001, 0b010, 0b100, 0b011, 0b101, 0b110}
    boxes = [
        (wrap_explicit(permutation_medium(4)), 24),
        (powerset_oracle(10), 1024),
        (set_family_oracle(3, lambda b: b in six, seed=0b001), 6),
    ]
    for bb, expected in boxes:
        bb, counter = counted(bb)
        states = list(enumerate_states(bb))
        assert len(states) == expected
        assert len(set(states)) == expected
        assert counter.calls <= 8 * expected * bb.tau ** 2
    for name, M in media():
        bb, counter = counted(wrap_explicit(M))
        assert sorted(enumerate_states(bb)) == list(range(M.n)), name
        assert counter.calls <= 8 * M.n * M.tau ** 2, name

    peaks = []
    for k in (4, 8, 11):
        Live.alive = Live.peak = 0
        bb = live_powerset(k)
        assert sum(1 for _ in enumerate_states(bb)) == 2 ** k
        peaks.append(Live.peak)
        del bb
    elapsed = time.perf_counter() - start
    report("criterion 8", peak_live_states=peaks, seconds=round(elapsed, 2))
    assert len(set(peaks)) == 1
    assert elapsed < 30


def test_criterion_9_black_box_reset():
    for name, M in media():
        word = black_box_reset_sequence(wrap_explicit(M))
        assert len(word) == M.n - 1, name
        assert {apply_message(M, s, word) for s in range(M.n)} == {0}, name
