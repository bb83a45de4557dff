import gc

import pytest

from media import (
    BadMediumError,
    BlackBoxMedium,
    apply_message,
    apply_token,
    black_box_reset_sequence,
    enumerate_states,
    permutation_medium,
    set_family_oracle,
    wrap_explicit,
)
from media.blackbox import counted, independent_set_oracle, max_size_oracle, powerset_oracle

from corpus import named_media, six_subsets

SIX = {0b001, 0b010, 0b100, 0b011, 0b101, 0b110}


def six_box():
    return set_family_oracle(3, lambda b: b in SIX, seed=0b001)


class Live:
    """A state object that counts how many instances exist."""

    alive = 0
    peak = 0

    def __init__(self, bits):
        self.bits = bits
        Live.alive += 1
        Live.peak = max(Live.peak, Live.alive)

    def __del__(self):
        Live.alive -= 1

    def __eq__(self, other):
        return self.bits == other.bits

    __hash__ = None


def live_powerset(k):
    def transition(s, t):
        x, delete = divmod(t, 2)
        bit = 1 << x
        if delete == bool(s.bits & bit):
            return Live(s.bits ^ bit)
        return Live(s.bits)
    return BlackBoxMedium(tuple(range(2 * k)), transition, Live(0))


def test_counts():
    assert sum(1 for _ in enumerate_states(wrap_explicit(permutation_medium(4)))) == 24
    assert len(set(enumerate_states(powerset_oracle(10)))) == 1024
    assert sorted(enumerate_states(six_box())) == sorted(SIX)
    single = BlackBoxMedium((), lambda s, t: s, "only")
    assert list(enumerate_states(single)) == ["only"]


def test_other_oracles():
    assert len(list(enumerate_states(max_size_oracle(2, 5)))) == 1 + 5 + 10
    assert len(list(enumerate_states(independent_set_oracle("abc", [(0, 1), (1, 2)])))) == 5


@pytest.mark.parametrize("name,M", named_media())
def test_wrapped_explicit(name, M):
    bb = wrap_explicit(M)
    states = list(enumerate_states(bb))
    assert sorted(states) == list(range(M.n))
    for s in range(M.n):
        for t in range(M.tau):
            assert bb.transition(s, t) == apply_token(M, s, t)
    word = black_box_reset_sequence(bb)
    assert len(word) == M.n - 1
    assert {apply_message(M, s, word) for s in range(M.n)} == {0}


def test_reset_examples():
    assert black_box_reset_sequence(BlackBoxMedium((), lambda s, t: s, 0)) == ()
    S = six_subsets()
    word = black_box_reset_sequence(wrap_explicit(S))
    assert len(word) == 5 and {apply_message(S, s, word) for s in range(6)} == {0}
    word = black_box_reset_sequence(powerset_oracle(3))
    assert len(word) == 7


def test_call_count_bound():
    bb, counter = counted(wrap_explicit(permutation_medium(4)))
    n = sum(1 for _ in enumerate_states(bb))
    assert counter.calls <= 8 * n * bb.tau ** 2


def test_enumeration_is_lazy():
    it = enumerate_states(powerset_oracle(30))
    assert next(it) == 0
    assert next(it) is not None


def test_memory_constant_in_n():
    peaks = []
    for k in (4, 7, 10):
        gc.collect()
        Live.alive = 0
        Live.peak = 0
        bb = live_powerset(k)
        count = sum(1 for _ in enumerate_states(bb))
        assert count == 2 ** k
        peaks.append(Live.peak)
        del bb
    assert peaks[-1] == peaks[0]
    assert peaks[-1] <= 8


def test_bad_medium_detected():
    # a token that is effective but cannot be undone
    bb = BlackBoxMedium(("a", "b"), lambda s, t: min(s + 1, 3) if t == 0 else s, 0)
    with pytest.raises(BadMediumError):
        list(enumerate_states(bb))


def test_set_family_oracle_examples():
    assert len(list(enumerate_states(set_family_oracle(4, lambda b: bin(b).count("1") <= 2)))) == 11
    tri = [(0, 1), (1, 2), (0, 2)]
    assert len(list(enumerate_states(independent_set_oracle("abc", tri)))) == 4
    assert len(list(enumerate_states(powerset_oracle(5)))) == 32


@pytest.mark.parametrize("name,M", named_media())
def test_positive_tokens_are_seed_content(name, M):
    from media import compute_content
    positive = {}
    for _ in enumerate_states(wrap_explicit(M), positive):
        pass
    assert set(positive) == set(compute_content(M, 0))
    assert len(positive) <= M.tau // 2
