"""Media used across the test suite."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from media import LengthFunction, Medium, MediumError
from media.generators import (
    SetFamily,
    acyclic_orientation_medium,
    binary_tree_height_medium,
    binary_tree_medium,
    first_non_well_graded_pair,
    from_well_graded_family,
    independent_set_medium,
    permutation_medium,
    powerset_medium,
    topological_ordering_medium,
)

VERTICES4 = ["a", "b", "c", "d"]
PAIRS4 = list(itertools.combinations(VERTICES4, 2))


def six_subsets() -> Medium:
    """All 1- and 2-element subsets of {1,2,3}."""
    return from_well_graded_family(SetFamily.from_sets(
        [[1], [2], [3], [1, 2], [1, 3], [2, 3]], names=[1, 2, 3]))


def family_medium(sets, names=None) -> Medium:
    return from_well_graded_family(SetFamily.from_sets(sets, names=names))


def powerset_union(a: int, b: int) -> Medium:
    """Union of the powersets of two disjoint sets of sizes ``a`` and ``b``."""
    left = [list(c) for r in range(a + 1) for c in itertools.combinations(range(a), r)]
    right = [list(c) for r in range(1, b + 1) for c in itertools.combinations(range(a, a + b), r)]
    return family_medium(left + right, names=list(range(a + b)))


def all_graphs4():
    for r in range(len(PAIRS4) + 1):
        yield from itertools.combinations(PAIRS4, r)


def all_dags4():
    for choice in itertools.product((0, 1, 2), repeat=len(PAIRS4)):
        arcs = [(a, b) if c == 1 else (b, a) for (a, b), c in zip(PAIRS4, choice) if c]
        try:
            yield arcs, topological_ordering_medium(VERTICES4, arcs)
        except MediumError:
            continue


def random_well_graded(rng: random.Random, universe: int, size: int) -> list[int]:
    """Grow a family from a random set by single-element changes, keeping it well-graded."""
    start = rng.getrandbits(universe)
    members = [start]
    present = {start}
    tries = 0
    while len(members) < size and tries < 40 * size:
        tries += 1
        cand = rng.choice(members) ^ (1 << rng.randrange(universe))
        if cand in present:
            continue
        if first_non_well_graded_pair(members + [cand]) is None:
            members.append(cand)
            present.add(cand)
    return members


def random_family_medium(rng: random.Random, universe: int, size: int) -> Medium:
    members = random_well_graded(rng, universe, size)
    used = 0
    for b in members:
        used |= b ^ members[0]
    # keep only elements that vary, so every token is effective somewhere
    elements = [x for x in range(universe) if used >> x & 1]
    sets = [[x for x in elements if b >> x & 1] for b in members]
    return family_medium(sets, names=elements) if elements else family_medium([[]], names=[])


def random_lengths(M: Medium, rng: random.Random, lo: int = -5, hi: int = 5) -> LengthFunction:
    """Integer lengths, negative ones included, with each pair summing to >= 0."""
    values = [0.0] * M.tau
    for t, r in M.tokens.pairs():
        a = rng.randint(lo, hi)
        b = rng.randint(max(lo, -a), hi)
        if rng.random() < 0.5:
            a, b = b, a
        values[t], values[r] = float(a), float(b)
    return LengthFunction(tuple(values))


@lru_cache(maxsize=None)
def named_media() -> tuple[tuple[str, Medium], ...]:
    """Deterministic set of small media with known provenance."""
    out = [("perm%d" % k, permutation_medium(k)) for k in range(1, 5)]
    out += [("powerset%d" % k, powerset_medium(k)) for k in range(0, 5)]
    out += [("six-subsets", six_subsets())]
    out += [("btree-h%d" % h, binary_tree_height_medium(h)) for h in range(0, 3)]
    out += [("btree-l%d-h%d" % (l, h), binary_tree_medium(l, h)) for l in (1, 2) for h in (1, 2)]
    out += [("union-2-2", powerset_union(2, 2)), ("union-3-3", powerset_union(3, 3))]
    out += [("acyclic-K4", acyclic_orientation_medium(VERTICES4, PAIRS4))]
    out += [("acyclic-path4", acyclic_orientation_medium(VERTICES4, [("a", "b"), ("b", "c"), ("c", "d")]))]
    out += [("indep-C4", independent_set_medium(VERTICES4, [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")]))]
    out += [("toporder-vee", topological_ordering_medium(VERTICES4, [("a", "b"), ("a", "c")]))]
    out += [("hexagon-chain", family_medium([[], [1], [1, 2], [1, 2, 3], [2, 3], [3]], names=[1, 2, 3]))]
    out += [("line5", family_medium([[], [1], [1, 2], [1, 2, 3], [1, 2, 3, 4]], names=[1, 2, 3, 4]))]
    return tuple(out)


def generated_media():
    """Every generator output used by the acceptance criteria, with a name."""
    for k in range(1, 6):
        yield f"perm{k}", permutation_medium(k)
    for k in range(0, 7):
        yield f"powerset{k}", powerset_medium(k)
    for edges in all_graphs4():
        yield f"acyclic{list(edges)}", acyclic_orientation_medium(VERTICES4, edges)
        yield f"indep{list(edges)}", independent_set_medium(VERTICES4, edges)
    for arcs, M in all_dags4():
        yield f"toporder{arcs}", M
    for h in range(0, 4):
        yield f"btree-h{h}", binary_tree_height_medium(h)
    for l in (1, 2, 3):
        for h in (1, 2, 3):
            yield f"btree-l{l}-h{h}", binary_tree_medium(l, h)
    yield "six-subsets", six_subsets()
    yield "union-3-3", powerset_union(3, 3)
