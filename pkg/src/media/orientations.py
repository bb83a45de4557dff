"""Closed orientations: testing, violation witnesses, and search via 2-SAT."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Medium, MediumError, Orientation, compute_content


@dataclass(frozen=True)
class ViolatingTriple:
    """Positive tokens ``t`` and ``t2`` both effective at ``state`` while ``t t2`` is not
    stepwise effective there."""

    state: int
    t: int
    t2: int


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def _positive_effective(M: Medium, o: Orientation) -> list[list[int]]:
    pos = o.positive
    return [[t for t, _ in row if pos[t]] for row in M.adjacency]


def positive_effective_count(M: Medium, o: Orientation, s: int) -> int:
    o.check(M.tokens)
    return sum(1 for t, _ in M.adjacency[s] if o.positive[t])


def _commutes(M: Medium, s: int, t: int, t2: int) -> bool:
    """Is ``t t2`` stepwise effective for ``s``?  Assumes ``t`` is effective there."""
    mid = M._table[s][t]
    return t2 in M._table[mid]


def _triple_scan(M: Medium, effective: list[list[int]]) -> Optional[ViolatingTriple]:
    for s, toks in enumerate(effective):
        for t in toks:
            for t2 in toks:
                if t2 != t and not _commutes(M, s, t, t2):
                    return ViolatingTriple(s, t, t2)
    return None


def is_closed(M: Medium, o: Orientation) -> bool:
    """Whether any two positive tokens effective at a state can be applied in both orders.

    A closed orientation leaves at most ``log2 n`` positive tokens effective at
    any state, so a larger count rejects immediately; otherwise only the
    positive effective pairs are tested.
    """
    o.check(M.tokens)
    effective = _positive_effective(M, o)
    if any(1 << len(toks) > M.n for toks in effective):
        return False
    return _triple_scan(M, effective) is None


def _minimal_failing_subsequence(M: Medium, s: int, word: Sequence[int]) -> tuple[int, ...]:
    """Breadth-first search over subsequences of ``word`` for a shortest one that is
    not stepwise effective from ``s``; every proper prefix of the result is."""
    queue = deque([((), s, 0)])
    while queue:
        seq, state, nxt = queue.popleft()
        for i in range(nxt, len(word)):
            t = word[i]
            q = M._table[state].get(t)
            cand = seq + (t,)
            if q is None:
                return cand
            queue.append((cand, q, i + 1))
    raise MediumError(f"every subsequence of {list(word)} is stepwise effective from state {s}")


def find_violating_triple(M: Medium, o: Orientation) -> Optional[ViolatingTriple]:
    """A concrete witness that ``o`` is not closed, or None when it is closed."""
    o.check(M.tokens)
    effective = _positive_effective(M, o)
    p = [len(toks) for toks in effective]

    # a positive step may lose at most one positive effective token
    for s, toks in enumerate(effective):
        for t in toks:
            after = M._table[s][t]
            if p[after] < p[s] - 1:
                still = M._table[after]
                for t2 in toks:
                    if t2 != t and t2 not in still:
                        return ViolatingTriple(s, t, t2)

    bound = floor_log2(M.n)
    over = [s for s in range(M.n) if p[s] > bound]
    if over:
        s = over[0]
        while p[s] > bound + 1:
            s = M._table[s][effective[s][0]]
        return subsequence_triple(M, o, s)

    return _triple_scan(M, effective)


def subsequence_triple(M: Medium, o: Orientation, s: int) -> ViolatingTriple:
    """Witness from a state with more than ``log2 n`` positive effective tokens.

    Only ``1 + floor(log2 n)`` of them are used, so that the ``2^k > n``
    subsequences cannot all be stepwise effective (each would reach a
    different state) while the search stays ``O(n)``.
    """
    toks = [t for t, _ in M.adjacency[s] if o.positive[t]]
    k = floor_log2(M.n) + 1
    if len(toks) < k:
        raise ValueError(f"state {s} has only {len(toks)} positive effective tokens")
    *prefix, t, t2 = _minimal_failing_subsequence(M, s, toks[:k])
    for tok in prefix:
        s = M._table[s][tok]
    return ViolatingTriple(s, t, t2)


# -- 2-SAT ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoSatInstance:
    """Variables ``1..num_vars``; literal ``v`` or ``-v``; each clause is a pair of literals."""

    num_vars: int
    clauses: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple((int(a), int(b)) for a, b in self.clauses))
        for a, b in self.clauses:
            for lit in (a, b):
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")


def two_sat_solve(inst: TwoSatInstance) -> Optional[list[bool]]:
    """Satisfying assignment (index ``v-1`` for variable ``v``) or None.

    Strongly connected components of the implication graph, found with an
    iterative Tarjan search; a variable is true when its positive literal's
    component is closer to the sinks.
    """
    nv = inst.num_vars

    def node(lit):
        return 2 * (lit - 1) if lit > 0 else 2 * (-lit - 1) + 1

    graph = [[] for _ in range(2 * nv)]
    for a, b in inst.clauses:
        graph[node(-a)].append(node(b))
        graph[node(-b)].append(node(a))

    index = [-1] * (2 * nv)
    low = [0] * (2 * nv)
    on_stack = [False] * (2 * nv)
    comp = [-1] * (2 * nv)
    stack = []
    counter = 0
    ncomp = 0
    for root in range(2 * nv):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            edges = graph[v]
            while i < len(edges):
                w = edges[i]
                i += 1
                if index[w] < 0:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    assignment = []
    for v in range(nv):
        pos, neg = comp[2 * v], comp[2 * v + 1]
        if pos == neg:
            return None
        # Tarjan numbers components in reverse topological order
        assignment.append(pos < neg)
    return assignment


def closed_orientation_instance(M: Medium) -> TwoSatInstance:
    """Variable ``t+1`` is true when token ``t`` is positive."""
    clauses = set()
    for t, r in M.tokens.pairs():
        clauses.add((t + 1, r + 1))
        clauses.add((-(t + 1), -(r + 1)))
    for s, row in enumerate(M.adjacency):
        for t, mid in row:
            nxt = M._table[mid]
            for t2, _ in row:
                if t2 != t and t2 not in nxt:
                    a, b = sorted((t + 1, t2 + 1))
                    clauses.add((-a, -b))
    return TwoSatInstance(M.tau, tuple(sorted(clauses)))


def find_closed_orientation(M: Medium) -> Optional[Orientation]:
    solution = two_sat_solve(closed_orientation_instance(M))
    if solution is None:
        return None
    o = Orientation(tuple(solution))
    o.check(M.tokens)
    return o


def canonical_message(M: Medium, o: Orientation, s: int, q: int) -> tuple[int, ...]:
    """Stepwise-effective message from ``s`` to ``q``: positive tokens, then negative ones.

    ``o`` must be closed; a stuck greedy pass raises :class:`MediumError`.
    """
    o.check(M.tokens)
    needed = set(compute_content(M, q) - compute_content(M, s))
    word = []
    for sign in (True, False):
        todo = sorted(t for t in needed if o.positive[t] == sign)
        while todo:
            for t in todo:
                nxt = M._table[s].get(t)
                if nxt is not None:
                    word.append(t)
                    todo.remove(t)
                    s = nxt
                    break
            else:
                raise MediumError(
                    f"no needed {'positive' if sign else 'negative'} token is effective "
                    f"at state {s}; the orientation is not closed"
                )
    if s != q:
        raise MediumError("canonical message did not reach the target")
    return tuple(word)
