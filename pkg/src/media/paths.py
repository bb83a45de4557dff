"""Reset sequences, shortest paths and complements."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .core import (
    LengthFunction,
    Medium,
    MediumError,
    Orientation,
    compute_content,
    unweighted_distances,
)


@dataclass(frozen=True)
class ResetResult:
    word: tuple[int, ...]
    sink: int


def content_dag(M: Medium, o: Orientation) -> list[tuple[int, int]]:
    """Arcs ``S -> Q`` for every positive ``t`` with ``St = Q``."""
    o.check(M.tokens)
    return [(s, q) for s, t, q in M.transitions() if o.positive[t]]


def _finish_order(M: Medium, positive: tuple[bool, ...]) -> list[int]:
    """States in reverse depth-first finish order of the positive-arc graph."""
    seen = [False] * M.n
    finished = []
    for root in range(M.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, iter(M.adjacency[root]))]
        while stack:
            s, it = stack[-1]
            for t, q in it:
                if positive[t] and not seen[q]:
                    seen[q] = True
                    stack.append((q, iter(M.adjacency[q])))
                    break
            else:
                stack.pop()
                finished.append(s)
    finished.reverse()
    return finished


def reset_sequence(M: Medium, sink: int = 0) -> ResetResult:
    """A reset word of length ``n - 1`` sending every state to ``sink``.

    States are put in topological order of the content DAG of ``sink``; the
    word takes, for each non-sink state in that order, its lowest positive
    effective token.
    """
    o = Orientation.from_positive(M.tokens, compute_content(M, sink))
    order = _finish_order(M, o.positive)
    if order[-1] != sink:
        raise MediumError(f"state {order[-1]} is a sink besides {sink}")
    word = []
    for s in order[:-1]:
        for t, _ in M.adjacency[s]:
            if o.positive[t]:
                word.append(t)
                break
        else:
            raise MediumError(f"state {s} has no positive effective token")
    return ResetResult(tuple(word), sink)


# -- distances --------------------------------------------------------------------

def _layered_tree(M: Medium, root: int, toward_root: bool):
    """For each state, a token stepping one BFS layer closer to ``root`` (or away from it,
    read backwards), plus the states in layer order."""
    dist = unweighted_distances(M, root)
    if min(dist) < 0:
        raise MediumError("effective-transition graph is disconnected")
    order = sorted(range(M.n), key=dist.__getitem__)
    link = [None] * M.n
    for s, t, q in M.transitions():
        if toward_root:
            if dist[q] == dist[s] - 1 and link[s] is None:
                link[s] = (t, q)
        elif dist[s] == dist[q] - 1 and link[q] is None:
            link[q] = (t, s)
    return order, link


def distances_to_state(M: Medium, lam: LengthFunction, q: int) -> list[float]:
    """``dist(S, q)`` for every ``S``, along any straight path (all have equal length)."""
    lam.check(M.tokens)
    order, link = _layered_tree(M, q, toward_root=True)
    dist = [0.0] * M.n
    for s in order:
        if s != q:
            t, nxt = link[s]
            dist[s] = lam[t] + dist[nxt]
    return dist


def single_source_distances(M: Medium, lam: LengthFunction, s: int) -> list[float]:
    """``dist(s, Q)`` for every ``Q``."""
    lam.check(M.tokens)
    order, link = _layered_tree(M, s, toward_root=False)
    dist = [0.0] * M.n
    for q in order:
        if q != s:
            t, prev = link[q]
            dist[q] = dist[prev] + lam[t]
    return dist


def traversal_moves(M: Medium, start: int = 0) -> list[tuple[int, int, int]]:
    """Depth-first walk ``(Q, t, Q')`` that reaches every state, backtracking
    along reverse tokens; stops once the last state is reached (at most
    ``2n - 3`` moves)."""
    rev = M.tokens.reverse
    seen = [False] * M.n
    seen[start] = True
    remaining = M.n - 1
    moves = []
    stack = [(start, iter(M.adjacency[start]), None)]
    while stack and remaining:
        s, it, via = stack[-1]
        for t, q in it:
            if not seen[q]:
                seen[q] = True
                remaining -= 1
                moves.append((s, t, q))
                stack.append((q, iter(M.adjacency[q]), t))
                break
        else:
            stack.pop()
            if stack:
                moves.append((s, rev[via], stack[-1][0]))
    if remaining:
        raise MediumError("effective-transition graph is disconnected")
    return moves


@dataclass(frozen=True)
class ApspTable:
    """``dist[S][Q]`` and ``first_token[S][Q]`` (-1 on the diagonal)."""

    dist: tuple[tuple[float, ...], ...]
    first_token: tuple[tuple[int, ...], ...]
    scan_steps: int = 0

    @property
    def n(self) -> int:
        return len(self.dist)


class _PairList:
    """Doubly-linked list of (token, bucket) pairs; nodes are never reused."""

    def __init__(self):
        self.token = []
        self.bucket = []
        self.prev = []
        self.next = []
        self.head = -1
        self.tail = -1

    def append(self, token: int) -> int:
        node = len(self.token)
        self.token.append(token)
        self.bucket.append([])
        self.prev.append(self.tail)
        self.next.append(-1)
        if self.tail >= 0:
            self.next[self.tail] = node
        else:
            self.head = node
        self.tail = node
        return node

    def unlink(self, node: int):
        p, q = self.prev[node], self.next[node]
        if p >= 0:
            self.next[p] = q
        else:
            self.head = q
        if q >= 0:
            self.prev[q] = p
        else:
            self.tail = p


def all_pairs_shortest_paths(M: Medium, lam: LengthFunction) -> ApspTable:
    """Distances and first straight-path tokens for all pairs in ``O(n^2)``.

    A depth-first walk moves the target ``Q`` through the medium while a list
    of the tokens in the content of ``Q`` is kept, each state pointing at the
    first listed token effective for it.  A move ``Q t Q'`` drops the pair of
    ``reverse(t)``, appends one for ``t``, and re-scans only the states that
    pointed at the dropped pair, forward from where it was.
    """
    lam.check(M.tokens)
    n, tau = M.n, M.tau
    rev = M.tokens.reverse
    eff = [[-1] * tau for _ in range(n)]
    for s, t, q in M.transitions():
        eff[s][t] = q

    start = 0
    moves = traversal_moves(M, start)
    content = sorted(compute_content(M, start))

    L = _PairList()
    node_of = [-1] * tau
    for t in content:
        node_of[t] = L.append(t)

    steps = 0
    pointer = [-1] * n

    def scan(s: int, node: int):
        nonlocal steps
        while node >= 0:
            steps += 1
            if eff[s][L.token[node]] >= 0:
                pointer[s] = node
                L.bucket[node].append(s)
                return
            node = L.next[node]
        raise MediumError(f"no effective content token for state {s}")

    for s in range(n):
        if s != start:
            scan(s, L.head)

    first = [[-1] * n for _ in range(n)]
    dist = [[0.0] * n for _ in range(n)]
    done = [False] * n

    def record(q: int):
        done[q] = True
        col = [L.token[pointer[s]] if s != q else -1 for s in range(n)]
        for s in range(n):
            first[s][q] = col[s]
        # distances along the pointer tree, which leads every state to q
        d = [None] * n
        d[q] = 0.0
        for s in range(n):
            path = []
            x = s
            while d[x] is None:
                path.append(x)
                x = eff[x][col[x]]
            acc = d[x]
            for y in reversed(path):
                acc = lam[col[y]] + acc
                d[y] = acc
        for s in range(n):
            dist[s][q] = d[s]

    record(start)
    for q, t, q2 in moves:
        old = node_of[rev[t]]
        new = L.append(t)
        node_of[t] = new
        L.unlink(old)
        node_of[rev[t]] = -1
        resume = L.next[old]
        pointer[q2] = -1
        pointer[q] = new
        L.bucket[new].append(q)
        for s in L.bucket[old]:
            if pointer[s] == old:
                scan(s, resume)
        L.bucket[old] = []
        if not done[q2]:
            record(q2)
    return ApspTable(
        tuple(tuple(row) for row in dist),
        tuple(tuple(row) for row in first),
        steps,
    )


def straight_path_between(M: Medium, table: ApspTable, s: int, q: int) -> tuple[int, ...]:
    if table.n != M.n:
        raise MediumError("table was built for a different medium")
    word = []
    while s != q:
        t = table.first_token[s][q]
        nxt = M._table[s].get(t, s)
        if t < 0 or nxt == s or len(word) > M.tau:
            raise MediumError("table does not describe a straight path")
        word.append(t)
        s = nxt
    return tuple(word)


# -- complements ----------------------------------------------------------------

def complement_of(M: Medium, s: int) -> Optional[int]:
    """The state whose content is disjoint from that of ``s``, if any.

    Unit-length distance from ``s`` to ``Q`` is ``tau/2 - |content(s) & content(Q)|``,
    so the complement is the state at distance exactly ``tau/2``.
    """
    dist = unweighted_distances(M, s)
    if min(dist) < 0:
        raise MediumError("effective-transition graph is disconnected")
    half = M.tau // 2
    for q, d in enumerate(dist):
        if d == half:
            return q
    return None


def all_complementary_pairs(M: Medium) -> list[tuple[int, int]]:
    """All pairs ``(S, Q)``, ``S <= Q``, with disjoint contents, in ``O(n tau)``.

    ``Q`` follows a depth-first walk while a companion state ``S`` and the
    list of tokens in both contents are maintained; ``S`` greedily steps away
    from ``Q`` whenever a shared token can be undone.
    """
    rev = M.tokens.reverse
    moves = traversal_moves(M, 0)
    # contents of every state as bitmasks, propagated along the walk
    content = [-1] * M.n
    content[0] = sum(1 << t for t in compute_content(M, 0))
    for q, t, q2 in moves:
        if content[q2] < 0:
            content[q2] = (content[q] & ~(1 << rev[t])) | (1 << t)
    table = M._table

    q = 0
    s = 0
    shared = dict.fromkeys(t for t in range(M.tau) if content[0] >> t & 1)
    partner = [-1] * M.n

    def settle():
        nonlocal s
        moved = True
        while moved and shared:
            moved = False
            for t in shared:
                nxt = table[s].get(rev[t])
                if nxt is not None:
                    s = nxt
                    del shared[t]
                    moved = True
                    break
        if not shared:
            partner[q] = s

    settle()
    for _, t, q2 in moves:
        shared.pop(rev[t], None)
        if content[s] >> t & 1:
            shared[t] = None
        q = q2
        settle()
    pairs = {(min(a, b), max(a, b)) for a, b in enumerate(partner) if b >= 0}
    return sorted(pairs)
