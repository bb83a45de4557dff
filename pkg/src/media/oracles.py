"""Brute-force references for checking the fast algorithms.

Nothing here calls into the modules being checked; only the medium data
types are shared.  Size guards are hard preconditions: a call outside them
raises :class:`OracleSizeError` instead of quietly truncating.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Optional

from .core import LengthFunction, Medium, Orientation


class OracleSizeError(ValueError):
    pass


def _guard(ok: bool, what: str):
    if not ok:
        raise OracleSizeError(what)


def _step(M: Medium, s: int, t: int) -> int:
    for tok, q in M.adjacency[s]:
        if tok == t:
            return q
    return s


def _arcs(M: Medium):
    for s, row in enumerate(M.adjacency):
        for t, q in row:
            yield s, t, q


def brute_distances(M: Medium, lam: LengthFunction) -> list[list[float]]:
    """Bellman-Ford from every source over the ``m`` listed transitions."""
    inf = float("inf")
    arcs = list(_arcs(M))
    out = []
    for src in range(M.n):
        dist = [inf] * M.n
        dist[src] = 0.0
        for _ in range(M.n):
            changed = False
            for s, t, q in arcs:
                if dist[s] + lam.values[t] < dist[q]:
                    dist[q] = dist[s] + lam.values[t]
                    changed = True
            if not changed:
                break
        else:
            raise ValueError("negative cycle: lengths violate the reverse-pair constraint")
        out.append(dist)
    return out


def _straight_walks_into(M: Medium, target: int):
    """Token sets of all consistent, stepwise-effective walks ending at ``target``,
    found by extending walks backwards from the target."""
    rev = M.tokens.reverse
    incoming = [[] for _ in range(M.n)]
    for s, t, q in _arcs(M):
        incoming[q].append((s, t))
    stack = [(target, frozenset(), frozenset([target]))]
    while stack:
        state, used, visited = stack.pop()
        yield state, used
        for prev, t in incoming[state]:
            if rev[t] in used or prev in visited:
                continue
            stack.append((prev, used | {t}, visited | {prev}))


def brute_content(M: Medium, q: int, max_states: int = 64) -> frozenset[int]:
    """Union of the tokens of every straight path into ``q``."""
    _guard(M.n <= max_states, f"brute_content needs n <= {max_states}, got {M.n}")
    content = set()
    for _, used in _straight_walks_into(M, q):
        content |= used
    return frozenset(content)


def brute_shortest_reset(M: Medium, max_states: int = 8) -> Optional[tuple[int, ...]]:
    """Shortest reset word, by BFS over sets of possible current states."""
    _guard(M.n <= max_states, f"brute_shortest_reset needs n <= {max_states}, got {M.n}")
    full = frozenset(range(M.n))
    if len(full) == 1:
        return ()
    parent = {full: None}
    queue = deque([full])
    while queue:
        cur = queue.popleft()
        for t in range(M.tau):
            nxt = frozenset(_step(M, s, t) for s in cur)
            if nxt in parent:
                continue
            parent[nxt] = (cur, t)
            if len(nxt) == 1:
                word = []
                while parent[nxt] is not None:
                    nxt, tok = parent[nxt]
                    word.append(tok)
                return tuple(reversed(word))
            queue.append(nxt)
    return None


def brute_is_closed(M: Medium, o: Orientation) -> bool:
    """Every positive pair effective at a state is stepwise effective in both orders."""
    for s in range(M.n):
        eff = [t for t in range(M.tau) if o.positive[t] and _step(M, s, t) != s]
        for t, t2 in itertools.permutations(eff, 2):
            mid = _step(M, s, t)
            if _step(M, mid, t2) == mid:
                return False
    return True


def brute_closed_scan(M: Medium, max_tokens: int = 16) -> list[Orientation]:
    """Every closed orientation, out of all ``2^(tau/2)``."""
    _guard(M.tau <= max_tokens, f"brute_closed_scan needs tau <= {max_tokens}, got {M.tau}")
    pairs = [(t, r) for t, r in enumerate(M.tokens.reverse) if t < r]
    out = []
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        signs = [False] * M.tau
        for (t, r), c in zip(pairs, choice):
            signs[r if c else t] = True
        o = Orientation(tuple(signs))
        if brute_is_closed(M, o):
            out.append(o)
    return out


def brute_complement_pairs(M: Medium, max_states: int = 64) -> list[tuple[int, int]]:
    """Pairs ``(S, Q)``, ``S <= Q``, whose brute-force contents are disjoint."""
    _guard(M.n <= max_states, f"brute_complement_pairs needs n <= {max_states}, got {M.n}")
    contents = [brute_content(M, q, max_states) for q in range(M.n)]
    return [(a, b) for a in range(M.n) for b in range(a, M.n) if not contents[a] & contents[b]]


def brute_axioms(M: Medium, max_states: int = 12) -> list[str]:
    """Check the medium axioms directly; returns the failed ones (empty = medium).

    The names are "reverses" (each token has exactly one reverse, checked
    over all state pairs), "reachability" (consistent messages join any two
    states), "return" (a stepwise-effective message returns to its start iff
    it is vacuous) and "consistency" (two straight paths into one state
    combine into a consistent message).  "return" is decided through its
    finite equivalent: assigning each state an integer vector that moves by
    +/- one unit along a token pair's axis on every effective step must be
    possible (closed walks are vacuous) and must give distinct states distinct
    vectors (vacuous walks are closed).  Reachability and consistency
    enumerate every consistent, stepwise-effective walk without repeated states.
    """
    _guard(M.n <= max_states, f"brute_axioms needs n <= {max_states}, got {M.n}")
    failed = []
    n, tau = M.n, M.tau
    table = [[_step(M, s, t) for t in range(tau)] for s in range(n)]
    listed = [[0] * tau for _ in range(n)]
    for s, t, q in _arcs(M):
        listed[s][t] += 1

    # determinism is part of being an automaton at all
    if any(c > 1 for row in listed for c in row):
        return ["determinism"]

    def is_reverse(t, r):
        return all(
            (table[s][t] == q) == (table[q][r] == s)
            for s in range(n) for q in range(n) if s != q
        )

    declared = M.tokens.reverse
    ok1 = len(declared) % 2 == 0
    for t in range(tau):
        reverses = [r for r in range(tau) if is_reverse(t, r)]
        if reverses != [declared[t]] or declared[t] == t:
            ok1 = False
    if not ok1:
        failed.append("reverses")

    # return via per-pair coordinates
    pair = {}
    for t in range(tau):
        a = min(t, declared[t])
        pair[t] = (a, 1 if t == a else -1)
    coords = [None] * n
    coords[0] = {}
    queue = deque([0])
    ok3 = True
    while queue:
        s = queue.popleft()
        for t in range(tau):
            q = table[s][t]
            if q == s:
                continue
            a, sign = pair[t]
            c = dict(coords[s])
            c[a] = c.get(a, 0) + sign
            if c[a] == 0:
                del c[a]
            if coords[q] is None:
                coords[q] = c
                queue.append(q)
            elif coords[q] != c:
                ok3 = False
    reached = [c for c in coords if c is not None]
    keys = {tuple(sorted(c.items())) for c in reached}
    if len(keys) != len(reached):
        ok3 = False
    if not ok3:
        failed.append("return")

    # reachability and consistency from all simple consistent stepwise-effective walks
    rev = declared
    sources = [set() for _ in range(n)]
    tokens_into = [set() for _ in range(n)]
    for start in range(n):
        stack = [(start, frozenset(), frozenset([start]))]
        while stack:
            s, used, visited = stack.pop()
            sources[s].add(start)
            tokens_into[s] |= used
            for t in range(tau):
                q = table[s][t]
                if q == s or q in visited or rev[t] in used:
                    continue
                stack.append((q, used | {t}, visited | {q}))
    if any(len(src) != n for src in sources):
        failed.append("reachability")
    if any(rev[t] in into for into in tokens_into for t in into):
        failed.append("consistency")
    return failed


def brute_is_medium(M: Medium, max_states: int = 12) -> bool:
    return not brute_axioms(M, max_states)
