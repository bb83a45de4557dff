"""Media: token tables, media, messages, contents and orientations.

A medium is stored as an adjacency list of its effective transitions.
States and tokens are dense integer indices; labels are metadata only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class MediumError(ValueError):
    """Raised when an operation needs a valid medium and does not get one."""


@dataclass(frozen=True)
class TokenTable:
    """Tokens ``0..count-1`` with a reverse map and optional labels.

    Only index ranges are enforced on construction, so that a broken table
    can still be loaded and reported on by :func:`verify_medium`.  Use
    :meth:`problems` for the involution check.
    """

    reverse: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "reverse", tuple(int(r) for r in self.reverse))
        count = len(self.reverse)
        for t, r in enumerate(self.reverse):
            if not 0 <= r < count:
                raise MediumError(f"token {t}: reverse {r} out of range")
        if self.labels is not None:
            if len(self.labels) != count:
                raise MediumError("one label per token required")
            # no tokens means nothing to label
            object.__setattr__(self, "labels", tuple(self.labels) if count else None)

    @classmethod
    def paired(cls, pairs: int, labels: Optional[Sequence[str]] = None) -> "TokenTable":
        """Tokens ``2p`` and ``2p+1`` are mutual reverses."""
        return cls(tuple(t ^ 1 for t in range(2 * pairs)), None if labels is None else tuple(labels))

    @property
    def count(self) -> int:
        return len(self.reverse)

    def __len__(self):
        return len(self.reverse)

    def label(self, t: int) -> str:
        if self.labels is None:
            return f"t{t}"
        return self.labels[t]

    def pairs(self) -> list[tuple[int, int]]:
        """Reverse pairs ``(t, reverse(t))`` with ``t`` the smaller index, ascending."""
        return [(t, r) for t, r in enumerate(self.reverse) if t < r]

    def problems(self) -> list[str]:
        out = []
        if self.count % 2:
            out.append(f"odd token count {self.count}")
        for t, r in enumerate(self.reverse):
            if r == t:
                out.append(f"token {t} is its own reverse")
            elif self.reverse[r] != t:
                out.append(f"token {t}: reverse({r}) = {self.reverse[r]}, not {t}")
        if self.labels is not None and len(set(self.labels)) != len(self.labels):
            seen = set()
            for t, lab in enumerate(self.labels):
                if lab in seen:
                    out.append(f"token {t}: duplicate label {lab!r}")
                seen.add(lab)
        return out


@dataclass(frozen=True)
class Medium:
    """A state/token system given by its effective transitions.

    ``adjacency[S]`` lists ``(token, target)`` pairs with ``target != S``.
    Construction sorts each list by token, checks index ranges and rejects
    self-loops; determinism, reverse closure and the axioms are left to
    :func:`verify_medium`.
    """

    n: int
    tokens: TokenTable
    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    state_labels: Optional[tuple[str, ...]] = None
    _table: tuple[dict, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise MediumError("a medium needs at least one state")
        if len(self.adjacency) != self.n:
            raise MediumError(f"{len(self.adjacency)} adjacency lists for {self.n} states")
        tau = self.tokens.count
        adjacency = []
        table = []
        for s, row in enumerate(self.adjacency):
            row = tuple(sorted((int(t), int(q)) for t, q in row))
            moves = {}
            for t, q in row:
                if not 0 <= t < tau:
                    raise MediumError(f"state {s}: token {t} out of range")
                if not 0 <= q < self.n:
                    raise MediumError(f"state {s}: target {q} out of range")
                if q == s:
                    raise MediumError(f"state {s}: token {t} listed as a self-loop")
                moves.setdefault(t, q)
            adjacency.append(row)
            table.append(moves)
        object.__setattr__(self, "adjacency", tuple(adjacency))
        object.__setattr__(self, "_table", tuple(table))
        if self.state_labels is not None:
            object.__setattr__(self, "state_labels", tuple(self.state_labels))
            if len(self.state_labels) != self.n:
                raise MediumError("one label per state required")

    @property
    def tau(self) -> int:
        return self.tokens.count

    @property
    def m(self) -> int:
        return sum(len(row) for row in self.adjacency)

    def state_label(self, s: int) -> str:
        if self.state_labels is None:
            return str(s)
        return self.state_labels[s]

    def token_label(self, t: int) -> str:
        return self.tokens.label(t)

    def transitions(self):
        """Iterate over all listed transitions as ``(S, t, Q)``."""
        for s, row in enumerate(self.adjacency):
            for t, q in row:
                yield s, t, q

    def neighbors(self, s: int) -> tuple[tuple[int, int], ...]:
        return self.adjacency[s]


# -- transitions and messages -------------------------------------------------

def _check_state(M: Medium, s: int):
    if not 0 <= s < M.n:
        raise IndexError(f"state {s} out of range 0..{M.n - 1}")


def _check_token(M: Medium, t: int):
    if not 0 <= t < M.tau:
        raise IndexError(f"token {t} out of range 0..{M.tau - 1}")


def apply_token(M: Medium, s: int, t: int) -> int:
    """Return ``St``; ineffective tokens leave the state unchanged."""
    _check_state(M, s)
    _check_token(M, t)
    return M._table[s].get(t, s)


def apply_message(M: Medium, s: int, w: Iterable[int]) -> int:
    _check_state(M, s)
    table = M._table
    for t in w:
        _check_token(M, t)
        s = table[s].get(t, s)
    return s


def is_consistent(M: Medium, w: Sequence[int]) -> bool:
    """A message is consistent when it never contains a token and its reverse."""
    seen = set()
    for t in w:
        _check_token(M, t)
        seen.add(t)
    return not any(M.tokens.reverse[t] in seen for t in seen)


def is_vacuous(M: Medium, w: Sequence[int]) -> bool:
    counts = [0] * M.tau
    for t in w:
        _check_token(M, t)
        counts[t] += 1
    return all(counts[t] == counts[r] for t, r in enumerate(M.tokens.reverse))


def is_stepwise_effective(M: Medium, s: int, w: Sequence[int]) -> bool:
    _check_state(M, s)
    table = M._table
    for t in w:
        _check_token(M, t)
        q = table[s].get(t, s)
        if q == s:
            return False
        s = q
    return True


def is_straight_path(M: Medium, s: int, w: Sequence[int]) -> bool:
    return is_consistent(M, w) and is_stepwise_effective(M, s, w)


def effective_tokens(M: Medium, s: int) -> list[int]:
    _check_state(M, s)
    return sorted(M._table[s])


def medium_stats(M: Medium) -> tuple[int, int, int]:
    """``(n, tau, m)``."""
    return M.n, M.tau, M.m


# -- contents -------------------------------------------------------------------

def unweighted_distances(M: Medium, source: int) -> list[int]:
    """BFS distances over the undirected effective-transition graph; -1 if unreachable."""
    _check_state(M, source)
    dist = [-1] * M.n
    dist[source] = 0
    queue = deque([source])
    # listed transitions are the out-arcs; reverse closure makes them symmetric
    # for media, and undirected treatment keeps BFS meaningful otherwise
    incoming = _incoming(M)
    while queue:
        s = queue.popleft()
        for _, q in M.adjacency[s]:
            if dist[q] < 0:
                dist[q] = dist[s] + 1
                queue.append(q)
        for q in incoming[s]:
            if dist[q] < 0:
                dist[q] = dist[s] + 1
                queue.append(q)
    return dist


def _incoming(M: Medium) -> list[list[int]]:
    cached = getattr(M, "_incoming_cache", None)
    if cached is None:
        cached = [[] for _ in range(M.n)]
        for s, _, q in M.transitions():
            cached[q].append(s)
        object.__setattr__(M, "_incoming_cache", cached)
    return cached


def compute_content(M: Medium, q: int) -> frozenset[int]:
    """The content of state ``q``: every token lying on a straight path into ``q``.

    A token ``t`` is in the content iff some transition ``A t B`` moves one
    step closer to ``q`` in the effective-transition graph.  Needs a valid
    medium; raises :class:`MediumError` when the result is not a content
    (disconnected graph, or a reverse pair not split exactly once).
    """
    dist = unweighted_distances(M, q)
    if min(dist) < 0:
        raise MediumError(f"state {dist.index(-1)} cannot reach state {q}")
    content = set()
    for a, t, b in M.transitions():
        if dist[b] == dist[a] - 1:
            content.add(t)
    for t, r in M.tokens.pairs():
        if (t in content) == (r in content):
            raise MediumError(
                f"content of state {q} contains {'both' if t in content else 'neither'} "
                f"of tokens {t}, {r}"
            )
    return frozenset(content)


# -- orientations and lengths ---------------------------------------------------

@dataclass(frozen=True)
class Orientation:
    """One positive token out of each reverse pair."""

    positive: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "positive", tuple(bool(x) for x in self.positive))

    @classmethod
    def from_positive(cls, tokens: TokenTable, positive: Iterable[int]) -> "Orientation":
        pos = set(positive)
        o = cls(tuple(t in pos for t in range(tokens.count)))
        o.check(tokens)
        return o

    @classmethod
    def default(cls, tokens: TokenTable) -> "Orientation":
        """Lower-indexed token of each pair positive (the natural orientation of family media)."""
        return cls(tuple(t < r for t, r in enumerate(tokens.reverse)))

    def check(self, tokens: TokenTable):
        if len(self.positive) != tokens.count:
            raise MediumError(f"orientation has {len(self.positive)} signs for {tokens.count} tokens")
        for t, r in tokens.pairs():
            if self.positive[t] == self.positive[r]:
                raise MediumError(f"tokens {t} and {r} are both {'positive' if self.positive[t] else 'negative'}")

    def positive_tokens(self) -> list[int]:
        return [t for t, p in enumerate(self.positive) if p]

    def __contains__(self, t: int) -> bool:
        return self.positive[t]


def content_orientation(M: Medium, q: int) -> Orientation:
    return Orientation.from_positive(M.tokens, compute_content(M, q))


@dataclass(frozen=True)
class LengthFunction:
    """Real token lengths with ``length(t) + length(reverse(t)) >= 0`` (exact)."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def unit(cls, tau: int) -> "LengthFunction":
        return cls((1.0,) * tau)

    @classmethod
    def from_mapping(cls, tokens: TokenTable, lengths: dict, default: float = 1.0) -> "LengthFunction":
        values = [default] * tokens.count
        for t, v in lengths.items():
            t = int(t)
            if not 0 <= t < tokens.count:
                raise MediumError(f"length given for unknown token {t}")
            values[t] = float(v)
        lam = cls(tuple(values))
        lam.check(tokens)
        return lam

    def check(self, tokens: TokenTable):
        if len(self.values) != tokens.count:
            raise MediumError(f"{len(self.values)} lengths for {tokens.count} tokens")
        for t, r in tokens.pairs():
            if self.values[t] + self.values[r] < 0:
                raise MediumError(
                    f"length({t}) + length({r}) = {self.values[t] + self.values[r]} < 0"
                )

    def __getitem__(self, t: int) -> float:
        return self.values[t]


# -- isomorphism ------------------------------------------------------------------

def find_isomorphism(A: Medium, B: Medium, token_map: Optional[Sequence[int]] = None):
    """Find a state bijection ``f`` with ``St = Q  <=>  f(S) g(t) = f(Q)``.

    ``token_map`` gives ``g``; by default tokens are matched by label.
    Returns the list ``f`` or None.  Both systems must be connected.
    """
    if A.n != B.n or A.tau != B.tau or A.m != B.m:
        return None
    if token_map is None and A.tau == 0:
        token_map = []
    if token_map is None:
        if A.tokens.labels is None or B.tokens.labels is None:
            raise MediumError("token_map required when tokens are unlabeled")
        where = {lab: t for t, lab in enumerate(B.tokens.labels)}
        try:
            token_map = [where[lab] for lab in A.tokens.labels]
        except KeyError:
            return None
    g = list(token_map)
    for start in range(B.n):
        f = [-1] * A.n
        used = [False] * B.n
        f[0] = start
        used[start] = True
        queue = deque([0])
        ok = True
        while queue and ok:
            s = queue.popleft()
            if len(A.adjacency[s]) != len(B.adjacency[f[s]]):
                ok = False
                break
            for t, q in A.adjacency[s]:
                image = B._table[f[s]].get(g[t])
                if image is None:
                    ok = False
                    break
                if f[q] < 0:
                    if used[image]:
                        ok = False
                        break
                    f[q] = image
                    used[image] = True
                    queue.append(q)
                elif f[q] != image:
                    ok = False
                    break
        if ok and all(x >= 0 for x in f):
            return f
    return None


# -- verification ---------------------------------------------------------------

@dataclass
class Violation:
    check: str
    message: str
    witness: tuple = ()

    def __str__(self):
        return f"[{self.check}] {self.message}"


@dataclass
class VerifyReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def verify_medium(M: Medium) -> VerifyReport:
    """Check that ``M`` is a medium.

    The structural checks (token involution, every token effective somewhere,
    connectivity, determinism, reverse closure) are followed by the
    well-graded reconstruction: under the default orientation the positive
    contents must be distinct, form a well-graded family, and ``M`` must be
    isomorphic to that family's medium with tokens matched pair for pair.
    Together these are equivalent to the medium axioms.
    """
    from .generators import first_non_well_graded_pair  # circular at import time

    out: list[Violation] = []
    tokens = M.tokens

    for msg in tokens.problems():
        out.append(Violation("reverses", msg))
    if out:
        return VerifyReport(out)

    effective_somewhere = [False] * M.tau
    for s, t, q in M.transitions():
        effective_somewhere[t] = True
    for t, eff in enumerate(effective_somewhere):
        if not eff:
            out.append(Violation("reverses", f"token {M.token_label(t)} is never effective", (t,)))

    for s, row in enumerate(M.adjacency):
        seen = {}
        for t, q in row:
            if t in seen:
                out.append(Violation(
                    "determinism",
                    f"state {s} has two transitions on token {M.token_label(t)} ({seen[t]}, {q})",
                    (s, t),
                ))
            seen[t] = q
    for s, t, q in M.transitions():
        r = tokens.reverse[t]
        if M._table[q].get(r) != s:
            out.append(Violation(
                "reverses",
                f"transition {s} -{M.token_label(t)}-> {q} has no reverse "
                f"{q} -{M.token_label(r)}-> {s}",
                (s, t, q),
            ))

    dist = unweighted_distances(M, 0)
    if min(dist) < 0:
        out.append(Violation("reachability", f"state {dist.index(-1)} unreachable from state 0",
                             (0, dist.index(-1))))
    if out:
        return VerifyReport(out)

    # well-graded reconstruction
    pairs = tokens.pairs()
    pair_of = [0] * M.tau
    for x, (t, r) in enumerate(pairs):
        pair_of[t] = pair_of[r] = x
    positive = Orientation.default(tokens)
    family = []
    for q in range(M.n):
        try:
            content = compute_content(M, q)
        except MediumError as exc:
            out.append(Violation("contents", str(exc), (q,)))
            return VerifyReport(out)
        bits = 0
        for t in content:
            if positive.positive[t]:
                bits |= 1 << pair_of[t]
        family.append(bits)
    index = {}
    for q, bits in enumerate(family):
        if bits in index:
            out.append(Violation("contents", f"states {index[bits]} and {q} have equal contents",
                                 (index[bits], q)))
        index.setdefault(bits, q)
    if out:
        return VerifyReport(out)

    bad = first_non_well_graded_pair(family)
    if bad is not None:
        a, b = index[bad[0]], index[bad[1]]
        out.append(Violation("contents", f"positive contents of states {a}, {b} are not joined "
                                          f"by a chain of single-element changes", (a, b)))
        return VerifyReport(out)

    for s in range(M.n):
        for t in range(M.tau):
            x = pair_of[t]
            bit = 1 << x
            here = family[s]
            if positive.positive[t]:
                image = here | bit
            else:
                image = here & ~bit
            expected = index.get(image, s) if image != here else s
            got = M._table[s].get(t, s)
            if got != expected:
                out.append(Violation(
                    "contents",
                    f"state {s}, token {M.token_label(t)}: goes to {got}, "
                    f"the content family predicts {expected}",
                    (s, t),
                ))
                return VerifyReport(out)
    return VerifyReport(out)
