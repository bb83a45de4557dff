"""Media given only by a token list, a transition oracle and one seed state.

States are opaque: the enumerator compares them with ``==`` and never looks
inside.  It keeps one current state, a token cursor and the set of tokens
found to point toward the seed, so memory does not grow with the number of
states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Optional, Sequence

from .core import Medium, apply_token


class BadMediumError(ValueError):
    """The oracle does not describe a medium."""


@dataclass(frozen=True)
class BlackBoxMedium:
    tokens: tuple[str, ...]
    transition: Callable[[Any, int], Any]
    seed: Any
    render: Callable[[Any], str] = str

    @property
    def tau(self) -> int:
        return len(self.tokens)


class CallCounter:
    """Wraps a transition function and counts its calls."""

    def __init__(self, fn: Callable[[Any, int], Any]):
        self.fn = fn
        self.calls = 0

    def __call__(self, state, token):
        self.calls += 1
        return self.fn(state, token)


def counted(bb: BlackBoxMedium) -> tuple[BlackBoxMedium, CallCounter]:
    counter = CallCounter(bb.transition)
    return BlackBoxMedium(bb.tokens, counter, bb.seed, bb.render), counter


def _reverse_search(bb: BlackBoxMedium, positive: Optional[dict] = None) -> Iterator[tuple[str, Any]]:
    """Walk the canonical path tree of ``bb``.

    Yields ``("state", S)`` on first arrival at each state and
    ``("up", t)`` when returning from a state to its parent along token ``t``.
    ``positive`` (insertion ordered) collects the tokens found to lie on
    straight paths toward the seed; the canonical step from a state uses the
    first of them that is effective.
    """
    f = bb.transition
    tau = bb.tau
    if positive is None:
        positive = {}

    def step(state):
        for t in positive:
            nb = f(state, t)
            if nb != state:
                return t, nb
        raise BadMediumError(f"bad medium: unable to find a positive step from {bb.render(state)}")

    seed = bb.seed
    state = seed
    yield "state", state
    cursor = 0
    while True:
        if cursor < tau:
            t = cursor
            cursor += 1
            if t in positive:
                continue
            nb = f(state, t)
            if nb == state:
                continue
            for inv in range(tau):
                if f(nb, inv) == state:
                    positive.setdefault(inv, None)
            if step(nb)[1] == state:
                state = nb
                cursor = 0
                yield "state", state
            continue
        if state == seed:
            return
        up, parent = step(state)
        yield "up", up
        cursor = 0
        while cursor < tau:
            t = cursor
            cursor += 1
            if f(parent, t) == state:
                break
        else:
            raise BadMediumError(f"bad medium: {bb.render(parent)} does not lead back to {bb.render(state)}")
        state = parent


def enumerate_states(bb: BlackBoxMedium, positive: Optional[dict] = None) -> Iterator[Any]:
    """Yield every state of ``bb`` exactly once, the seed first.

    Lazy and resumable; pass a dict as ``positive`` to inspect the tokens
    found to point toward the seed.
    """
    for kind, value in _reverse_search(bb, positive):
        if kind == "state":
            yield value


def black_box_reset_sequence(bb: BlackBoxMedium) -> tuple[int, ...]:
    """Reset word of length ``n - 1`` sending every state to the seed."""
    return tuple(value for kind, value in _reverse_search(bb) if kind == "up")


def wrap_explicit(M: Medium) -> BlackBoxMedium:
    """Black box backed by an explicit medium; states are indices, seed 0."""
    return BlackBoxMedium(
        tuple(M.token_label(t) for t in range(M.tau)),
        lambda s, t: apply_token(M, s, t),
        0,
        M.state_label,
    )


def render_bits(bits: int, names: Optional[Sequence[str]] = None) -> str:
    out = []
    x = 0
    while bits:
        if bits & 1:
            out.append(str(x) if names is None else names[x])
        bits >>= 1
        x += 1
    return "{" + ",".join(out) + "}"


def set_family_oracle(universe: int, member: Callable[[int], bool], seed: int = 0,
                      names: Optional[Sequence[str]] = None) -> BlackBoxMedium:
    """Bitmask states; token ``2x`` inserts ``x`` and ``2x+1`` deletes it when
    ``member`` accepts the result, otherwise the state is unchanged."""
    if names is None:
        names = [str(x) for x in range(universe)]
    labels = []
    for x in range(universe):
        labels += [f"i_{names[x]}", f"d_{names[x]}"]

    def transition(bits: int, t: int) -> int:
        x, delete = divmod(t, 2)
        bit = 1 << x
        if delete:
            if bits & bit and member(bits & ~bit):
                return bits & ~bit
        elif not bits & bit and member(bits | bit):
            return bits | bit
        return bits

    return BlackBoxMedium(tuple(labels), transition, seed, lambda b: render_bits(b, names))


def powerset_oracle(k: int) -> BlackBoxMedium:
    return set_family_oracle(k, lambda bits: True, 0, [str(x) for x in range(1, k + 1)])


def max_size_oracle(k: int, universe: int) -> BlackBoxMedium:
    return set_family_oracle(universe, lambda bits: bin(bits).count("1") <= k, 0,
                             [str(x) for x in range(1, universe + 1)])


def independent_set_oracle(vertices: Sequence[str], edges: Sequence[tuple[int, int]]) -> BlackBoxMedium:
    adj = [0] * len(vertices)
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    def independent(bits: int) -> bool:
        x = 0
        rest = bits
        while rest:
            if rest & 1 and adj[x] & bits:
                return False
            rest >>= 1
            x += 1
        return True

    return set_family_oracle(len(vertices), independent, 0, list(vertices))
