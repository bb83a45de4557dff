"""Example media and the correspondence with well-graded set families.

Set family members are int bitmasks over elements ``0..universe-1``.
Family media use tokens ``2x`` (insert x) and ``2x+1`` (delete x); swap media
use ``2p``/``2p+1`` for the pair ``t_xy``/``t_yx`` with ``x < y``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Medium, MediumError, Orientation, TokenTable, compute_content

LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class SetFamily:
    """Distinct subsets of ``0..universe-1`` whose union is the whole universe."""

    universe: int
    members: tuple[int, ...]
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(int(b) for b in self.members))
        if len(set(self.members)) != len(self.members):
            raise MediumError("family members must be distinct")
        union = 0
        for b in self.members:
            if b < 0:
                raise MediumError("negative bitmask")
            union |= b
        if union != (1 << self.universe) - 1:
            raise MediumError(
                f"universe has {self.universe} elements but the members cover {union:b}"
            )
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.universe:
                raise MediumError("one name per element required")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable], names: Optional[Sequence[str]] = None) -> "SetFamily":
        """Build from arbitrary hashable elements; element order is first appearance
        unless ``names`` fixes it."""
        sets = [list(s) for s in sets]
        if names is None:
            order = {}
            for s in sets:
                for x in s:
                    order.setdefault(x, len(order))
            names = list(order)
        index = {x: i for i, x in enumerate(names)}
        members = []
        for s in sets:
            bits = 0
            for x in s:
                bits |= 1 << index[x]
            members.append(bits)
        return cls(len(names), tuple(members), tuple(str(x) for x in names))

    def name(self, x: int) -> str:
        return str(x) if self.names is None else self.names[x]

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(elements(b)) for b in self.members]

    def render(self, bits: int) -> str:
        return "{" + ",".join(self.name(x) for x in elements(bits)) + "}"

    def __len__(self):
        return len(self.members)


def elements(bits: int) -> list[int]:
    out = []
    x = 0
    while bits:
        if bits & 1:
            out.append(x)
        bits >>= 1
        x += 1
    return out


def first_non_well_graded_pair(members: Sequence[int]) -> Optional[tuple[int, int]]:
    """Return a pair of members whose single-change distance exceeds their
    symmetric difference, or None if the family is well-graded."""
    present = set(members)
    universe = 0
    for b in members:
        universe |= b
    bits = [1 << x for x in elements(universe)]
    for src in members:
        dist = {src: 0}
        queue = deque([src])
        while queue:
            s = queue.popleft()
            for bit in bits:
                q = s ^ bit
                if q in present and q not in dist:
                    dist[q] = dist[s] + 1
                    queue.append(q)
        for q in members:
            if dist.get(q) != bin(src ^ q).count("1"):
                return src, q
    return None


def is_well_graded(F: SetFamily) -> bool:
    return first_non_well_graded_pair(F.members) is None


def from_well_graded_family(F: SetFamily) -> Medium:
    """The medium of a well-graded family: ``S i_x = S + {x}`` when that is a member, etc."""
    bad = first_non_well_graded_pair(F.members)
    if bad is not None:
        raise MediumError(f"family is not well-graded: {F.render(bad[0])} and {F.render(bad[1])}")
    index = {b: i for i, b in enumerate(F.members)}
    adjacency = []
    for bits in F.members:
        row = []
        for x in range(F.universe):
            q = index.get(bits ^ (1 << x))
            if q is not None:
                row.append((2 * x + 1 if bits >> x & 1 else 2 * x, q))
        adjacency.append(row)
    labels = []
    for x in range(F.universe):
        labels += [f"i_{F.name(x)}", f"d_{F.name(x)}"]
    return Medium(
        len(F.members),
        TokenTable.paired(F.universe, labels),
        tuple(tuple(r) for r in adjacency),
        tuple(F.render(b) for b in F.members),
    )


def positive_content_family(M: Medium, o: Orientation) -> SetFamily:
    """The family of positive contents; element ``x`` stands for the ``x``-th reverse pair.

    Elements are named after the positive token of their pair.
    """
    o.check(M.tokens)
    pairs = M.tokens.pairs()
    pair_of = {}
    for x, (t, r) in enumerate(pairs):
        pair_of[t] = pair_of[r] = x
    members = []
    for q in range(M.n):
        bits = 0
        for t in compute_content(M, q):
            if o.positive[t]:
                bits |= 1 << pair_of[t]
        members.append(bits)
    names = [M.token_label(t if o.positive[t] else r) for t, r in pairs]
    return SetFamily(len(pairs), tuple(members), tuple(names))


# -- swap media -----------------------------------------------------------------

def _swap_tokens(vertices: Sequence[str], pairs: Sequence[tuple[int, int]]) -> TokenTable:
    labels = []
    for x, y in pairs:
        labels += [f"t_{vertices[x]}{vertices[y]}", f"t_{vertices[y]}{vertices[x]}"]
    return TokenTable.paired(len(pairs), labels)


def _render_order(vertices: Sequence[str], order: Sequence[int]) -> str:
    if all(len(v) == 1 for v in vertices):
        return "".join(vertices[v] for v in order)
    return " ".join(vertices[v] for v in order)


def _ordering_medium(vertices: Sequence[str], orders: list[tuple[int, ...]],
                     pairs: list[tuple[int, int]]) -> Medium:
    """States are vertex orders; ``t_xy`` turns an adjacent ``yx`` into ``xy``."""
    index = {order: i for i, order in enumerate(orders)}
    token_of = {}
    for p, (x, y) in enumerate(pairs):
        token_of[x, y] = 2 * p
        token_of[y, x] = 2 * p + 1
    adjacency = []
    for order in orders:
        row = []
        for i in range(len(order) - 1):
            y, x = order[i], order[i + 1]
            t = token_of.get((x, y))
            if t is None:
                continue
            swapped = order[:i] + (x, y) + order[i + 2:]
            row.append((t, index[swapped]))
        adjacency.append(tuple(row))
    return Medium(
        len(orders),
        _swap_tokens(vertices, pairs),
        tuple(adjacency),
        tuple(_render_order(vertices, o) for o in orders),
    )


def _default_names(k: int) -> list[str]:
    if k <= len(LETTERS):
        return list(LETTERS[:k])
    return [str(i) for i in range(k)]


def permutation_medium(k: int, max_items: int = 9) -> Medium:
    """All permutations of ``k`` items, in lexicographic order (state 0 is the identity)."""
    if k < 1:
        raise MediumError("need at least one item")
    if k > max_items:
        raise MediumError(f"{k}! states is too many (limit {max_items} items)")
    names = _default_names(k)
    orders = list(itertools.permutations(range(k)))
    pairs = list(itertools.combinations(range(k), 2))
    return _ordering_medium(names, orders, pairs)


def _check_vertices(vertices: Sequence[str], edges: Iterable[tuple[str, str]]):
    index = {v: i for i, v in enumerate(vertices)}
    if len(index) != len(vertices):
        raise MediumError("duplicate vertex names")
    out = []
    for a, b in edges:
        if a not in index or b not in index:
            raise MediumError(f"edge {a}-{b} uses an unknown vertex")
        if a == b:
            raise MediumError(f"self-loop at {a}")
        out.append((index[a], index[b]))
    return index, out


def _reachability(k: int, arcs: Sequence[tuple[int, int]]) -> list[int]:
    """Bitmask of vertices reachable from each vertex (excluding itself unless on a cycle)."""
    succ = [0] * k
    for a, b in arcs:
        succ[a] |= 1 << b
    reach = list(succ)
    changed = True
    while changed:
        changed = False
        for v in range(k):
            acc = reach[v]
            for w in elements(reach[v]):
                acc |= reach[w]
            if acc != reach[v]:
                reach[v] = acc
                changed = True
    return reach


def _topological_orders(k: int, arcs: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    preds = [0] * k
    for a, b in arcs:
        preds[b] |= 1 << a
    out = []
    order = []

    def extend(placed: int):
        if len(order) == k:
            out.append(tuple(order))
            return
        for v in range(k):
            if not placed >> v & 1 and preds[v] & ~placed == 0:
                order.append(v)
                extend(placed | 1 << v)
                order.pop()

    extend(0)
    return out


def topological_ordering_medium(vertices: Sequence[str], arcs: Iterable[tuple[str, str]]) -> Medium:
    """Topological orderings of a DAG, with swaps ``t_xy`` for every unrelated pair."""
    vertices = [str(v) for v in vertices]
    _, arcs = _check_vertices(vertices, arcs)
    k = len(vertices)
    if k == 0:
        raise MediumError("need at least one vertex")
    reach = _reachability(k, arcs)
    for v in range(k):
        if reach[v] >> v & 1:
            raise MediumError(f"graph has a cycle through {vertices[v]}")
    pairs = [
        (x, y) for x, y in itertools.combinations(range(k), 2)
        if not reach[x] >> y & 1 and not reach[y] >> x & 1
    ]
    return _ordering_medium(vertices, _topological_orders(k, arcs), pairs)


def _is_acyclic(k: int, arcs: Sequence[tuple[int, int]]) -> bool:
    indeg = [0] * k
    succ = [[] for _ in range(k)]
    for a, b in arcs:
        succ[a].append(b)
        indeg[b] += 1
    stack = [v for v in range(k) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == k


def acyclic_orientation_medium(vertices: Sequence[str], edges: Iterable[tuple[str, str]],
                               max_edges: int = 20) -> Medium:
    """Acyclic orientations of a simple graph.

    ``t_xy`` reorients edge ``{x, y}`` to point from ``x`` to ``y`` when the
    result stays acyclic.  States are listed by orientation bitmask, bit ``e``
    set when edge ``e`` (stored as ``x < y``) points from its larger to its
    smaller endpoint.
    """
    vertices = [str(v) for v in vertices]
    _, edges = _check_vertices(vertices, edges)
    k = len(vertices)
    if k == 0:
        raise MediumError("need at least one vertex")
    norm = sorted({(min(a, b), max(a, b)) for a, b in edges})
    if len(norm) != len(edges):
        raise MediumError("graph has parallel edges")
    if len(norm) > max_edges:
        raise MediumError(f"{len(norm)} edges is too many (limit {max_edges})")

    def arcs_of(bits):
        return [(y, x) if bits >> e & 1 else (x, y) for e, (x, y) in enumerate(norm)]

    states = [b for b in range(1 << len(norm)) if _is_acyclic(k, arcs_of(b))]
    index = {b: i for i, b in enumerate(states)}
    adjacency = []
    for bits in states:
        row = []
        for e in range(len(norm)):
            q = index.get(bits ^ (1 << e))
            if q is not None:
                # pair e: token 2e orients x->y (clears the bit), 2e+1 orients y->x
                row.append((2 * e + 1 if not bits >> e & 1 else 2 * e, q))
        adjacency.append(tuple(row))
    labels = []
    for bits in states:
        labels.append(",".join(f"{vertices[a]}>{vertices[b]}" for a, b in arcs_of(bits)))
    return Medium(len(states), _swap_tokens(vertices, norm), tuple(adjacency), tuple(labels))


# -- downward-closed families ---------------------------------------------------------

def downward_closed_medium(F: SetFamily) -> Medium:
    members = set(F.members)
    for b in F.members:
        for x in elements(b):
            if b & ~(1 << x) not in members:
                raise MediumError(
                    f"family is not downward closed: {F.render(b)} is a member "
                    f"but {F.render(b & ~(1 << x))} is not"
                )
    return from_well_graded_family(F)


def independent_sets(k: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    adj = [0] * k
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    out = []

    def grow(v, bits, blocked):
        if v == k:
            out.append(bits)
            return
        grow(v + 1, bits, blocked)
        if not blocked >> v & 1:
            grow(v + 1, bits | 1 << v, blocked | adj[v])

    grow(0, 0, 0)
    return sorted(out, key=lambda b: (bin(b).count("1"), elements(b)))


def independent_set_family(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> SetFamily:
    vertices = [str(v) for v in vertices]
    _, edges = _check_vertices(vertices, edges)
    return SetFamily(len(vertices), tuple(independent_sets(len(vertices), edges)), tuple(vertices))


def independent_set_medium(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> Medium:
    return downward_closed_medium(independent_set_family(vertices, edges))


def powerset_family(k: int) -> SetFamily:
    members = sorted(range(1 << k), key=lambda b: (bin(b).count("1"), elements(b)))
    return SetFamily(k, tuple(members), tuple(str(x) for x in range(1, k + 1)))


def powerset_medium(k: int) -> Medium:
    return from_well_graded_family(powerset_family(k))


# -- binary trees -------------------------------------------------------------------

def _tree_leaves(nodes: int) -> int:
    count = 0
    for v in elements(nodes):
        if not nodes >> (2 * v + 1) & 1 and not nodes >> (2 * v + 2) & 1:
            count += 1
    return count


def binary_trees(max_height: int, max_leaves: Optional[int] = None, max_states: int = 200_000) -> list[int]:
    """Nonempty binary trees as heap-number bitmasks, closed under parent.

    Nodes may have zero, one or two children.  Height counts edges, so the
    root alone has height 0.
    """
    if max_height < 0:
        raise MediumError("height bound must be nonnegative")
    if max_leaves is not None and max_leaves < 1:
        raise MediumError("a nonempty tree has at least one leaf")
    slots = (1 << (max_height + 1)) - 1
    trees = []

    def grow(frontier: list[int], nodes: int):
        # frontier holds candidate nodes not yet decided, in heap order
        if len(trees) > max_states:
            raise MediumError(f"more than {max_states} trees")
        if not frontier:
            if max_leaves is None or _tree_leaves(nodes) <= max_leaves:
                trees.append(nodes)
            return
        v, rest = frontier[0], frontier[1:]
        grow(rest, nodes)
        children = [c for c in (2 * v + 1, 2 * v + 2) if c < slots]
        grow(rest + children, nodes | 1 << v)

    grow([1, 2] if slots > 1 else [], 1)
    trees.sort(key=lambda b: (bin(b).count("1"), elements(b)))
    return trees


def binary_tree_family(max_height: int, max_leaves: Optional[int] = None) -> SetFamily:
    """The trees as a family over the non-root heap numbers.

    The root belongs to every tree, so it is left out of the universe: its
    tokens could never be effective.
    """
    trees = binary_trees(max_height, max_leaves)
    used = 0
    for b in trees:
        used |= b
    nodes = [v for v in elements(used) if v != 0]
    members = []
    for b in trees:
        members.append(sum(1 << i for i, v in enumerate(nodes) if b >> v & 1))
    return SetFamily(len(nodes), tuple(members), tuple(str(v) for v in nodes))


def _tree_medium(F: SetFamily) -> Medium:
    M = from_well_graded_family(F)
    labels = ["{" + ",".join(["0"] + [F.name(x) for x in elements(b)]) + "}" for b in F.members]
    return Medium(M.n, M.tokens, M.adjacency, tuple(labels))


def binary_tree_medium(max_leaves: int, max_height: int) -> Medium:
    """Trees with at most ``max_leaves`` leaves; the height cap keeps the family
    finite, since unary chains add depth without adding leaves."""
    return _tree_medium(binary_tree_family(max_height, max_leaves))


def binary_tree_height_medium(max_height: int) -> Medium:
    return _tree_medium(binary_tree_family(max_height))
