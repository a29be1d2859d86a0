"""Exact clique search and clique/mistake-tree conversions.

The maximum-clique solver is a deterministic branch-and-bound over bitmask
candidate sets with a greedy-coloring upper bound: vertices are ordered by
descending degree (ties by index), each node color-sorts its candidates and
prunes when the current clique plus the candidate's color cannot beat the
incumbent (or reach the decision target).  A node budget caps the search;
exhaustion raises ResourceLimitError carrying the best clique found, which
remains a certified lower bound.

`find_balanced_point` runs the elimination loop that powers the conversion
of large cliques into shattered mistake trees: repeatedly delete a labeled
example that under 1/(2m)-fraction of the other members contradict, until
every example held by a surviving member is contradicted often enough.  The
loop deletes at most |C|*m examples, drops fewer than C(|C|,2) edges in
total (fewer than (|C|-1)/(2m) per iteration), and therefore always leaves
an edge; the contradiction point of a surviving edge is balanced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .concepts import Dataset
from .errors import (
    DegenerateCliqueError,
    NotCompleteError,
    NotShatteredError,
    ResourceLimitError,
)
from .graph import Caps, ContradictionGraph, DEFAULT_CAPS
from .trees import MistakeLeaf, MistakeNode, MistakeTree, branches, is_complete


@dataclass(frozen=True)
class Clique:
    """Pairwise-adjacent vertex indices, sorted."""

    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)


def validate_clique(g: ContradictionGraph, members) -> Clique:
    members = tuple(sorted(members))
    for i in members:
        if not 0 <= i < g.num_vertices:
            raise IndexError(f"vertex index {i} out of range")
    if len(set(members)) != len(members):
        raise ValueError("duplicate vertex in clique")
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            if not (g.adj[members[a]] >> members[b]) & 1:
                raise ValueError(
                    f"vertices {members[a]} and {members[b]} are not adjacent"
                )
    return Clique(members)


def _clique_order(adj) -> list:
    degs = [a.bit_count() for a in adj]
    return sorted(range(len(adj)), key=lambda v: (-degs[v], v))


def _greedy_clique(adj, order) -> list:
    out = []
    p = (1 << len(adj)) - 1
    for v in order:
        if (p >> v) & 1:
            out.append(v)
            p &= adj[v]
    return out


def _search(adj, node_budget: int, target=None):
    """Core branch-and-bound.  Returns (best_members, nodes_used).

    With `target` set, stops as soon as a clique of that size is found and
    prunes branches that cannot reach it.  Raises ResourceLimitError carrying
    the incumbent when the budget runs out before the answer is certain.
    """
    n = len(adj)
    order = _clique_order(adj)
    best = _greedy_clique(adj, order)
    nodes = 0
    if target is not None and len(best) >= target:
        return best, nodes

    def expand(r: list, p: int) -> bool:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceLimitError(
                "node-budget",
                f"clique search exceeded {node_budget} nodes",
                best=list(best),
            )
        # color-sort candidates: first-fit color classes over the static order
        class_masks: list[int] = []
        class_verts: list[list[int]] = []
        for v in order:
            if not (p >> v) & 1:
                continue
            for ci in range(len(class_masks)):
                if not (adj[v] & class_masks[ci]):
                    class_masks[ci] |= 1 << v
                    class_verts[ci].append(v)
                    break
            else:
                class_masks.append(1 << v)
                class_verts.append([v])
        seq = [(v, ci + 1) for ci, vs in enumerate(class_verts) for v in vs]
        local = p
        for v, color in reversed(seq):
            bound = len(best) if target is None else max(len(best), target - 1)
            if len(r) + color <= bound:
                return False  # earlier entries have lower colors: all pruned
            r.append(v)
            if len(r) > len(best):
                best = list(r)
                if target is not None and len(best) >= target:
                    r.pop()
                    return True
            nxt = local & adj[v]
            if nxt and expand(r, nxt):
                r.pop()
                return True
            r.pop()
            local &= ~(1 << v)
        return False

    if n:
        expand([], (1 << n) - 1)
    return best, nodes


def max_clique(g: ContradictionGraph, caps: Caps = DEFAULT_CAPS) -> Clique:
    """Exact maximum clique (deterministic membership)."""
    best, _ = _search(g.adj, caps.node_budget)
    return Clique(tuple(sorted(best)))


def has_clique_of_size(g: ContradictionGraph, k: int, caps: Caps = DEFAULT_CAPS) -> bool:
    """Decision variant with early exit.  Budget exhaustion raises (the
    tri-state 'unknown'); a normal return is a certain yes/no."""
    if k <= 0:
        return True
    if k > g.num_vertices:
        return False
    best, _ = _search(g.adj, caps.node_budget, target=k)
    return len(best) >= k


@dataclass(frozen=True)
class BalancedPointReport:
    """Output of the elimination loop plus its accounting, so callers can
    audit the invariants the proof promises."""

    point: int
    count_zero: int  # original members containing (point, 0)
    count_one: int  # original members containing (point, 1)
    threshold: Fraction  # (|C|-1) / (2m)
    clique_size: int
    iterations: int
    deletions: int  # labeled-example copies removed
    edges_dropped: int
    surviving_edges: int


def find_balanced_point(g: ContradictionGraph, clique: Clique) -> BalancedPointReport:
    members = clique.members
    c = len(members)
    if c < 2:
        raise DegenerateCliqueError("balanced point needs a clique of size >= 2")
    m = g.m
    threshold = Fraction(c - 1, 2 * m)

    # working copies: multiset as {(point,label): copies}; deleting an example
    # removes the key outright (all copies), charging the multiplicity
    work: list[dict] = []
    ones = []
    zeros = []
    for idx in members:
        d: dict = {}
        for ex in g.vertices[idx]:
            d[(ex.point, ex.label)] = d.get((ex.point, ex.label), 0) + 1
        work.append(d)
        ones.append(g.ones[idx])
        zeros.append(g.zeros[idx])

    alive = [((1 << c) - 1) & ~(1 << i) for i in range(c)]  # complete graph on members

    def contradicts(i: int, j: int) -> bool:
        return bool((ones[i] & zeros[j]) or (zeros[i] & ones[j]))

    for a in range(c):
        for b in range(a + 1, c):
            if not contradicts(a, b):
                raise ValueError(f"input is not a clique: members {a} and {b}")

    iterations = 0
    deletions = 0
    edges_dropped = 0
    while True:
        hit = None
        for i in range(c):
            for (p, l) in sorted(work[i]):
                cnt = sum(1 for j in range(c) if (p, 1 - l) in work[j])
                if cnt < threshold:
                    hit = (i, p, l)
                    break
            if hit:
                break
        if hit is None:
            break
        iterations += 1
        i, p, l = hit
        deletions += work[i].pop((p, l))
        if l:
            ones[i] &= ~(1 << p)
        else:
            zeros[i] &= ~(1 << p)
        rest = alive[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if not contradicts(i, j):
                alive[i] &= ~(1 << j)
                alive[j] &= ~(1 << i)
                edges_dropped += 1

    assert deletions <= c * m, "elimination deleted more than |C|*m examples"
    assert edges_dropped < c * (c - 1) // 2, "elimination dropped every edge's worth"
    surviving = sum(a.bit_count() for a in alive) // 2
    assert surviving >= 1, "no surviving edge after elimination"

    # first surviving edge, then its least contradiction point
    ei = ej = -1
    for i in range(c):
        if alive[i]:
            ei = i
            ej = (alive[i] & -alive[i]).bit_length() - 1
            break
    conflict = (ones[ei] & zeros[ej]) | (zeros[ei] & ones[ej])
    x = (conflict & -conflict).bit_length() - 1

    count_zero = sum(1 for idx in members if (g.zeros[idx] >> x) & 1)
    count_one = sum(1 for idx in members if (g.ones[idx] >> x) & 1)
    assert count_zero >= threshold and count_one >= threshold
    return BalancedPointReport(
        point=x,
        count_zero=count_zero,
        count_one=count_one,
        threshold=threshold,
        clique_size=c,
        iterations=iterations,
        deletions=deletions,
        edges_dropped=edges_dropped,
        surviving_edges=surviving,
    )


def tree_from_clique(g: ContradictionGraph, clique: Clique) -> MistakeTree:
    """Convert a clique into a complete shattered mistake tree.

    Recursion: a balanced point x of the current sub-clique splits it into
    the members containing (x,0) and those containing (x,1) (membership in
    the original datasets); both parts are nonempty because both counts reach
    (|C|-1)/(2m) > 0.  The raw tree is cut to its minimum leaf depth T, which
    satisfies |clique| <= (2m+1)^T: along any root-to-leaf path the sizes
    obey size(parent) <= 2m*size(child) + 1 <= (2m+1)*size(child).
    Leaves carry the surviving member indices.
    """
    if clique.size < 1:
        raise DegenerateCliqueError("tree extraction needs a nonempty clique")
    split_cache: dict = {}

    def split(indices: tuple):
        got = split_cache.get(indices)
        if got is None:
            rep = find_balanced_point(g, Clique(indices))
            x = rep.point
            left = tuple(i for i in indices if (g.zeros[i] >> x) & 1)
            right = tuple(i for i in indices if (g.ones[i] >> x) & 1)
            assert left and right
            got = (x, left, right)
            split_cache[indices] = got
        return got

    def depth_of(indices: tuple) -> int:
        if len(indices) == 1:
            return 0
        _, left, right = split(indices)
        return 1 + min(depth_of(left), depth_of(right))

    def build(indices: tuple, remaining: int) -> MistakeTree:
        if remaining == 0:
            return MistakeLeaf(members=indices)
        x, left, right = split(indices)
        return MistakeNode(x, build(left, remaining - 1), build(right, remaining - 1))

    cut = depth_of(clique.members)
    return build(clique.members, cut)


def clique_from_tree(g: ContradictionGraph, tree: MistakeTree) -> Clique:
    """Map a complete depth-m shattered tree to a 2^m-clique of G_m.

    Every branch spells a dataset; realizability of each branch is exactly
    membership in the vertex set.  Any two branches contradict at the point
    of their least common ancestor, so the image is a clique.
    """
    if not is_complete(tree, g.m):
        raise NotCompleteError(f"tree is not complete at depth m={g.m}")
    indices = []
    for path in branches(tree):
        try:
            ds = Dataset(path)
        except Exception as exc:
            raise NotShatteredError(
                f"branch {path} repeats a point with both labels"
            ) from exc
        idx = g.index_of(ds)
        if idx is None:
            raise NotShatteredError(f"branch dataset {ds.render()} is not realizable")
        indices.append(idx)
    if len(set(indices)) != len(indices):
        raise NotShatteredError("two branches map to the same dataset")
    return validate_clique(g, indices)
