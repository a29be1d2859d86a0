"""Contradiction graphs of finite concept classes.

G_m(H): vertices are the realizable m-example datasets of H (canonical
multisets), and two datasets are adjacent iff some point appears with label 0
in one and label 1 in the other.  Independent sets of interest are the
consistency sets V_h = {S : h consistent with S} for full labelings h of the
universe; they cover the vertex set and each is independent, so any clique
uses at most one vertex from each, bounding the clique number by the number
of maximal consistency sets (at most 2^|X|).
"""

from __future__ import annotations

from dataclasses import dataclass

from .concepts import ConceptClass, Dataset, HypothesisPattern, mask_to_pattern
from .errors import NotIndependentError, ResourceLimitError


@dataclass(frozen=True)
class Caps:
    """Resource guards.  Exceeding one raises ResourceLimitError naming the
    dimension; nothing is silently truncated."""

    max_vertices: int = 10**6
    max_pattern_universe: int = 20  # 2^|X| pattern enumerations beyond this refuse
    node_budget: int = 10**8  # branch-and-bound expansion budget

    def check_universe(self, n: int) -> None:
        if n > self.max_pattern_universe:
            raise ResourceLimitError(
                "pattern-cap",
                f"universe size {n} exceeds pattern enumeration cap "
                f"{self.max_pattern_universe}",
            )


DEFAULT_CAPS = Caps()


class ContradictionGraph:
    """Vertices in canonical dataset order; adjacency via point-label masks."""

    def __init__(self, cls: ConceptClass, m: int, vertices: tuple):
        self.cls = cls
        self.m = m
        self.vertices = vertices
        self.ones = tuple(v.ones_mask for v in vertices)
        self.zeros = tuple(v.zeros_mask for v in vertices)
        # adj[i] = bitmask over vertex indices adjacent to i
        n = len(vertices)
        adj = [0] * n
        for i in range(n):
            oi, zi = self.ones[i], self.zeros[i]
            row = 0
            for j in range(i + 1, n):
                if (oi & self.zeros[j]) or (zi & self.ones[j]):
                    row |= 1 << j
                    adj[j] |= 1 << i
            adj[i] |= row
        self.adj = tuple(adj)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def index_of(self, dataset: Dataset):
        """Vertex index of a dataset, or None if it is not a vertex."""
        return self._index.get(dataset)

    @property
    def _index(self) -> dict:
        idx = getattr(self, "_index_cache", None)
        if idx is None:
            idx = {v: i for i, v in enumerate(self.vertices)}
            self._index_cache = idx
        return idx

    def __repr__(self) -> str:
        return (
            f"ContradictionGraph(m={self.m}, vertices={self.num_vertices}, "
            f"edges={self.num_edges})"
        )


def build_graph(cls: ConceptClass, m: int, caps: Caps = DEFAULT_CAPS) -> ContradictionGraph:
    """Enumerate realizable size-m datasets in canonical order and assemble
    the graph.  DFS over labeled pairs in (point, label) order with the set
    of still-consistent hypotheses as a prune mask; nondecreasing pair
    sequences enumerate each multiset exactly once, already sorted."""
    cls.require_nonempty()
    if m < 1:
        raise ValueError("m must be >= 1")
    n = cls.universe_size
    if n < 1:
        raise ValueError("universe must contain at least one point")
    # consistent_mask[pair] = bitmask over hypothesis rows consistent with it
    pairs = [(p, l) for p in range(n) for l in (0, 1)]
    pair_masks = []
    for p, l in pairs:
        mask = 0
        for i, rm in enumerate(cls.row_masks):
            if ((rm >> p) & 1) == l:
                mask |= 1 << i
        pair_masks.append(mask)

    vertices: list[Dataset] = []
    prefix: list[tuple] = []

    def walk(start: int, remaining: int, alive: int) -> None:
        if remaining == 0:
            if len(vertices) >= caps.max_vertices:
                raise ResourceLimitError(
                    "vertex-cap",
                    f"more than {caps.max_vertices} realizable datasets at m={m}",
                )
            vertices.append(Dataset(prefix))
            return
        for k in range(start, len(pairs)):
            # skip (x,1) when (x,0) is already in the prefix: pairs are
            # point-major so the conflicting pair is exactly k-1
            if prefix and pairs[k][0] == prefix[-1][0] and pairs[k][1] != prefix[-1][1]:
                continue
            nxt = alive & pair_masks[k]
            if not nxt:
                continue
            prefix.append(pairs[k])
            walk(k, remaining - 1, nxt)
            prefix.pop()

    walk(0, m, (1 << len(cls.hypotheses)) - 1)
    return ContradictionGraph(cls, m, tuple(vertices))


def is_edge(g: ContradictionGraph, i: int, j: int) -> bool:
    n = g.num_vertices
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"vertex index out of range (n={n})")
    return i != j and bool((g.adj[i] >> j) & 1)


@dataclass(frozen=True)
class IndependentSetFamily:
    """Deduplicated consistency sets V_h, keyed by the witness pattern (the
    lexicographically least h producing each vertex set).  `masks[k]` is a
    bitmask over vertex indices.  The family always covers the vertices."""

    patterns: tuple  # tuple[HypothesisPattern, ...]
    masks: tuple  # tuple[int, ...], parallel to patterns

    def __len__(self) -> int:
        return len(self.masks)


def independent_sets(
    g: ContradictionGraph, maximal_only: bool = False, caps: Caps = DEFAULT_CAPS
) -> IndependentSetFamily:
    """All distinct V_h over h in {0,1}^X (first witness kept), optionally
    pruned to inclusion-maximal sets.  Every realizable dataset lies in the
    V_h of its realizing row, so coverage holds even after pruning."""
    n = g.cls.universe_size
    caps.check_universe(n)
    nv = g.num_vertices
    seen: dict[int, int] = {}  # vertex-mask -> witness pattern mask
    order: list[int] = []
    for hm in range(1 << n):
        vm = 0
        for v in range(nv):
            if (g.ones[v] & ~hm) == 0 and (g.zeros[v] & hm) == 0:
                vm |= 1 << v
        if vm and vm not in seen:
            seen[vm] = hm
            order.append(vm)
    if maximal_only:
        order = [vm for vm in order if not any(o != vm and vm & ~o == 0 for o in order)]
    full = (1 << nv) - 1
    covered = 0
    for vm in order:
        covered |= vm
    assert covered == full, "consistency sets failed to cover the vertices"
    return IndependentSetFamily(
        patterns=tuple(mask_to_pattern(seen[vm], n) for vm in order),
        masks=tuple(order),
    )


def witness_hypothesis(g: ContradictionGraph, vertex_mask: int) -> HypothesisPattern:
    """A full labeling consistent with every dataset in the given vertex set.

    Merges the sets' constraints; a point constrained both ways means the set
    was not independent (raises, naming the least conflicting point).
    Unconstrained points get label 0.
    """
    ones = 0
    zeros = 0
    m = vertex_mask
    while m:
        v = (m & -m).bit_length() - 1
        if v >= g.num_vertices:
            raise IndexError(f"vertex index {v} out of range")
        ones |= g.ones[v]
        zeros |= g.zeros[v]
        m &= m - 1
    conflict = ones & zeros
    if conflict:
        raise NotIndependentError((conflict & -conflict).bit_length() - 1)
    return mask_to_pattern(ones, g.cls.universe_size)


def wl_fingerprint(g: ContradictionGraph, rounds: int = 3) -> str:
    """Deterministic isomorphism-invariant fingerprint (color refinement).

    Starts from degrees and refines each vertex color by the sorted multiset
    of neighbor colors for a fixed number of rounds, then hashes the sorted
    final color multiset together with the vertex and edge counts.  Equal
    fingerprints do not prove isomorphism; distinct ones refute it.
    """
    import hashlib

    n = g.num_vertices
    colors = [g.adj[i].bit_count() for i in range(n)]
    for _ in range(rounds):
        signatures = []
        for i in range(n):
            nb = []
            rest = g.adj[i]
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                nb.append(colors[j])
            signatures.append((colors[i], tuple(sorted(nb))))
        palette = {sig: k for k, sig in enumerate(sorted(set(signatures)))}
        colors = [palette[sig] for sig in signatures]
    blob = repr((n, g.num_edges, sorted(colors))).encode()
    return hashlib.sha256(blob).hexdigest()


def export_edge_list(g: ContradictionGraph, verbose: bool = False) -> str:
    """Deterministic text form:

        p <num_vertices> <num_edges>
        e <i> <j>        (i < j, sorted)
        v <i> <rendering>  (only with verbose)
    """
    lines = [f"p {g.num_vertices} {g.num_edges}"]
    for i in range(g.num_vertices):
        rest = g.adj[i] >> (i + 1)
        j = i + 1
        while rest:
            if rest & 1:
                lines.append(f"e {i} {j}")
            rest >>= 1
            j += 1
    if verbose:
        for i, v in enumerate(g.vertices):
            lines.append(f"v {i} {v.render()}")
    return "\n".join(lines) + "\n"
