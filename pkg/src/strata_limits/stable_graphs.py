"""Weighted multigraphs with loops: genus, stability, canonical forms.

A stable graph is a connected weighted multigraph in which every vertex of
weight zero has degree at least three; a loop contributes two to the degree
of its vertex but counts as a single edge.  The genus is
``sum(weights) + edges - vertices + 1``.

Canonical forms are computed by ordered-partition refinement followed by a
pruned search for the lexicographically minimal weighted adjacency matrix.
The graphs handled here are tiny, so no external canonical-labeling
dependency is used; a vertex budget and a search budget make the limits of
the brute force explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

__all__ = [
    "StableGraph",
    "CanonicalForm",
    "BudgetExceededError",
    "canonical_form",
    "is_isomorphic",
]

DEFAULT_VERTEX_BUDGET = 12
_LEAF_LIMIT = 200_000


class BudgetExceededError(ValueError):
    """Canonicalization was asked to exceed its declared search budget."""


class StableGraph:
    """A connected weighted multigraph with loops and parallel edges.

    ``vertices`` is a sequence of ``(id, weight)`` pairs with distinct ids
    and non-negative integer weights; ``edges`` is a sequence of unordered
    id pairs, repeated according to multiplicity.  Stability itself is a
    queryable property, not a construction invariant, so that almost-stable
    graphs can be built and rejected with a useful diagnostic.
    """

    __slots__ = ("vertices", "edges", "_weight_of", "_index_of")

    def __init__(
        self,
        vertices: Iterable[tuple[Hashable, int]],
        edges: Iterable[tuple[Hashable, Hashable]] = (),
    ):
        vertex_list = [(v, int(w)) for v, w in vertices]
        ids = [v for v, _ in vertex_list]
        if len(ids) == 0:
            raise ValueError("a graph needs at least one vertex")
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be distinct")
        for v, w in vertex_list:
            if w < 0:
                raise ValueError(f"vertex {v!r} has negative weight")
        vertex_list.sort(key=lambda it: _sort_key(it[0]))
        id_set = set(ids)

        edge_list = []
        for a, b in edges:
            if a not in id_set or b not in id_set:
                raise ValueError(f"edge ({a!r}, {b!r}) references a missing vertex")
            edge_list.append(tuple(sorted((a, b), key=_sort_key)))
        edge_list.sort(key=lambda e: (_sort_key(e[0]), _sort_key(e[1])))

        self.vertices: tuple[tuple[Hashable, int], ...] = tuple(vertex_list)
        self.edges: tuple[tuple[Hashable, Hashable], ...] = tuple(edge_list)
        self._weight_of = {v: w for v, w in vertex_list}
        self._index_of = {v: i for i, (v, _) in enumerate(vertex_list)}

        if not self._is_connected():
            raise ValueError("graph is not connected")

    def _is_connected(self) -> bool:
        n = len(self.vertices)
        adjacency: dict[Hashable, set[Hashable]] = {v: set() for v, _ in self.vertices}
        for a, b in self.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        start = self.vertices[0][0]
        seen = {start}
        stack = [start]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == n

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def weight(self, vertex) -> int:
        return self._weight_of[vertex]

    def degree(self, vertex) -> int:
        """Number of edge ends at the vertex; a loop contributes two."""
        total = 0
        for a, b in self.edges:
            if a == vertex:
                total += 1
            if b == vertex:
                total += 1
        return total

    def genus(self) -> int:
        weights = sum(w for _, w in self.vertices)
        return weights + self.edge_count - self.vertex_count + 1

    def is_stable(self) -> bool:
        return all(self.weight(v) > 0 or self.degree(v) >= 3 for v, _ in self.vertices)

    def to_text(self) -> str:
        lines = [f"V {v} w={w}" for v, w in self.vertices]
        lines += [f"E {a} {b}" for a, b in self.edges]
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        lines = ["graph stable {"]
        for v, w in self.vertices:
            lines.append(f'  "v{v}" [label="w={w}"];')
        for a, b in self.edges:
            lines.append(f'  "v{a}" -- "v{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def relabeled(self, mapping: dict) -> "StableGraph":
        """The same graph with vertex ids replaced through ``mapping``."""
        return StableGraph(
            [(mapping[v], w) for v, w in self.vertices],
            [(mapping[a], mapping[b]) for a, b in self.edges],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, StableGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return (
            f"StableGraph(v={self.vertex_count}, e={self.edge_count}, "
            f"weights={tuple(sorted(w for _, w in self.vertices))})"
        )


def _sort_key(value) -> tuple:
    # Vertex ids may mix ints with other types; sort by type name first so
    # the ordering is total, with numeric order within the ints.
    if isinstance(value, int):
        return ("int", "", value)
    return (type(value).__name__, repr(value), 0)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """A total-order key that is equal exactly for isomorphic graphs."""

    vertex_count: int
    edge_count: int
    weight_multiset: tuple[int, ...]
    certificate: tuple

    def __str__(self) -> str:
        return (
            f"v={self.vertex_count} e={self.edge_count} "
            f"weights={list(self.weight_multiset)}"
        )


class _CanonicalSearch:
    """Minimal-adjacency-matrix search with refinement and pruning.

    The search tree individualizes one vertex of the first non-singleton
    cell at a time, refining after each choice.  Three prunings keep the
    tree small on the highly symmetric graphs this package produces:

    - orbit pruning under automorphisms discovered at equal-certificate
      leaves (only automorphisms fixing the current prefix pointwise apply);
    - a cell whose members are pairwise interchangeable (equal rows) is
      fixed in one step instead of branching;
    - after the first child of a node, further children are probed by a
      single leftmost descent and abandoned when the probe certificate
      matches the current best, which implies an automorphism carrying the
      whole subtree onto an already-explored one.
    """

    def __init__(self, n, weights, loops, adjacency):
        self.n = n
        self.weights = weights
        self.loops = loops
        self.adjacency = adjacency  # list of dicts: vertex -> multiplicity
        self.best: tuple | None = None
        self.best_order: list[int] | None = None
        self.automorphisms: list[tuple[int, ...]] = []
        self.leaves = 0
        self.last_leaf: tuple | None = None

    def run(self) -> tuple:
        cells = self._initial_cells()
        self._dfs(cells, [], probe=False)
        assert self.best is not None
        return self.best

    def _initial_cells(self) -> list[list[int]]:
        keys = {}
        degree = [
            sum(self.adjacency[v].values()) + 2 * self.loops[v] for v in range(self.n)
        ]
        for v in range(self.n):
            keys.setdefault((self.weights[v], degree[v], self.loops[v]), []).append(v)
        return [sorted(keys[k]) for k in sorted(keys)]

    def _refine(self, cells: list[list[int]]) -> list[list[int]]:
        while True:
            cell_of = {}
            for ci, cell in enumerate(cells):
                for v in cell:
                    cell_of[v] = ci
            changed = False
            new_cells: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                buckets: dict[tuple, list[int]] = {}
                for v in cell:
                    counts = [0] * len(cells)
                    for u, mult in self.adjacency[v].items():
                        counts[cell_of[u]] += mult
                    buckets.setdefault(tuple(counts), []).append(v)
                if len(buckets) > 1:
                    changed = True
                for sig in sorted(buckets):
                    new_cells.append(sorted(buckets[sig]))
            cells = new_cells
            if not changed:
                return cells

    def _certificate(self, order: list[int]) -> tuple:
        flat = []
        for i in range(self.n):
            vi = order[i]
            row = self.adjacency[vi]
            flat.append(self.loops[vi])
            for j in range(i + 1, self.n):
                flat.append(row.get(order[j], 0))
        return (tuple(self.weights[v] for v in order), tuple(flat))

    def _interchangeable(self, cell: list[int]) -> bool:
        # True when every transposition inside the cell is an automorphism,
        # i.e. all members have identical rows away from the cell and one
        # shared multiplicity for all within-cell pairs.  (Weights and loop
        # counts are already uniform within a refined cell.)
        cell_set = set(cell)
        base = cell[0]
        outside = {u: m for u, m in self.adjacency[base].items() if u not in cell_set}
        expected_inner = None
        for v in cell:
            row = self.adjacency[v]
            if {u: m for u, m in row.items() if u not in cell_set} != outside:
                return False
            inner_values = {row.get(u, 0) for u in cell if u != v}
            if len(inner_values) > 1:
                return False
            value = inner_values.pop() if inner_values else 0
            if expected_inner is None:
                expected_inner = value
            elif value != expected_inner:
                return False
        return True

    def _orbit_pruned(self, v: int, tried: list[int], prefix: list[int]) -> bool:
        if not tried:
            return False
        generators = [
            a for a in self.automorphisms if all(a[p] == p for p in prefix)
        ]
        if not generators:
            return False
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in generators:
            for x in range(self.n):
                rx, ry = find(x), find(a[x])
                if rx != ry:
                    parent[rx] = ry
        rv = find(v)
        return any(find(u) == rv for u in tried)

    def _dfs(self, cells: list[list[int]], prefix: list[int], probe: bool) -> None:
        cells = self._refine(cells)
        target_index = next(
            (i for i, cell in enumerate(cells) if len(cell) > 1), None
        )
        while target_index is not None and self._interchangeable(cells[target_index]):
            # Any ordering of the cell yields the same matrix: fix it and
            # keep refining, since the new singletons may split later cells.
            cell = cells[target_index]
            cells = self._refine(
                cells[:target_index] + [[v] for v in cell] + cells[target_index + 1 :]
            )
            prefix = prefix + cell
            target_index = next(
                (i for i, c in enumerate(cells) if len(c) > 1), None
            )
        if target_index is None:
            self.leaves += 1
            if self.leaves > _LEAF_LIMIT:
                raise BudgetExceededError(
                    f"canonicalization exceeded {_LEAF_LIMIT} search leaves"
                )
            order = [cell[0] for cell in cells]
            cert = self._certificate(order)
            self.last_leaf = cert
            if self.best is None or cert < self.best:
                self.best = cert
                self.best_order = order
            elif cert == self.best:
                assert self.best_order is not None
                perm = [0] * self.n
                for pos in range(self.n):
                    perm[self.best_order[pos]] = order[pos]
                if perm != list(range(self.n)):
                    self.automorphisms.append(tuple(perm))
            return

        target = cells[target_index]
        if probe:
            v = target[0]
            self._dfs(self._split(cells, target_index, v), prefix + [v], probe=True)
            return

        tried: list[int] = []
        for position, v in enumerate(target):
            if self._orbit_pruned(v, tried, prefix):
                continue
            child = self._split(cells, target_index, v)
            if position == 0 or self.best is None:
                self._dfs(child, prefix + [v], probe=False)
            else:
                best_before = self.best
                self._dfs(child, prefix + [v], probe=True)
                if self.last_leaf != best_before:
                    # A probe leaf equal to the previous best implies an
                    # automorphism carrying this subtree onto an explored
                    # one; anything else (smaller or larger) means the
                    # subtree is new territory and must be explored fully.
                    self._dfs(child, prefix + [v], probe=False)
            tried.append(v)

    @staticmethod
    def _split(cells: list[list[int]], index: int, v: int) -> list[list[int]]:
        cell = cells[index]
        rest = [u for u in cell if u != v]
        return cells[:index] + [[v], rest] + cells[index + 1 :]


def canonical_form(graph: StableGraph, budget: int = DEFAULT_VERTEX_BUDGET) -> CanonicalForm:
    """Canonical key of a graph, equal exactly for isomorphic graphs.

    Raises :class:`BudgetExceededError` when the graph has more vertices
    than ``budget`` or the underlying search grows past its leaf limit.
    """
    n = graph.vertex_count
    if n > budget:
        raise BudgetExceededError(
            f"graph has {n} vertices, canonicalization budget is {budget}"
        )
    index_of = {v: i for i, (v, _) in enumerate(graph.vertices)}
    weights = [w for _, w in graph.vertices]
    loops = [0] * n
    adjacency: list[dict[int, int]] = [dict() for _ in range(n)]
    for a, b in graph.edges:
        ia, ib = index_of[a], index_of[b]
        if ia == ib:
            loops[ia] += 1
        else:
            adjacency[ia][ib] = adjacency[ia].get(ib, 0) + 1
            adjacency[ib][ia] = adjacency[ib].get(ia, 0) + 1
    certificate = _CanonicalSearch(n, weights, loops, adjacency).run()
    return CanonicalForm(
        vertex_count=n,
        edge_count=graph.edge_count,
        weight_multiset=tuple(sorted(weights)),
        certificate=certificate,
    )


def is_isomorphic(
    g1: StableGraph, g2: StableGraph, budget: int = DEFAULT_VERTEX_BUDGET
) -> bool:
    """Weight-preserving graph isomorphism, via canonical form equality."""
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    profile1 = sorted((w, g1.degree(v)) for v, w in g1.vertices)
    profile2 = sorted((w, g2.degree(v)) for v, w in g2.vertices)
    if profile1 != profile2:
        return False
    return canonical_form(g1, budget) == canonical_form(g2, budget)
