"""Exact arithmetic in small finite groups.

A group is stored as a dense ``order x order`` multiplication table of
element indices, together with display names.  All group axioms are checked
at construction time, so downstream code never has to re-verify them.  The
groups this package deals with have order at most a few hundred, which makes
the dense representation both the simplest and the fastest option.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "GroupTable",
    "GroupElement",
    "Subgroup",
    "CosetPartition",
    "dihedral",
    "closure",
    "left_cosets",
]

# A full associativity scan is cubic in the order; above this cutoff we
# spot-check random triples with a fixed seed instead.
_FULL_ASSOCIATIVITY_MAX_ORDER = 64
_SPOT_CHECK_TRIPLES = 10_000
_SPOT_CHECK_SEED = 1729


class GroupTable:
    """A finite group given by its multiplication table.

    Elements are the indices ``0 .. order-1``; ``table[a][b]`` is the index
    of the product ``a * b``.  Instances are immutable after construction and
    safe to share between threads.
    """

    __slots__ = ("order", "table", "names", "identity", "inverse", "_index_of_name")

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        order = len(rows)
        if order == 0:
            raise ValueError("multiplication table is empty")
        all_indices = frozenset(range(order))
        for i, row in enumerate(rows):
            if len(row) != order:
                raise ValueError(f"multiplication table is not square (row {i})")
            if set(row) != all_indices:
                raise ValueError(f"row {i} is not a permutation of the element indices")
        for j in range(order):
            if {rows[i][j] for i in range(order)} != all_indices:
                raise ValueError(f"column {j} is not a permutation of the element indices")

        identity = None
        for e in range(order):
            if all(rows[e][x] == x and rows[x][e] == x for x in range(order)):
                identity = e
                break
        if identity is None:
            raise ValueError("table has no identity element")

        inverse = [0] * order
        for a in range(order):
            b = rows[a].index(identity)
            if rows[b][a] != identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inverse[a] = b

        self._check_associativity(rows, order)

        if names is None:
            names = tuple(f"g{i}" for i in range(order))
        else:
            names = tuple(str(s) for s in names)
            if len(names) != order:
                raise ValueError("one name per element is required")
            if len(set(names)) != order:
                raise ValueError("element names must be distinct")

        self.order = order
        self.table = rows
        self.names = names
        self.identity = identity
        self.inverse = tuple(inverse)
        self._index_of_name = {name: i for i, name in enumerate(names)}

    @staticmethod
    def _check_associativity(rows, order: int) -> None:
        if order <= _FULL_ASSOCIATIVITY_MAX_ORDER:
            rng = range(order)
            for a in rng:
                row_a = rows[a]
                for b in rng:
                    ab = row_a[b]
                    row_ab = rows[ab]
                    row_b = rows[b]
                    for c in rng:
                        if row_ab[c] != row_a[row_b[c]]:
                            raise ValueError(
                                f"table is not associative at ({a}, {b}, {c})"
                            )
        else:
            rng = random.Random(_SPOT_CHECK_SEED)
            for _ in range(_SPOT_CHECK_TRIPLES):
                a = rng.randrange(order)
                b = rng.randrange(order)
                c = rng.randrange(order)
                if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                    raise ValueError(f"table is not associative at ({a}, {b}, {c})")

    def product(self, a: int, b: int) -> int:
        """Index of the product of two element indices."""
        return self.table[a][b]

    def inverse_of(self, a: int) -> int:
        return self.inverse[a]

    def element(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise ValueError(f"element index {index} out of range")
        return GroupElement(self, index)

    def identity_element(self) -> "GroupElement":
        return GroupElement(self, self.identity)

    def elements(self) -> Iterator["GroupElement"]:
        return (GroupElement(self, i) for i in range(self.order))

    def by_name(self, name: str) -> "GroupElement":
        try:
            return GroupElement(self, self._index_of_name[name])
        except KeyError:
            raise ValueError(f"unknown element name {name!r}") from None

    def name_of(self, index: int) -> str:
        return self.names[index]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order})"


@dataclass(frozen=True)
class GroupElement:
    """An element of a :class:`GroupTable`, identified by its index."""

    group: GroupTable
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise ValueError(f"element index {self.index} out of range")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        _require_same_group(self, other)
        return GroupElement(self.group, self.group.table[self.index][other.index])

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inverse[self.index])

    def order(self) -> int:
        """Smallest t >= 1 with self**t equal to the identity."""
        identity = self.group.identity
        x = self.index
        t = 1
        while x != identity:
            x = self.group.table[x][self.index]
            t += 1
        return t

    @property
    def name(self) -> str:
        return self.group.names[self.index]

    def __repr__(self) -> str:
        return f"GroupElement({self.name!r})"


def _require_same_group(*elements: GroupElement) -> GroupTable:
    group = elements[0].group
    for e in elements[1:]:
        if e.group is not group:
            raise ValueError("elements belong to different group tables")
    return group


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as the sorted tuple of its element indices.

    Construction verifies closure under product and inverse, membership of
    the identity, and Lagrange divisibility.
    """

    group: GroupTable
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", elems)
        member = set(elems)
        if self.group.identity not in member:
            raise ValueError("subgroup does not contain the identity")
        table = self.group.table
        for a in elems:
            if self.group.inverse[a] not in member:
                raise ValueError(f"subgroup is not closed under inverses (element {a})")
            for b in elems:
                if table[a][b] not in member:
                    raise ValueError(f"subgroup is not closed under products ({a}, {b})")
        if self.group.order % len(elems) != 0:
            raise ValueError("subgroup order does not divide the group order")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        index = x.index if isinstance(x, GroupElement) else int(x)
        return index in set(self.elements)

    def element_names(self) -> tuple[str, ...]:
        return tuple(self.group.names[i] for i in self.elements)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={{{', '.join(self.element_names())}}})"


def closure(generators: Sequence[GroupElement]) -> Subgroup:
    """Smallest subgroup containing the given elements.

    Breadth-first saturation under right multiplication by the generators;
    in a finite group this already yields closure under inverses.
    """
    if not generators:
        raise ValueError("closure requires at least one generator")
    group = _require_same_group(*generators)
    gen_indices = sorted({g.index for g in generators})
    table = group.table
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s in gen_indices:
                y = table[x][s]
                if y not in seen:
                    seen.add(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return Subgroup(group, tuple(sorted(seen)))


@dataclass(frozen=True)
class CosetPartition:
    """The partition of a group into left cosets g*H of a subgroup H.

    The canonical representative of a coset is its minimal element index,
    which makes labels reproducible across runs.
    """

    subgroup: Subgroup
    representatives: tuple[int, ...]
    _rep_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.representatives)

    def representative_of(self, x) -> int:
        index = x.index if isinstance(x, GroupElement) else int(x)
        return self._rep_of[index]

    def members(self, representative: int) -> tuple[int, ...]:
        if self._rep_of[representative] != representative:
            raise ValueError(f"{representative} is not a coset representative")
        return tuple(
            i for i in range(len(self._rep_of)) if self._rep_of[i] == representative
        )


def left_cosets(subgroup: Subgroup) -> CosetPartition:
    """Partition the whole group into left cosets of ``subgroup``."""
    group = subgroup.group
    table = group.table
    rep_of = [-1] * group.order
    representatives = []
    for g in range(group.order):
        if rep_of[g] != -1:
            continue
        # g is minimal in its coset: smaller members would already be assigned.
        representatives.append(g)
        for h in subgroup.elements:
            rep_of[table[g][h]] = g
    return CosetPartition(subgroup, tuple(representatives), tuple(rep_of))


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n.

    Indices 0..n-1 are the rotations r^0..r^(n-1), indices n..2n-1 are the
    reflections r^k*s.  Index n is s itself; n=1 gives the two-element group
    generated by a single reflection.
    """
    if n < 1:
        raise ValueError("dihedral group requires n >= 1")
    order = 2 * n

    def mul(a: int, b: int) -> int:
        ra, fa = (a % n, a // n)
        rb, fb = (b % n, b // n)
        rot = (ra - rb) % n if fa else (ra + rb) % n
        return rot + n * (fa ^ fb)

    table = [[mul(a, b) for b in range(order)] for a in range(order)]

    def rot_name(k: int) -> str:
        if k == 0:
            return "e"
        if k == 1:
            return "r"
        return f"r^{k}"

    names = [rot_name(k) for k in range(n)]
    names += ["s" if k == 0 else f"{rot_name(k)} s" for k in range(n)]
    return GroupTable(table, names)
