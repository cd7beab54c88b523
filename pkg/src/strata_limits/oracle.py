"""Brute-force verification paths that avoid the index formulas.

``components_by_bfs`` counts orbits of right multiplication directly with
union-find over all group elements, with no subgroup-order division
anywhere, so it can cross-check the coset-counting route.  ``audit_graph``
re-derives the vertex and edge counts of a built limit graph this way and
re-checks the handshake, genus conservation, stability, and the exact
Euler characteristic balance of the parts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groups import GroupElement, GroupTable
from .limit_graphs import LabeledStratumGraph
from .multicurves import ARC, MulticurveSpec
from .orbifolds import (
    SurfaceKernelAction,
    euler_characteristic,
    evaluate_word,
    riemann_hurwitz_genus,
)

__all__ = ["components_by_bfs", "audit_graph", "AuditCheck", "AuditReport"]


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def component_count(self) -> int:
        return sum(1 for x in range(len(self.parent)) if self.find(x) == x)


def components_by_bfs(group: GroupTable, generators: Sequence[GroupElement]) -> int:
    """Number of orbits of right multiplication by the generated subgroup.

    Unions x with x*s for every element x and generator s, in deterministic
    order, then counts classes.
    """
    if not generators:
        raise ValueError("at least one generator is required")
    for g in generators:
        if g.group is not group:
            raise ValueError("generator belongs to a different group table")
    uf = _UnionFind(group.order)
    gen_indices = sorted({g.index for g in generators})
    for x in range(group.order):
        for s in gen_indices:
            uf.union(x, group.table[x][s])
    return uf.component_count()


@dataclass(frozen=True)
class AuditCheck:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: expected {self.expected}, got {self.actual}"


@dataclass(frozen=True)
class AuditReport:
    checks: tuple[AuditCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        return "\n".join(c.to_line() for c in self.checks) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "expected": str(c.expected),
                    "actual": str(c.actual),
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def audit_graph(
    action: SurfaceKernelAction,
    mc: MulticurveSpec,
    graph: LabeledStratumGraph,
) -> AuditReport:
    """Re-verify a built graph along independent paths."""
    group = action.group
    checks: list[AuditCheck] = []

    for piece in mc.pieces:
        expected = components_by_bfs(
            group, [evaluate_word(action, w) for w in piece.generators]
        )
        actual = sum(1 for (pid, _) in graph.vertices if pid == piece.id)
        checks.append(AuditCheck(f"vertices over piece {piece.id}", expected, actual))

    for curve in mc.curves:
        if curve.kind == ARC:
            gens = [
                evaluate_word(action, curve.gamma_a),
                evaluate_word(action, curve.gamma_b),
            ]
        else:
            gens = [evaluate_word(action, curve.gamma)]
        expected = components_by_bfs(group, gens)
        actual = sum(1 for (cid, _) in graph.edges if cid == curve.id)
        checks.append(AuditCheck(f"edges over curve {curve.id}", expected, actual))

    underlying = graph.underlying
    degree_sum = sum(underlying.degree(v) for v, _ in underlying.vertices)
    checks.append(AuditCheck("handshake (degree sum)", 2 * underlying.edge_count, degree_sum))

    checks.append(
        AuditCheck(
            "genus conservation",
            riemann_hurwitz_genus(action),
            underlying.genus(),
        )
    )

    # Exact Euler characteristic balance: each part contributes
    # 2 - 2*weight - degree, and the parts tile the covering surface.
    parts_chi = sum(
        Fraction(2 - 2 * underlying.weight(v) - underlying.degree(v))
        for v, _ in underlying.vertices
    )
    surface_chi = group.order * euler_characteristic(action.signature)
    checks.append(AuditCheck("Euler characteristic balance", surface_chi, parts_chi))

    checks.append(AuditCheck("stability", True, underlying.is_stable()))

    return AuditReport(tuple(checks))
