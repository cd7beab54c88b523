import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strata_limits.groups import closure, dihedral
from strata_limits.limit_graphs import build_stratum_graph
from strata_limits.oracle import audit_graph, components_by_bfs
from strata_limits.pyramids import (
    PyramidMulticurveParams,
    make_multicurve,
    pyramid_action,
)


def test_identity_generators_give_singleton_orbits():
    g = dihedral(7)
    assert components_by_bfs(g, [g.identity_element()]) == g.order


def test_reflection_generator_gives_n_orbits():
    for n in (3, 5, 10):
        g = dihedral(n)
        assert components_by_bfs(g, [g.by_name("r s")]) == n


@settings(max_examples=80)
@given(st.data())
def test_orbit_count_times_subgroup_order_is_group_order(data):
    n = data.draw(st.integers(min_value=1, max_value=20))
    g = dihedral(n)
    gens = data.draw(
        st.lists(st.integers(min_value=0, max_value=2 * n - 1), min_size=1, max_size=4)
    )
    elements = [g.element(i) for i in gens]
    assert components_by_bfs(g, elements) * closure(elements).order == g.order


def test_mismatched_group_rejected():
    g1, g2 = dihedral(3), dihedral(4)
    with pytest.raises(ValueError, match="different group"):
        components_by_bfs(g1, [g2.identity_element()])


def test_audit_report_passes_for_clean_build():
    fam = pyramid_action(5)
    mc = make_multicurve(fam, PyramidMulticurveParams("one-arc", "direct"))
    graph = build_stratum_graph(fam.action, mc)
    report = audit_graph(fam.action, mc, graph)
    assert report.ok
    names = [c.name for c in report.checks]
    assert "genus conservation" in names
    assert "handshake (degree sum)" in names
    assert any("vertices over piece" in n for n in names)
    text = report.to_text()
    assert "[PASS] genus conservation: expected 5, got 5" in text
    assert "FAIL" not in text


def test_audit_counts_for_one_closed_family():
    fam = pyramid_action(6)
    # Image of index 2m = 4 yields n/m + 1 = 4 vertices and n = 6 edges.
    mc = make_multicurve(fam, PyramidMulticurveParams("one-closed", "right", 1))
    graph = build_stratum_graph(fam.action, mc)
    assert graph.vertex_count == 4
    assert graph.edge_count == 6
    report = audit_graph(fam.action, mc, graph)
    assert report.ok


def test_audit_json_shape():
    fam = pyramid_action(4)
    mc = make_multicurve(fam, PyramidMulticurveParams("one-arc", "twisted"))
    graph = build_stratum_graph(fam.action, mc)
    payload = audit_graph(fam.action, mc, graph).to_json_dict()
    assert payload["ok"] is True
    assert all(set(c) == {"name", "expected", "actual", "pass"} for c in payload["checks"])


def test_audit_passes_for_every_generated_spec():
    for n in (3, 7, 12):
        fam = pyramid_action(n)
        from strata_limits.pyramids import enumerate_parameters

        for params, _ in enumerate_parameters(n):
            mc = make_multicurve(fam, params)
            graph = build_stratum_graph(fam.action, mc)
            assert audit_graph(fam.action, mc, graph).ok, params.label()


def test_random_table_groups_orbit_identity():
    # Random permutation-generated groups of order <= 48, exercised through
    # a plain multiplication table.
    from strata_limits.groups import GroupTable

    rng = random.Random(20240817)
    built = 0
    while built < 8:
        degree = rng.randrange(3, 6)
        perms = []
        for _ in range(2):
            p = list(range(degree))
            rng.shuffle(p)
            perms.append(tuple(p))
        identity = tuple(range(degree))
        elements = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for p in perms:
                    y = tuple(x[p[i]] for i in range(degree))
                    if y not in elements:
                        elements.add(y)
                        nxt.append(y)
            frontier = nxt
        if not 2 <= len(elements) <= 48:
            continue
        ordered = sorted(elements)
        index = {p: i for i, p in enumerate(ordered)}
        table = [
            [index[tuple(a[b[i]] for i in range(degree))] for b in ordered]
            for a in ordered
        ]
        group = GroupTable(table)
        built += 1
        for _ in range(5):
            gens = [
                group.element(rng.randrange(group.order))
                for _ in range(rng.randrange(1, 3))
            ]
            assert components_by_bfs(group, gens) * closure(gens).order == group.order
