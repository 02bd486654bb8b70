"""Boundary operators: spec'd instances, mirror variants, oracle equivalence."""

import pytest
from hypothesis import given, settings, strategies as st

from boundarykit import (BoundaryReport, BoxSpec, GraphPair, InputError,
                         build_box, build_box_pair, component_of, full_report,
                         inner_boundary_variants, outer_boundary,
                         outer_visible_boundary, random_connected_graph,
                         report_to_json, visible_boundary, with_apex)

from oracles import (boundary_by_scan, outer_visible_by_paths, visible_by_scan)


def labels_of(g, s):
    return {g.labels[v] for v in s}


def ids_of(g, coords):
    return frozenset(g.id_of_label(c) for c in coords)


# --- outer boundary -----------------------------------------------------------

def test_outer_boundary_center_vertex():
    plain = build_box(BoxSpec(2, 5, "plain"))
    star = build_box(BoxSpec(2, 5, "star"))
    c = ids_of(plain, [(3, 3)])
    assert labels_of(plain, outer_boundary(plain, c)) == {
        (2, 3), (4, 3), (3, 2), (3, 4)}
    assert labels_of(star, outer_boundary(star, c)) == {
        (a, b) for a in (2, 3, 4) for b in (2, 3, 4)} - {(3, 3)}


def test_outer_boundary_of_everything_is_empty():
    g = build_box(BoxSpec(2, 5, "plain"))
    assert outer_boundary(g, frozenset(range(g.vertex_count))) == frozenset()
    assert outer_boundary(g, frozenset()) == frozenset()


# --- visible boundary ------------------------------------------------------------

def test_visible_boundary_from_apex_sees_all_of_a_singleton():
    pair = build_box_pair(BoxSpec(2, 5, "plain"), "plus")
    apexed = with_apex(pair)
    g = apexed.pair.g
    c = ids_of(g, [(3, 3)])
    vis = visible_boundary(g, g, c, apexed.apex)
    assert labels_of(g, vis) == {(2, 3), (4, 3), (3, 2), (3, 4)}


def ring_around_center(g):
    """The 8-vertex square ring around (4,4) in a 7x7 box."""
    return ids_of(g, [(a, b) for a in (3, 4, 5) for b in (3, 4, 5)
                      if (a, b) != (4, 4)])


def test_visible_boundary_of_a_ring_excludes_the_enclosed_side():
    pair = build_box_pair(BoxSpec(2, 7, "plain"), "plus")
    apexed = with_apex(pair)
    g = apexed.pair.g
    c = ring_around_center(g)
    vis = visible_boundary(g, g, c, apexed.apex)
    want = {(a, 2) for a in (3, 4, 5)} | {(a, 6) for a in (3, 4, 5)} | \
           {(2, b) for b in (3, 4, 5)} | {(6, b) for b in (3, 4, 5)}
    assert labels_of(g, vis) == want          # 12 outside neighbors
    assert len(vis) == 12
    # (4,4) is boundary but enclosed, hence invisible from outside
    assert g.id_of_label((4, 4)) in outer_boundary(g, c) - vis


def test_visible_boundary_from_the_enclosed_center_is_the_center_itself():
    """The observer is the only vertex of its component; it is adjacent to
    the ring, so the visible set is exactly the observer."""
    g = build_box(BoxSpec(2, 7, "plain"))
    c = ring_around_center(g)
    center = g.id_of_label((4, 4))
    vis = visible_boundary(g, g, c, center)
    assert vis == frozenset({center})
    assert component_of(g, center, c) == frozenset({center})


def test_visible_boundary_rejects_observers_inside():
    g = build_box(BoxSpec(2, 5, "plain"))
    c = ids_of(g, [(3, 3)])
    with pytest.raises(InputError, match="outside"):
        visible_boundary(g, g, c, g.id_of_label((3, 3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=4, max_value=12), st.integers(min_value=1, max_value=8),
       st.integers(min_value=0, max_value=5000), st.data())
def test_visibility_constant_across_observer_component(nv, extra, seed, data):
    g = random_connected_graph(nv, extra, seed)
    c = frozenset(data.draw(st.sets(
        st.integers(min_value=0, max_value=nv - 1), max_size=nv - 2)))
    outside = sorted(set(range(nv)) - c)
    if not outside:
        return
    x = data.draw(st.sampled_from(outside))
    comp = component_of(g, x, c)
    base = visible_boundary(g, g, c, x)
    for x2 in sorted(comp):
        assert visible_boundary(g, g, c, x2) == base


# --- outer-visible boundary ----------------------------------------------------------

def test_outer_visible_singleton_all_qualify():
    pair = build_box_pair(BoxSpec(2, 5, "plain"), "plus")
    apexed = with_apex(pair)
    g = apexed.pair.g
    c = ids_of(g, [(3, 3)])
    ov = outer_visible_boundary(g, g, c, apexed.apex)
    assert labels_of(g, ov) == {(2, 3), (4, 3), (3, 2), (3, 4)}


def test_outer_visible_domino_equals_visible():
    pair = build_box_pair(BoxSpec(2, 7, "plain"), "plus")
    apexed = with_apex(pair)
    g = apexed.pair.g
    c = ids_of(g, [(3, 3), (3, 4)])
    vis = visible_boundary(g, g, c, apexed.apex)
    ov = outer_visible_boundary(g, g, c, apexed.apex)
    assert len(vis) == 6 and ov == vis


def test_outer_visible_proof_shape_on_a_ring():
    """Component-of-the-complement shape: take the visible boundary S of the
    ring, let C' be the outer component of the box minus S, and observe C'
    from the enclosed center: every boundary vertex of C' is outer-visible."""
    g = build_box(BoxSpec(2, 7, "plain"))
    ring = ring_around_center(g)
    corner = g.id_of_label((1, 1))
    s_tilde = visible_boundary(g, g, ring, corner)
    assert len(s_tilde) == 12
    c_prime = component_of(g, corner, s_tilde)
    assert len(c_prime) == 49 - 12 - 9
    y = g.id_of_label((4, 4))
    assert outer_boundary(g, c_prime) == s_tilde
    assert outer_visible_boundary(g, g, c_prime, y) == s_tilde


def test_outer_visible_can_be_strictly_smaller():
    """A dead-end corridor: the far corridor vertex is visible but every
    path to it runs through a nearer visible vertex, so it is not
    outer-visible."""
    g = build_box(BoxSpec(2, 5, "plain"))
    # walls enclosing the one-wide corridor (3,1)-(3,2)-(3,3)
    c = ids_of(g, [(2, 1), (2, 2), (2, 3), (2, 4), (3, 4),
                   (4, 4), (4, 3), (4, 2), (4, 1)])
    x = g.id_of_label((3, 1))
    vis = visible_boundary(g, g, c, x)
    ov = outer_visible_boundary(g, g, c, x)
    assert labels_of(g, vis) == {(3, 1), (3, 2), (3, 3)}   # all wall-adjacent
    assert labels_of(g, ov) == {(3, 1), (3, 2)}            # (3,3) is blocked
    assert x in ov
    assert ov < vis


# --- inner variants --------------------------------------------------------------------

def test_inner_boundary_of_centered_block():
    g5 = build_box(BoxSpec(2, 5, "plain"))
    star5 = build_box(BoxSpec(2, 5, "star"))
    block = ids_of(g5, [(a, b) for a in (2, 3, 4) for b in (2, 3, 4)])
    apexed = with_apex(build_box_pair(BoxSpec(2, 5, "plain"), "star"))
    ga, sa = apexed.pair.g, apexed.pair.g_plus
    rep = inner_boundary_variants(ga, ga, block, apexed.apex)
    want = labels_of(g5, block) - {(3, 3)}
    assert labels_of(ga, rep.boundary) == want            # 8 ring vertices
    rep_star = inner_boundary_variants(ga, sa, block, apexed.apex)
    assert labels_of(ga, rep_star.boundary) == want       # same 8 with star


def test_inner_boundary_of_singleton_is_itself():
    g = build_box(BoxSpec(2, 5, "plain"))
    c = ids_of(g, [(3, 3)])
    rep = inner_boundary_variants(g, g, c, g.id_of_label((1, 1)))
    assert rep.boundary == c == rep.visible == rep.outer_visible


def test_inner_variants_mirror_definitions_directly():
    g = build_box(BoxSpec(2, 4, "plain"))
    star = build_box(BoxSpec(2, 4, "star"))
    c = ids_of(g, [(2, 2), (2, 3), (3, 2)])
    x = g.id_of_label((4, 4))
    rep = inner_boundary_variants(g, star, c, x)
    region = component_of(g, x, c)
    want_inner = {v for v in c if any(w not in c for w in star.adjacency[v])}
    want_vis = {v for v in want_inner
                if any(w in region for w in star.adjacency[v])}
    assert rep.boundary == frozenset(want_inner)
    assert rep.visible == frozenset(want_vis)


# --- full reports ------------------------------------------------------------------------

def test_full_report_negative_control_center_vertex():
    g = build_box(BoxSpec(2, 5, "plain"))
    c = ids_of(g, [(3, 3)])
    x = g.id_of_label((1, 1))
    rep = full_report(g, g, g, c, x)      # probe = plain: no diagonals to help
    assert rep.component_count == 4
    assert not rep.connected
    assert rep.witness_disconnect is not None
    u, v = rep.witness_disconnect
    assert u in rep.visible and v in rep.visible
    comp_u = component_of(g, u, frozenset(range(g.vertex_count)) - rep.visible)
    assert v not in comp_u


def test_full_report_positive_with_plus_probe():
    plus = build_box(BoxSpec(2, 5, "plus"))
    g = build_box(BoxSpec(2, 5, "plain"))
    c = ids_of(g, [(3, 3)])
    rep = full_report(g, g, plus, c, g.id_of_label((1, 1)))
    assert rep.connected and rep.component_count == 1
    assert rep.witness_disconnect is None


def test_report_nesting_is_validated():
    with pytest.raises(InputError, match="nest"):
        BoundaryReport(frozenset({1}), frozenset({1, 2}), frozenset(), 1, None)
    with pytest.raises(InputError, match="at least 1"):
        BoundaryReport(frozenset(), frozenset(), frozenset(), 0, None)


def test_report_json_shapes():
    g = build_box(BoxSpec(2, 5, "plain"))
    c = ids_of(g, [(3, 3)])
    rep = full_report(g, g, g, c, g.id_of_label((1, 1)))
    data = report_to_json(rep, g)
    assert data["components"] == 4
    assert data["boundary"] == [[2, 3], [3, 2], [3, 4], [4, 3]]
    assert isinstance(data["witness"], list) and len(data["witness"]) == 2

    from boundarykit import Graph
    bare = Graph(3, [(0, 1), (1, 2)])
    rep2 = full_report(bare, bare, bare, frozenset({1}), 0)
    data2 = report_to_json(rep2, bare)
    assert data2["boundary"] == [0, 2]
    assert data2["visible"] == [0]            # 2 is walled off behind c
    assert data2["components"] == 1 and "witness" not in data2

    # unlabeled witness pair: visible {1,3} probed in an edgeless graph
    square = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    rep3 = full_report(square, square, Graph(4, []), frozenset({0}), 2)
    data3 = report_to_json(rep3, square)
    assert data3["visible"] == [1, 3]
    assert data3["components"] == 2 and data3["witness"] == [1, 3]


def test_graph_size_mismatch_is_rejected():
    g = build_box(BoxSpec(2, 5, "plain"))
    h = build_box(BoxSpec(2, 4, "plain"))
    with pytest.raises(InputError, match="share"):
        full_report(g, h, g, frozenset({0}), 1)


# --- definition-level oracle equivalence ----------------------------------------------

def oracle_corpus():
    """Labeled and unlabeled graphs of ≤ 20 vertices for oracle comparison."""
    out = [
        build_box(BoxSpec(2, 2, "plain")),
        build_box(BoxSpec(2, 2, "star")),
        build_box(BoxSpec(2, 3, "plain")),
        build_box(BoxSpec(2, 3, "star")),
        build_box(BoxSpec(2, 3, "plus")),
        build_box(BoxSpec(2, 4, "plain")),
        build_box(BoxSpec(3, 2, "plain")),
        build_box(BoxSpec(3, 2, "star")),
        attach_apex_pairless(build_box(BoxSpec(2, 3, "plain"))),
    ]
    for seed in range(6):
        out.append(random_connected_graph(5 + 2 * seed, 4 + seed, seed))
    return [g for g in out if g.vertex_count <= 20]


def attach_apex_pairless(g):
    from boundarykit import attach_apex
    return attach_apex(g)


@pytest.mark.parametrize("g", oracle_corpus(),
                         ids=lambda g: f"V{g.vertex_count}E{g.edge_count}")
def test_boundary_operators_match_path_oracles(g):
    import random as _random
    rng = _random.Random(g.fingerprint() & 0xFFFF)
    instances = []
    for _ in range(12):
        size = rng.randint(1, max(1, g.vertex_count // 3))
        members = rng.sample(range(g.vertex_count), size)
        c = frozenset(members)
        outside = [v for v in range(g.vertex_count) if v not in c]
        if not outside:
            continue
        instances.append((c, rng.choice(outside)))
    for c, x in instances:
        bd = outer_boundary(g, c)
        assert bd == frozenset(boundary_by_scan(g.vertex_count, g.edges, c))
        vis = visible_boundary(g, g, c, x)
        assert vis == frozenset(visible_by_scan(
            g.vertex_count, g.edges, g.edges, c, x))
        ov = outer_visible_boundary(g, g, c, x)
        assert ov == frozenset(outer_visible_by_paths(
            g.vertex_count, g.edges, c, x, vis))


@pytest.mark.parametrize("flavors", [("plain", "star"), ("plain", "plus")])
def test_boundary_operators_match_oracles_on_mixed_pairs(flavors):
    base, aug = flavors
    g = build_box(BoxSpec(2, 4, base))
    gp = build_box(BoxSpec(2, 4, aug))
    import random as _random
    rng = _random.Random(17)
    for _ in range(15):
        size = rng.randint(1, 5)
        c = frozenset(rng.sample(range(16), size))
        outside = [v for v in range(16) if v not in c]
        x = rng.choice(outside)
        assert outer_boundary(gp, c) == frozenset(
            boundary_by_scan(16, gp.edges, c))
        vis = visible_boundary(g, gp, c, x)
        assert vis == frozenset(visible_by_scan(16, g.edges, gp.edges, c, x))
        ov = outer_visible_boundary(g, gp, c, x)
        assert ov == frozenset(outer_visible_by_paths(16, g.edges, c, x, vis))
