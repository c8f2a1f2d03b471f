import pytest

from brokensurf.errors import Disconnected, NonOrientable, OpenPath, SlotReused
from brokensurf.triangulation import (
    build_triangulation,
    check_loop,
    closed_paths,
    dual_freeway,
    dual_loops,
    sphere_fixture,
    torus_fixture,
    unfold_ball,
)


def test_torus_census(torus):
    assert torus.faces == 2
    assert torus.num_edges == 3
    assert torus.num_punctures == 1
    assert torus.genus == 1
    assert torus.euler_characteristic() == -1
    assert [len(c.sectors) for c in torus.corner_cycles] == [6]


def test_sphere_census(sphere):
    assert sphere.faces == 2
    assert sphere.num_edges == 3
    assert sphere.num_punctures == 3
    assert sphere.genus == 0
    assert sphere.euler_characteristic() == -1
    assert [len(c.sectors) for c in sphere.corner_cycles] == [2, 2, 2]


def test_corner_cycles_partition_sectors(torus, sphere):
    for T in (torus, sphere):
        seen = [sec for cyc in T.corner_cycles for sec in cyc.sectors]
        assert sorted(seen) == sorted(T.sectors)


def test_gluing_is_involution(torus, sphere):
    for T in (torus, sphere):
        for p in T.pairs:
            assert T.gluing[T.gluing[p]] == p
            assert T.other_side(p) == T.gluing[p]


def test_self_gluing_rejected():
    with pytest.raises(NonOrientable):
        build_triangulation(2, [((0, 0), (0, 0)), ((0, 1), (1, 1)),
                                ((0, 2), (1, 2)), ((1, 0), (0, 0))])


def test_reused_slot_rejected():
    with pytest.raises(SlotReused):
        build_triangulation(2, [((0, 0), (1, 0)), ((0, 0), (1, 1)),
                                ((0, 1), (1, 2)), ((0, 2), (1, 1))])


def test_disconnected_rejected():
    # two tori that never touch
    pairs = []
    for base in (0, 2):
        for k in range(3):
            pairs.append(((base, k), (base + 1, (k + 1) % 3)))
    with pytest.raises(Disconnected):
        build_triangulation(4, pairs)


def test_malformed_pairs_rejected():
    with pytest.raises(ValueError):
        build_triangulation(2, [((0, 0), (1, 3)), ((0, 1), (1, 2)),
                                ((0, 2), (1, 1)), ((1, 0), (0, 0))])
    with pytest.raises(ValueError):
        build_triangulation(2, [((0, 0), (2, 0)), ((0, 1), (1, 2)),
                                ((0, 2), (1, 1)), ((1, 0), (0, 0))])


def test_roundtrip_dict(torus, sphere):
    for T in (torus, sphere):
        d = T.to_dict()
        T2 = build_triangulation(d["faces"], [(tuple(p), tuple(q))
                                              for p, q in d["gluing"]])
        assert T2.to_dict() == d


def test_freeway_counts(torus, sphere):
    for T in (torus, sphere):
        fw = dual_freeway(T)
        assert len(fw.large_edges) == 3 * T.faces  # one per edge side
        assert len(fw.small_edges) == 3 * T.faces
        assert len(fw.trivalent) == 3 * T.faces
        assert len(fw.bivalent) == T.num_edges
        # every switch joins one large end and two smalls
        for large, smalls in fw.switches():
            assert large in fw.large_edges
            assert len(smalls) == 2


def test_puncture_loops_close(torus, sphere):
    for T in (torus, sphere):
        for loop in dual_loops(T, which="punctures"):
            assert check_loop(T, loop) == tuple(loop)


def test_basis_loops_close_and_count(torus, sphere):
    # dual graph has E - F + 1 independent cycles
    for T in (torus, sphere):
        basis = dual_loops(T, which="basis")
        assert len(basis) == T.num_edges - T.faces + 1
        for loop in basis:
            check_loop(T, loop)


def test_open_path_rejected(torus):
    with pytest.raises(OpenPath):
        check_loop(torus, [(0, 0), (0, 1)])
    with pytest.raises(OpenPath):
        check_loop(torus, [])


def test_closed_paths_short(torus):
    paths = closed_paths(torus, base=0, max_len=2)
    assert paths  # crossing any edge and coming straight back
    for p in paths:
        check_loop(torus, p)


def test_unfold_ball_counts(torus, sphere):
    for T in (torus, sphere):
        for depth in range(5):
            ball = unfold_ball(T, 0, depth)
            expected = 1 if depth == 0 else 3 * 2**depth - 2
            assert len(ball.nodes) == expected
            assert max(n.depth for n in ball.nodes) == depth


def test_unfold_ball_parents_consistent(torus):
    ball = unfold_ball(torus, 1, 3)
    for n in ball.nodes[1:]:
        parent = ball.nodes[n.parent]
        assert torus.gluing[n.crossed_from] == (n.face, n.entry_slot)
        assert n.crossed_from[0] == parent.face
        assert n.depth == parent.depth + 1
