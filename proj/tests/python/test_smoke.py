"""Smoke tests for the python bindings."""

import json
import math

import pytest

hullgain = pytest.importorskip("hullgain")


def test_cross_orientation():
    assert hullgain.cross((0, 0), (1, 0), (0, 1)) == pytest.approx(1.0)
    assert hullgain.cross((0, 0), (0, 1), (1, 0)) == pytest.approx(-1.0)


def test_segments_intersect():
    assert hullgain.segments_intersect((0, 0), (2, 2), (0, 2), (2, 0))
    assert not hullgain.segments_intersect((0, 0), (1, 1), (2, 2), (3, 3))
    with pytest.raises(ValueError):
        hullgain.segments_intersect((0, 0), (0, 0), (1, 0), (2, 0))


def test_point_in_polygon():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert hullgain.point_in_polygon((0.5, 0.5), square)
    assert not hullgain.point_in_polygon((1.5, 0.5), square)


def test_delaunay_triangle():
    tri = hullgain.delaunay([(0, 0), (1, 0), (0.5, 1)])
    assert len(tri["triangles"]) == 1
    assert len(tri["exterior_edges"]) == 3


def test_concave_hull_peels_one_corner():
    pts = [(0, 0, "successful"), (1, 0, "successful"), (1, 1, "successful"),
           (0, 1, "successful"), (0.5, 0.5, "successful")]
    hull = hullgain.concave_hull(pts, 0.9)
    assert len(hull) == 5  # center joins the boundary after one peel


def test_check_intersection_rules():
    hull = [(0, 0, "occupied"), (4, 0, "successful"), (4, 4, "successful"), (0, 4, "occupied")]
    assert hullgain.check_intersection(hull, (2, 2), (6, 2))
    hull_blocked = [(x, y, "occupied") for x, y, _ in hull]
    assert not hullgain.check_intersection(hull_blocked, (2, 2), (6, 2))


def test_exploration_gains():
    branch = [(0, 0, 3.0), (1, 0, 2.0), (2, 0, 7.0)]
    values = hullgain.exploration_gain_nbvp(branch, lambda_=0.0)
    assert values == pytest.approx([3.0, 5.0, 12.0])
    tip = hullgain.exploration_gain_dsvp(branch, (1, 0), lambda1=0.0, lambda2=0.0)
    assert tip == pytest.approx(12.0)


def test_worlds():
    names = hullgain.builtin_world_names()
    assert "railing_pocket" in names and "corridors" in names
    world = hullgain.World.builtin("empty_room")
    assert world.reachable_free_count() > 0
    round_trip = hullgain.World.from_ascii(world.to_ascii())
    assert round_trip.to_ascii() == world.to_ascii()


def test_tiny_run_deterministic():
    kwargs = dict(world="empty_room", gain="graph", seed=7)
    first = hullgain.run_exploration(**kwargs)
    second = hullgain.run_exploration(**kwargs)
    assert first["coverage"] == pytest.approx(1.0)
    assert not first["incomplete"]
    assert first["summary_json"] == second["summary_json"]
    assert json.loads(first["summary_json"])["seed"] == 7


def test_unknown_gain_counts_unknown_cells():
    grid = "resolution=1\norigin=0 0\n" + "\n".join("?????" for _ in range(5)) + "\n"
    count = hullgain.unknown_gain(grid, (2.5, 2.5), 100.0)
    assert count == 25
