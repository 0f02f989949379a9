"""Piecewise-smooth domains: charts, specs, tangent cycles, local checks."""

import copy
import json

import numpy as np
import pytest

from hardycorners.cli import load_spec
from hardycorners.domain import (
    GraphPatchChart,
    SpherePolarChart,
    TorusChart,
    TransformedChart,
    canonical_spec,
    check_local_intersection,
    check_strict_convexity,
    domain_from_spec,
    strong_tangents,
    transform_domain,
    validate_domain,
    weak_tangent,
)
from hardycorners.hermpoly import parse_poly
from hardycorners.projective import dual_map, proj_equal

from conftest import random_unit_det_map


def _chart_points_on_locus(d, chart, rho_indices, params_list, tol=1e-10):
    for params in params_list:
        z = chart.point(*params)
        for i in rho_indices:
            assert abs(d.rho(i)(z[0], z[1])) < tol


def _tangents_match_differences(chart, params, tol=1e-5):
    params = np.asarray(params, dtype=float)
    tangents = chart.tangents(*params)
    h = 1e-6
    for i, v in enumerate(tangents):
        dp = np.zeros_like(params)
        dp[i] = h
        fd = (
            np.asarray(chart.point(*(params + dp)))
            - np.asarray(chart.point(*(params - dp)))
        ) / (2 * h)
        assert np.allclose(v, fd, atol=tol)


# ---------------------------------------------------------------------------
# Spec loading


def test_bidisk_spec_structure(bidisk):
    assert [bidisk.label(i) for i in range(2)] == ["disk1", "disk2"]
    assert len(bidisk.faces) == 2
    assert len(bidisk.edges) == 1
    assert bidisk.membership == "intersection"
    assert bidisk.contains(np.array([0.0, 0.0]))
    assert not bidisk.contains(np.array([1.2, 0.0]))


def test_sphere_spec_structure(sphere):
    assert len(sphere.faces) == 1
    assert len(sphere.edges) == 0
    assert sphere.contains(np.array([0.3, 0.2j]))


def test_domain_from_spec_rejects_unknown_member():
    spec = copy.deepcopy(load_spec("bidisk"))
    spec["edges"][0]["members"] = ["disk1", "nope"]
    with pytest.raises((KeyError, ValueError)):
        domain_from_spec(spec)


def test_canonical_spec_is_key_order_independent():
    spec = load_spec("bidisk")
    shuffled = json.loads(json.dumps(spec))
    reordered = {k: shuffled[k] for k in reversed(list(shuffled))}
    assert canonical_spec(spec) == canonical_spec(reordered)
    assert ": " not in canonical_spec(spec)


def test_active_members_and_edge_at(bidisk):
    corner = np.array([np.exp(0.3j), np.exp(-0.9j)])
    assert bidisk.active_members(corner) == [0, 1]
    assert bidisk.edge_at(corner) is bidisk.edges[0]
    face_point = np.array([np.exp(0.3j), 0.2 + 0.1j])
    assert bidisk.active_members(face_point) == [0]


# ---------------------------------------------------------------------------
# Charts


def test_torus_chart_on_locus(bidisk):
    chart = bidisk.edges[0].chart
    assert isinstance(chart, TorusChart)
    params_list = [(0.3, 1.2), (4.0, 5.5), (0.0, 0.0)]
    _chart_points_on_locus(bidisk, chart, [0, 1], params_list, tol=1e-12)
    _tangents_match_differences(chart, (0.7, 2.1))


def test_torus_chart_solves_coupled_sheets(perturbed_bidisk):
    chart = perturbed_bidisk.edges[0].chart
    params_list = [(0.5, 2.5), (3.0, 0.1)]
    _chart_points_on_locus(perturbed_bidisk, chart, [0, 1], params_list, tol=1e-12)
    _tangents_match_differences(chart, (0.5, 2.5))


def test_sphere_polar_chart(sphere):
    chart = sphere.faces[0].chart
    assert isinstance(chart, SpherePolarChart)
    params_list = [(0.4, 1.0, 2.0), (1.2, 0.0, 5.0)]
    _chart_points_on_locus(sphere, chart, [0], params_list, tol=1e-12)
    _tangents_match_differences(chart, (0.4, 1.0, 2.0))


def test_graph_patch_chart(bidisk):
    chart = bidisk.faces[0].chart
    assert isinstance(chart, GraphPatchChart)
    params_list = [(0.5, 1.0, 2.0), (0.9, 4.0, 0.3)]
    _chart_points_on_locus(bidisk, chart, [0], params_list, tol=1e-12)
    _tangents_match_differences(chart, (0.5, 1.0, 2.0))
    # the graph coordinate stays inside the transverse disk
    z = chart.point(0.5, 1.0, 2.0)
    assert abs(z[0]) > 0.99 and abs(z[1]) <= 1.0


def test_quad_nodes_cover_resolution(bidisk):
    chart = bidisk.edges[0].chart
    nodes = list(chart.quad_nodes(8))
    assert len(nodes) == 64
    total = sum(w for _, w in nodes)
    assert np.isclose(total, (2 * np.pi) ** 2)


def test_transformed_chart_tracks_base(bidisk, rng):
    t = random_unit_det_map(rng, scale=0.1)
    base = bidisk.edges[0].chart
    moved = TransformedChart(base, t)
    params = (0.7, 2.1)
    assert np.allclose(
        moved.point(*params), t.affine(base.point(*params)), atol=1e-12
    )
    _tangents_match_differences(moved, params)
    assert list(moved.quad_nodes(6)) == list(base.quad_nodes(6))


# ---------------------------------------------------------------------------
# Weak tangent cycle


def test_strong_tangents_at_corner(bidisk):
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    strong = strong_tangents(bidisk, bidisk.edges[0], zhat)
    assert len(strong) == 2
    z = np.array([1.0, zhat[0], zhat[1]])
    for w in strong.planes:
        assert abs(np.dot(w.array, z)) < 1e-12


def test_strong_tangents_rejects_off_edge_point(bidisk):
    zhat = np.array([np.exp(0.4j), 0.5])
    with pytest.raises(ValueError):
        strong_tangents(bidisk, bidisk.edges[0], zhat)


def test_weak_tangent_interpolates_strong(bidisk):
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    e = bidisk.edges[0]
    strong = strong_tangents(bidisk, e, zhat)
    assert proj_equal(
        weak_tangent(bidisk, e, zhat, (1.0, 0.0)).array, strong[0].array
    )
    assert proj_equal(
        weak_tangent(bidisk, e, zhat, (0.0, 1.0)).array, strong[1].array
    )
    z = np.array([1.0, zhat[0], zhat[1]])
    for t1 in (0.25, 0.5, 0.9):
        w = weak_tangent(bidisk, e, zhat, (t1, 1.0 - t1))
        assert abs(np.dot(w.array, z)) < 1e-12


def test_weak_tangent_validates_barycentric(bidisk):
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    e = bidisk.edges[0]
    with pytest.raises(ValueError):
        weak_tangent(bidisk, e, zhat, (0.7, 0.7))
    with pytest.raises(ValueError):
        weak_tangent(bidisk, e, zhat, (-0.2, 1.2))
    with pytest.raises(ValueError):
        weak_tangent(bidisk, e, zhat, (1.0,))


# ---------------------------------------------------------------------------
# Local intersection-model check


def test_local_intersection_holds_on_bidisk(bidisk):
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    out = check_local_intersection(bidisk, zhat, radius=0.05, samples=200)
    assert out["passed"]
    assert out["disagreements"] == 0
    assert out["members"] == ["disk1", "disk2"]


def test_local_intersection_fails_on_union_wedge(wedge_union):
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    out = check_local_intersection(wedge_union, zhat, radius=0.05, samples=200)
    assert not out["passed"]
    assert out["disagreements"] > 0


def test_local_intersection_rejects_oversized_radius(bidisk):
    # at a face point the other disk is a non-member; a huge ball reaches it
    zhat = np.array([np.exp(0.4j), 0.0])
    with pytest.raises(ValueError, match="disk2"):
        check_local_intersection(bidisk, zhat, radius=1.5, samples=100)


def test_local_intersection_requires_boundary_point(bidisk):
    with pytest.raises(ValueError):
        check_local_intersection(
            bidisk, np.array([0.0, 0.0]), radius=0.05, samples=10
        )


# ---------------------------------------------------------------------------
# Strict convexity margins


def test_bidisk_edge_is_not_strictly_convex(bidisk):
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    out = check_strict_convexity(bidisk, zhat, t_grid=5, ambient_grid=8)
    assert not out["strict"]
    assert abs(out["min_margin"]) < 1e-12


def test_perturbed_edge_is_strictly_convex(perturbed_bidisk):
    chart = perturbed_bidisk.edges[0].chart
    zhat = np.array(chart.point(0.4, 1.1))
    out = check_strict_convexity(
        perturbed_bidisk, zhat, t_grid=5, ambient_grid=8, local_radius=0.1
    )
    assert out["strict"]
    assert out["min_margin"] > 0


# ---------------------------------------------------------------------------
# Validation


def test_validate_domain_passes_fixtures(bidisk, perturbed_bidisk, sphere):
    for d in (bidisk, perturbed_bidisk, sphere):
        out = validate_domain(d, resolution=6)
        assert out["passed"], out["failures"]


def test_validate_domain_flags_exterior_interior_point():
    spec = copy.deepcopy(load_spec("sphere"))
    spec["interior_points"] = [[2.0, 0.0, 0.0, 0.0]]
    d = domain_from_spec(spec)
    out = validate_domain(d, resolution=6)
    assert not out["passed"]
    assert any("sphere" in f for f in out["failures"])


def test_validate_domain_flags_wrong_side_orientation():
    spec = copy.deepcopy(load_spec("sphere"))
    spec["hypersurfaces"][0]["rho"] = "1 - abs2(z1) - abs2(z2)"
    d = domain_from_spec(spec)
    out = validate_domain(d, resolution=6)
    assert not out["passed"]


# ---------------------------------------------------------------------------
# Transforming whole domains


def test_transform_domain_moves_interior_and_locus(bidisk, rng):
    t = random_unit_det_map(rng, scale=0.1)
    moved = transform_domain(bidisk, t)
    for p in bidisk.interior_points:
        assert moved.contains(np.array(t.affine(p)))
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    image = np.array(t.affine(zhat))
    assert np.max(np.abs(moved.rho_values(image))) < 1e-9


def test_transform_domain_validates(bidisk, rng):
    t = random_unit_det_map(rng, scale=0.1)
    moved = transform_domain(bidisk, t)
    out = validate_domain(moved, resolution=6)
    assert out["passed"], out["failures"]


def test_transformed_tangent_cycle_is_dual_image(bidisk, rng):
    # strong and weak tangents transform by the dual map, at matched
    # barycentric coordinates
    t = random_unit_det_map(rng, scale=0.1)
    moved = transform_domain(bidisk, t)
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    image = np.array(t.affine(zhat))
    e0, e1 = bidisk.edges[0], moved.edges[0]
    td = dual_map(t)
    strong0 = strong_tangents(bidisk, e0, zhat)
    strong1 = strong_tangents(moved, e1, image, tol=1e-8)
    for w0, w1 in zip(strong0.planes, strong1.planes):
        assert proj_equal(td.matrix @ w0.array, w1.array, tol=1e-8)
    for t1 in (0.3, 0.8):
        w0 = weak_tangent(bidisk, e0, zhat, (t1, 1.0 - t1))
        w1 = weak_tangent(moved, e1, image, (t1, 1.0 - t1))
        assert proj_equal(td.matrix @ w0.array, w1.array, tol=1e-8)
