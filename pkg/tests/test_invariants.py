"""Edge normal forms, coordinate-change laws, and the scalar edge invariant."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardycorners.domain import transform_domain
from hardycorners.normalforms import (
    NormalizedEdge,
    apply_coordinate_change,
    change_matrix,
    edge_frame,
    edge_profile,
    edge_profile_ratio,
    eta,
    extract_normal_form,
    kappa,
    legendre_argmax,
    legendre_transform,
    model_edge_domain,
    model_edge_polys,
    normalize_coeffs,
)
from hardycorners.projective import ProjMap


COEFFS = (0.3, -0.6, -1.2, 0.1, 0.4, -0.8)


def _identity_frame():
    return ProjMap(np.eye(3, dtype=complex))


# ---------------------------------------------------------------------------
# Model edges and normal-form extraction


def test_model_edge_polys_match_graph():
    rho1, rho2 = model_edge_polys(COEFFS)
    a1, b1, c1, a2, b2, c2 = COEFFS
    for x1, x2 in [(0.05, -0.02), (0.0, 0.1), (-0.07, 0.03)]:
        q1 = a1 * x1 * x1 + b1 * x1 * x2 + c1 * x2 * x2
        q2 = a2 * x2 * x2 + b2 * x1 * x2 + c2 * x1 * x1
        # on the graph y_l = Q_l both functions vanish
        z1 = x1 + 1j * q1
        z2 = x2 + 1j * q2
        assert abs(rho1(z1, z2)) < 1e-14
        assert abs(rho2(z1, z2)) < 1e-14
        # and the sign convention is 2 * (Im z_l - Q_l)
        assert np.isclose(rho1(x1 + 0.3j, z2), 2 * (0.3 - q1))


def test_extract_normal_form_recovers_model_coefficients():
    d = model_edge_domain(COEFFS)
    nf = extract_normal_form(d, np.array([0.0, 0.0]), frame=_identity_frame())
    assert np.allclose(nf.coeffs, COEFFS, atol=1e-9)
    assert nf.drift < 1e-9
    assert nf.linear_residual < 1e-9


def test_extract_normal_form_uses_adapted_frame(perturbed_bidisk):
    chart = perturbed_bidisk.edges[0].chart
    zhat = np.array(chart.point(0.8, 2.0))
    nf = extract_normal_form(perturbed_bidisk, zhat)
    # transverse curvatures of a strictly pseudoconvex corner are negative
    assert nf.c1 < 0 and nf.c2 < 0
    assert nf.drift < 1e-4


def test_edge_frame_straightens_members(perturbed_bidisk):
    e = perturbed_bidisk.edges[0]
    chart = e.chart
    zhat = np.array(chart.point(0.8, 2.0))
    fr = edge_frame(perturbed_bidisk, e, zhat)
    # basepoint goes to the origin
    assert np.allclose(fr.affine(zhat), (0.0, 0.0), atol=1e-12)
    # unit determinant representative
    assert np.isclose(np.linalg.det(fr.matrix), 1.0, atol=1e-12)


# ---------------------------------------------------------------------------
# Coordinate-change laws (transform, then refit)


def _refit_after(coeffs, kind, param):
    d = model_edge_domain(coeffs)
    t = change_matrix(kind, param)
    moved = transform_domain(d, t)
    nf = extract_normal_form(moved, np.array([0.0, 0.0]), frame=_identity_frame())
    return nf.coeffs


@pytest.mark.parametrize(
    "kind,param",
    [
        ("shear1", 0.45j),
        ("shear1", complex(0.3)),  # real part must not act
        ("scale", 1.7),
        ("swap", None),
        ("parab", 0.35),
    ],
)
def test_coefficient_laws_match_refit(kind, param):
    predicted = apply_coordinate_change(COEFFS, kind, param)
    refit = _refit_after(COEFFS, kind, param)
    assert np.allclose(refit, predicted, atol=5e-8)


def test_scale_law_example():
    out = apply_coordinate_change((1, 2, 3, 4, 5, 6), "scale", 2.0)
    assert np.allclose(out, (2, 2, 1.5, 4, 10, 24))


def test_swap_is_involutive():
    once = apply_coordinate_change(COEFFS, "swap")
    twice = apply_coordinate_change(once, "swap")
    assert twice == COEFFS


def test_parab_composes_additively():
    # applying r then s equals applying r + s
    via_two = apply_coordinate_change(
        apply_coordinate_change(COEFFS, "parab", 0.2), "parab", 0.3
    )
    direct = apply_coordinate_change(COEFFS, "parab", 0.5)
    assert np.allclose(via_two, direct, atol=1e-12)


def test_change_matrix_rejects_unknown_kind():
    with pytest.raises(ValueError):
        change_matrix("rotate", 1.0)
    with pytest.raises(ValueError):
        apply_coordinate_change(COEFFS, "rotate", 1.0)
    with pytest.raises(ValueError):
        apply_coordinate_change(COEFFS, "scale", -2.0)


# ---------------------------------------------------------------------------
# Canonical slice


def test_normalize_coeffs_canonical_form():
    out = normalize_coeffs(COEFFS)
    assert isinstance(out, NormalizedEdge)
    assert out.b1 <= out.b2
    assert out.q > 0 and out.r > 0


def test_normalize_coeffs_requires_negative_transverse_curvature():
    with pytest.raises(ValueError):
        normalize_coeffs((0.0, 0.5, 1.0, 0.0, 0.5, -1.0))


def test_normalize_fixed_points_of_canonical_slice():
    out = normalize_coeffs((0.0, -0.4, -1.0, 0.0, 0.7, -1.0))
    assert np.isclose(out.q, 1.0) and np.isclose(out.r, 1.0)
    assert out.shift1 == 0.0 and out.shift2 == 0.0
    assert not out.swapped
    assert np.allclose((out.b1, out.b2), (-0.4, 0.7))


def test_normalize_orders_by_swap():
    out = normalize_coeffs((0.0, 0.7, -1.0, 0.0, -0.4, -1.0))
    assert out.swapped
    assert out.b1 <= out.b2


bval = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


@given(b1=bval, b2=bval)
def test_normalized_invariant_is_shear_invariant(b1, b2):
    # the shear shifts kill a1 and a2, moving b1 by -a2 and b2 by -a1; a
    # pre-sheared tuple therefore lands on the same canonical slice data
    sheared = (0.5, b1, -1.0, -0.3, b2 + 0.5, -1.0)
    n_base = normalize_coeffs((0.0, b1 + 0.3, -1.0, 0.0, b2, -1.0))
    n_shear = normalize_coeffs(sheared)
    assert np.isclose(n_base.b1, n_shear.b1, atol=1e-12)
    assert np.isclose(n_base.b2, n_shear.b2, atol=1e-12)


# ---------------------------------------------------------------------------
# Profile, Legendre transform, kappa


def test_profile_identities():
    for t in np.linspace(-0.95, 0.95, 41):
        assert np.isclose(edge_profile(t), edge_profile_ratio(t), rtol=1e-13)
    assert edge_profile(0.0) == 1.0
    assert edge_profile(0.5) == edge_profile(-0.5)


def test_profile_domain_is_open_interval():
    with pytest.raises(ValueError):
        edge_profile(1.0)
    with pytest.raises(ValueError):
        edge_profile_ratio(-1.0)


def test_legendre_argmax_stationarity():
    for p in (-4.0, -0.3, 0.0, 0.7, 12.0):
        t = legendre_argmax(p)
        assert -1.0 < t < 1.0
        assert abs(8.0 * t / (1.0 - t * t) ** 2 - p) < 1e-9


def test_legendre_transform_basics():
    assert np.isclose(legendre_transform(0.0), -1.0)
    assert legendre_transform(2.5) == legendre_transform(-2.5)


@given(p=st.floats(min_value=-8, max_value=8, allow_nan=False), t=st.floats(min_value=-0.99, max_value=0.99))
def test_legendre_transform_dominates_fenchel(p, t):
    assert legendre_transform(p) >= p * t - edge_profile(t) - 1e-12


def test_kappa_anchor_values():
    assert abs(kappa(0.0, 0.0) - 1.0) < 1e-10
    assert abs(kappa(-1.0, -1.0)) < 1e-8


@given(b1=bval, b2=bval)
def test_kappa_swap_symmetry_is_exact(b1, b2):
    assert kappa(b1, b2) == kappa(b2, b1)


def test_kappa_grid_consistency():
    # kappa equals the negative sup of the affine family over the profile
    rng = np.random.default_rng(5)
    tgrid = np.linspace(-1 + 1e-9, 1 - 1e-9, 20001)
    f = np.array([edge_profile(t) for t in tgrid])
    for _ in range(10):
        b1, b2 = rng.uniform(-2.5, 2.5, 2)
        p1 = 0.5 * (1.0 + tgrid)
        p2 = 0.5 * (1.0 - tgrid)
        sup = np.max(-p1 * b1 - p2 * b2 - f)
        assert abs(sup + kappa(b1, b2)) < 1e-6


# ---------------------------------------------------------------------------
# The edge weight on a genuine domain


def test_eta_positive_on_strictly_convex_edge(perturbed_bidisk):
    chart = perturbed_bidisk.edges[0].chart
    zhat = np.array(chart.point(1.0, 2.5))
    inv = eta(perturbed_bidisk, zhat)
    assert inv.eta_weight > 0
    assert inv.c1 < 0 and inv.c2 < 0
    assert np.isclose(inv.kappa_times_c1c2, inv.kappa * inv.c1 * inv.c2)
    assert inv.b1 <= inv.b2


def test_eta_rejects_flat_edge(bidisk):
    zhat = np.array([np.exp(0.4j), np.exp(1.1j)])
    with pytest.raises(ValueError):
        eta(bidisk, zhat)
