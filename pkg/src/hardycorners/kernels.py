"""Reproducing-kernel densities on the incidence variety and at corners.

The central object is a projectively written Cauchy-type density living on
pairs (point, hyperplane) of the incidence variety: :func:`omega_cfl`
evaluates it on tangent triples in any affine chart and is chart-independent
on the nose once homogeneous representatives are fixed.  Two specializations
feed the reproducing formula on a piecewise-smooth boundary:

* :func:`smooth_leray_density` — the classical second-order density on a
  smooth face, written with a defining function;
* :func:`corner_kernel` — the residual density concentrated on an edge,
  assembled from the two member hypersurfaces' tangent hyperplanes.

:func:`pushforward_corner_check` connects the two pictures by integrating
the incidence density over the segment of hyperplanes between the strong
tangents (the weak-tangent fiber) and comparing with the corner kernel.
:func:`simplex_integral` provides the scalar simplex identity that drives
the corner normalization, with both a closed form and a quadrature route.

Evaluators return pure alternating-form values; orientation conventions are
supplied separately by :func:`orientation_sign_face` and
:func:`orientation_sign_edge` so that integration drivers stay explicit
about boundary orientation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .projective import HomVec
from .quadrature import gauss_rule, integrate_simplex

__all__ = [
    "Density",
    "StrongTangentSet",
    "omega_cfl",
    "omega_cfl_affine_form",
    "smooth_leray_density",
    "corner_kernel",
    "cramer_residual",
    "simplex_integral",
    "pushforward_corner_check",
    "orientation_sign_face",
    "orientation_sign_edge",
]

TWO_PI_I = 2j * np.pi

# Mutation hook exercised by the self-test command: flipping this sign must
# make the corner-related consistency suites fail loudly.
_CORNER_SIGN = 1.0

_REL_TOL = 1e-10


@dataclass(frozen=True)
class Density:
    """A kernel value together with its homogeneity bookkeeping.

    ``value`` is the alternating-form value on the tangent vectors it was
    evaluated with.  The bidegrees record how the value rescales when the
    homogeneous representative of each argument is rescaled: weight (p, q)
    means a factor lambda**p * conj(lambda)**q.  ``form_degree`` is the
    number of tangent arguments consumed.
    """

    value: complex
    form_degree: int
    bidegree_z: tuple = (Fraction(0), Fraction(0))
    bidegree_w: tuple = (Fraction(0), Fraction(0))
    bidegree_tau: tuple = (Fraction(0), Fraction(0))
    basepoint: object = None


@dataclass(frozen=True)
class StrongTangentSet:
    """Tangent hyperplanes of the member hypersurfaces at an edge point.

    ``planes`` is ordered like the edge's member list.  The basepoint keeps
    the homogeneous representative the planes were computed against.
    """

    basepoint: HomVec
    planes: tuple

    def __len__(self):
        return len(self.planes)

    def __getitem__(self, i):
        return self.planes[i]

    def minor_vector(self):
        """Cross product of the two plane coordinate vectors.

        By the corner Cramer identity this is proportional to the basepoint's
        coordinate vector; component 0 is the minor that enters the corner
        kernel.
        """
        if len(self.planes) != 2:
            raise ValueError("minor vector is defined for exactly two planes")
        a = self.planes[0].array
        b = self.planes[1].array
        return np.cross(a, b)


def _as_point(z):
    if isinstance(z, HomVec):
        if z.role != "point":
            raise ValueError("expected a point, got a hyperplane")
        return z.array
    return np.asarray(z, dtype=complex)


def _as_hyperplane(w):
    if isinstance(w, HomVec):
        if w.role != "hyperplane":
            raise ValueError("expected a hyperplane, got a point")
        return w.array
    return np.asarray(w, dtype=complex)


def _check_incidence(z, w):
    scale = np.linalg.norm(z) * np.linalg.norm(w)
    if abs(z @ w) > _REL_TOL * max(scale, 1e-300):
        raise ValueError("point and hyperplane are not incident")


def _check_tangent(z, w, dz, dw):
    scale = (
        np.linalg.norm(w) * np.linalg.norm(dz)
        + np.linalg.norm(z) * np.linalg.norm(dw)
        + 1e-300
    )
    if abs(w @ dz + z @ dw) > 1e-10 * scale:
        raise ValueError(
            "tangent vector does not satisfy the linearized incidence relation"
        )


def omega_cfl(z, w, tangents, charts=None):
    """Incidence Cauchy density on three tangent vectors, in an affine chart.

    Parameters
    ----------
    z, w : HomVec or length-3 sequences
        Incident point and hyperplane (homogeneous representatives).
    tangents : sequence of three (dz, dw) pairs
        Homogeneous lifts of tangent vectors to the incidence variety; each
        pair must satisfy the linearized incidence relation
        ``w . dz + z . dw = 0``.
    charts : (j, k), optional
        Affinize the point by coordinate ``j`` and the hyperplane by
        coordinate ``k``.  Defaults to the largest-modulus coordinates.  The
        value does not depend on this choice (chart independence on the
        nose), but the chosen coordinates must be nonzero.

    Returns
    -------
    Density
        Alternating 3-form value of weight (2, 0) in the point representative
        and (2, 0) in the hyperplane representative.
    """
    z = _as_point(z)
    w = _as_hyperplane(w)
    _check_incidence(z, w)
    if len(tangents) != 3:
        raise ValueError("the incidence density consumes exactly three tangents")
    pairs = []
    for dz, dw in tangents:
        dz = np.asarray(dz, dtype=complex)
        dw = np.asarray(dw, dtype=complex)
        _check_tangent(z, w, dz, dw)
        pairs.append((dz, dw))

    if charts is None:
        j = int(np.argmax(np.abs(z)))
        k = int(np.argmax(np.abs(w)))
    else:
        j, k = charts
    if abs(z[j]) <= 1e-14 * np.max(np.abs(z)):
        raise ValueError(f"point chart {j} is invalid: coordinate vanishes")
    if abs(w[k]) <= 1e-14 * np.max(np.abs(w)):
        raise ValueError(f"hyperplane chart {k} is invalid: coordinate vanishes")

    def dz_chart(dz):
        return (dz * z[j] - z * dz[j]) / z[j] ** 2

    def dw_chart(dw):
        return (dw * w[k] - w * dw[k]) / w[k] ** 2

    a_vals = []
    dz_vals = []
    dw_vals = []
    for dz, dw in pairs:
        dwc = dw_chart(dw)
        dzc = dz_chart(dz)
        a_vals.append((z / z[j]) @ dwc)
        dz_vals.append(dzc)
        dw_vals.append(dwc)

    def b(p, q):
        return dz_vals[p] @ dw_vals[q] - dz_vals[q] @ dw_vals[p]

    wedge = a_vals[0] * b(1, 2) - a_vals[1] * b(0, 2) + a_vals[2] * b(0, 1)
    value = z[j] ** 2 * w[k] ** 2 / TWO_PI_I**2 * wedge
    return Density(
        value=complex(value),
        form_degree=3,
        bidegree_z=(Fraction(2), Fraction(0)),
        bidegree_w=(Fraction(2), Fraction(0)),
    )


def omega_cfl_affine_form(z, w, tangents):
    """Independent affine-determinant expression for the incidence density.

    Written entirely in the z0-chart of the point and the polar affinization
    of the hyperplane (first dual coordinate over minus the zeroth), the
    density equals

        z0^2 w0^2 / (2 pi i)^2 * (1 / zhat2) * det[dwhat1, dzhat1, dzhat2]

    on any tangent triple.  Requires z0, w0 and the second affine point
    coordinate to be nonzero.  Used as a cross-check of :func:`omega_cfl`;
    the two must agree to full precision wherever both are defined.
    """
    z = _as_point(z)
    w = _as_hyperplane(w)
    _check_incidence(z, w)
    if abs(z[0]) <= 1e-14 * np.max(np.abs(z)):
        raise ValueError("affine form requires z0 != 0")
    if abs(w[0]) <= 1e-14 * np.max(np.abs(w)):
        raise ValueError("affine form requires w0 != 0")
    zhat2 = z[2] / z[0]
    if abs(zhat2) <= 1e-14:
        raise ValueError("affine form requires the second affine coordinate nonzero")

    rows = []
    for dz, dw in tangents:
        dz = np.asarray(dz, dtype=complex)
        dw = np.asarray(dw, dtype=complex)
        _check_tangent(z, w, dz, dw)
        dwhat1 = -(dw[1] * w[0] - w[1] * dw[0]) / w[0] ** 2
        dzhat1 = (dz[1] * z[0] - z[1] * dz[0]) / z[0] ** 2
        dzhat2 = (dz[2] * z[0] - z[2] * dz[0]) / z[0] ** 2
        rows.append([dwhat1, dzhat1, dzhat2])
    det = np.linalg.det(np.array(rows, dtype=complex))
    value = z[0] ** 2 * w[0] ** 2 / TWO_PI_I**2 * det / zhat2
    return Density(
        value=complex(value),
        form_degree=3,
        bidegree_z=(Fraction(2), Fraction(0)),
        bidegree_w=(Fraction(2), Fraction(0)),
    )


def _wedge_1_2(a, b, v1, v2, v3):
    return a(v1) * b(v2, v3) - a(v2) * b(v1, v3) + a(v3) * b(v1, v2)


def smooth_leray_density(rho, zhat, tau_hat, tangents):
    """Second-order Cauchy density of a smooth face at a boundary point.

    Evaluates ``(1/(2 pi i)^2) * (d_rho wedge ddbar_rho)(v1, v2, v3)`` over
    the squared pairing of the tangent hyperplane with (z - tau), on three
    affine tangent vectors.  The result is a pure alternating form; the
    boundary orientation sign belongs to the caller (see
    :func:`orientation_sign_face`).

    Raises
    ------
    ValueError
        If the gradient of the defining function vanishes at the point.
    ZeroDivisionError
        If the evaluation point's tangent plane passes through ``tau``.
    """
    zhat = np.asarray(zhat, dtype=complex)
    tau_hat = np.asarray(tau_hat, dtype=complex)
    g = rho.grad(zhat[0], zhat[1])
    gn = np.linalg.norm(g)
    if gn < 1e-14:
        raise ValueError("defining function has vanishing gradient at the point")
    h = rho.hessian_complex(zhat[0], zhat[1])

    def a(v):
        return g @ v

    def b(u, v):
        acc = 0.0j
        for jj in range(2):
            for kk in range(2):
                acc += h[jj, kk] * (np.conj(u[jj]) * v[kk] - np.conj(v[jj]) * u[kk])
        return acc

    v1, v2, v3 = [np.asarray(v, dtype=complex) for v in tangents]
    numer = _wedge_1_2(a, b, v1, v2, v3)
    pairing = g @ (zhat - tau_hat)
    if abs(pairing) < 1e-12 * gn * max(np.linalg.norm(zhat - tau_hat), 1e-300):
        raise ZeroDivisionError(
            "tangent hyperplane passes through the evaluation point"
        )
    value = numer / pairing**2 / TWO_PI_I**2
    return Density(value=complex(value), form_degree=3)


def corner_kernel(strong, tau, frame):
    """Residual Cauchy density concentrated on an edge.

    Parameters
    ----------
    strong : StrongTangentSet
        The two member tangent hyperplanes at the edge point, with the
        basepoint representative they were computed against.
    tau : HomVec or length-3 sequence
        Interior point (homogeneous representative).
    frame : (v1, v2)
        Two affine tangent vectors to the edge at the basepoint.

    Returns
    -------
    Density
        Alternating 2-form value of weight (2, 0) in the basepoint
        representative and (-2, 0) in ``tau``'s representative; invariant
        under rescaling either hyperplane.
    """
    if len(strong) != 2:
        raise ValueError("corner kernel needs exactly two tangent hyperplanes")
    z = strong.basepoint.array
    w1 = strong.planes[0].array
    w2 = strong.planes[1].array
    tau = _as_point(tau)

    det0 = w1[1] * w2[2] - w1[2] * w2[1]
    p1 = tau @ w1
    p2 = tau @ w2
    scale1 = np.linalg.norm(tau) * np.linalg.norm(w1)
    scale2 = np.linalg.norm(tau) * np.linalg.norm(w2)
    if abs(p1) < 1e-12 * scale1 or abs(p2) < 1e-12 * scale2:
        raise ZeroDivisionError("a member tangent hyperplane passes through tau")

    v1 = np.asarray(frame[0], dtype=complex)
    v2 = np.asarray(frame[1], dtype=complex)
    dz12 = v1[0] * v2[1] - v1[1] * v2[0]

    value = _CORNER_SIGN * z[0] ** 2 * det0 * dz12 / (p1 * p2) / TWO_PI_I**2
    return Density(
        value=complex(value),
        form_degree=2,
        bidegree_z=(Fraction(2), Fraction(0)),
        bidegree_tau=(Fraction(-2), Fraction(0)),
        basepoint=strong.basepoint,
    )


def cramer_residual(strong):
    """Normalized defect of the corner Cramer identity.

    The cross product of the two tangent-hyperplane coordinate vectors must
    be proportional to the basepoint's coordinate vector; returns
    ``|cross(minor_vector, z)| / (|minor_vector| |z|)``, which is zero (to
    rounding) exactly when the identity holds.
    """
    c = strong.minor_vector()
    z = strong.basepoint.array
    denom = max(np.linalg.norm(c) * np.linalg.norm(z), 1e-300)
    return float(np.linalg.norm(np.cross(c, z)) / denom)


def simplex_integral(tau, method="closed", order=24):
    """Scalar simplex identity behind the corner normalization.

    For parameters ``tau = (tau_1, ..., tau_n)`` the signed integral of
    ``1 / (sum_j w_j (1 - tau_j))**n`` over the standard (n-1)-simplex equals
    ``(-1)**n / ((n-1)! * prod_j (1 - tau_j))``.

    Parameters
    ----------
    tau : sequence of complex, length 2 or 3
    method : "closed" or "quadrature"
    order : int
        Gauss order per axis for the quadrature route.

    Raises
    ------
    ValueError
        If a pole factor ``1 - tau_j`` is too small, or (on the quadrature
        route) the denominator nearly vanishes on the simplex.
    """
    tau = np.asarray(tau, dtype=complex)
    n = len(tau)
    if n not in (2, 3):
        raise ValueError("the simplex identity is implemented for 2 or 3 parameters")
    factors = 1.0 - tau
    if np.min(np.abs(factors)) < 1e-8:
        raise ValueError("pole: some 1 - tau_j is too close to zero")
    sign = (-1.0) ** n
    if method == "closed":
        from math import factorial

        return sign / (factorial(n - 1) * np.prod(factors))
    if method != "quadrature":
        raise ValueError("method must be 'closed' or 'quadrature'")

    denoms = []

    def f(w):
        den = w @ factors
        denoms.append(abs(den))
        return 1.0 / den**n

    result = integrate_simplex(f, n, order)
    if min(denoms) < 1e-6 * float(np.max(np.abs(factors))):
        raise ValueError("pole: denominator nearly vanishes on the simplex")
    return sign * result.value


def _grad_directional(rho, zhat, v):
    """Real directional derivative of the Wirtinger gradient along v."""
    z1, z2 = zhat
    out = np.zeros(2, dtype=complex)
    d1 = rho.diff("z1")
    d2 = rho.diff("z2")
    for m, gm in enumerate((d1, d2)):
        acc = 0.0j
        for k, vark in enumerate(("z1", "z2")):
            acc += gm.diff(vark)(z1, z2) * v[k]
            acc += gm.diff(vark + "bar")(z1, z2) * np.conj(v[k])
        out[m] = acc
    return out


def _edge_tangent_basis(d, e, zhat):
    """Real basis of the edge's tangent plane from the two member gradients."""
    rows = []
    for m in e.members:
        g = d.rho(m).grad(zhat[0], zhat[1])
        rows.append([2 * g[0].real, -2 * g[0].imag, 2 * g[1].real, -2 * g[1].imag])
    a = np.array(rows, dtype=float)
    _, _, vt = np.linalg.svd(a)
    basis = []
    for row in vt[2:]:
        basis.append(np.array([row[0] + 1j * row[1], row[2] + 1j * row[3]]))
    return basis


def pushforward_corner_check(d, zhat, tau, order=32):
    """Compare the corner kernel with the fiber integral that defines it.

    At an edge point, integrates the incidence density over the segment of
    hyperplanes joining the two strong tangents (against the squared pairing
    with ``tau``) and evaluates the corner kernel on the same edge-tangent
    frame.  Returns a dict with both values and their relative difference.
    """
    from .domain import strong_tangents

    e = d.edge_at(zhat)
    strong = strong_tangents(d, e, zhat)
    v1, v2 = _edge_tangent_basis(d, e, zhat)

    z = strong.basepoint.array
    tau_arr = _as_point(tau)
    w_planes = [p.array for p in strong.planes]
    grads = [d.rho(m).grad(zhat[0], zhat[1]) for m in e.members]

    corner = corner_kernel(strong, tau_arr, (v1, v2)).value

    def dw_lift(member_index, v):
        g = grads[member_index]
        dg = _grad_directional(d.rho(e.members[member_index]), zhat, v)
        zh = np.asarray(zhat, dtype=complex)
        return np.array([-(dg @ zh) - (g @ v), dg[0], dg[1]])

    dz1 = np.array([0.0, v1[0], v1[1]])
    dz2 = np.array([0.0, v2[0], v2[1]])
    dw1_a = dw_lift(0, v1)
    dw1_b = dw_lift(1, v1)
    dw2_a = dw_lift(0, v2)
    dw2_b = dw_lift(1, v2)
    wdot = w_planes[0] - w_planes[1]

    def integrand(t):
        w_t = t * w_planes[0] + (1.0 - t) * w_planes[1]
        tangent_triple = [
            (dz1, t * dw1_a + (1.0 - t) * dw1_b),
            (dz2, t * dw2_a + (1.0 - t) * dw2_b),
            (np.zeros(3, dtype=complex), wdot),
        ]
        dens = omega_cfl(z, w_t, tangent_triple)
        return dens.value / (tau_arr @ w_t) ** 2

    xs, ws = gauss_rule(0.0, 1.0, order)
    fiber = sum(wq * integrand(xq) for xq, wq in zip(xs, ws))

    denom = max(abs(corner), abs(fiber), 1e-300)
    return {
        "corner": corner,
        "fiber": fiber,
        "rel_err": abs(corner - fiber) / denom,
    }


def _realify(v):
    v = np.asarray(v, dtype=complex)
    return np.array([v[0].real, v[0].imag, v[1].real, v[1].imag])


def orientation_sign_face(rho, zhat, tangents):
    """Orientation of a face frame: outward gradient first, then the frame.

    Returns +1.0 or -1.0 according to the sign of the real 4x4 determinant
    ``det[grad_R rho, V1, V2, V3]``; a frame is positively oriented when it
    completes the outward conormal to a positive basis of R^4.
    """
    cols = [rho.grad_real(zhat[0], zhat[1])]
    cols.extend(_realify(v) for v in tangents)
    det = np.linalg.det(np.array(cols).T)
    if abs(det) < 1e-300:
        raise ValueError("degenerate face frame")
    return 1.0 if det > 0 else -1.0


def orientation_sign_edge(rho_members, zhat, tangents):
    """Orientation of an edge frame against the members' conormals.

    ``rho_members`` is the pair of member defining functions in edge order;
    the determinant is taken with the conormals in reversed member order,
    ``det[grad_R rho_2, grad_R rho_1, V1, V2]``, which is the convention
    under which the corner kernel reproduces the positively oriented
    iterated Cauchy integral on product models.
    """
    r1, r2 = rho_members
    cols = [r2.grad_real(zhat[0], zhat[1]), r1.grad_real(zhat[0], zhat[1])]
    cols.extend(_realify(v) for v in tangents)
    det = np.linalg.det(np.array(cols).T)
    if abs(det) < 1e-300:
        raise ValueError("degenerate edge frame")
    return 1.0 if det > 0 else -1.0
