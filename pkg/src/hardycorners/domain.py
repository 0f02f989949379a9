"""Piecewise-smooth domains: boundary charts, edges, tangent cycles, checks.

A domain is assembled from labeled real-polynomial defining functions, a
list of smooth boundary faces (each a 3-real-dimensional piece of one
hypersurface), and a list of edges (here: the 2-real-dimensional manifolds
where exactly two hypersurfaces meet transversely over the complex field).
Faces and edges carry explicit parameter charts from a small built-in
catalog; a Newton projection refines every chart point onto its defining
locus to 1e-12, and chart tangent vectors come from exact implicit
differentiation, so downstream quadrature sees the locus to full precision.

The tangent machinery at an edge point:

* each member hypersurface contributes its complex-tangent hyperplane (the
  *strong* tangents, enumerated in member order);
* the segment of hyperplanes spanned barycentrically between them (the
  *weak* tangents) fills in the dual cycle that gives edges their weight in
  the reproducing formula.

Two sampling checks probe the geometry: :func:`check_local_intersection`
verifies that near an edge the domain looks like the intersection of its
members' half-spaces (this is what fails for the non-pseudoconvex
union-of-half-spaces configuration), and :func:`check_strict_convexity`
reports the avoidance margin of weak-tangent lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .hermpoly import HermitianPoly, gradient_hyperplane, parse_poly, transform_poly
from .projective import HomVec, ProjMap, dual_map, homogenize, normalize_map, pair

__all__ = [
    "Chart",
    "TorusChart",
    "SpherePolarChart",
    "GraphPatchChart",
    "TransformedChart",
    "Face",
    "Edge",
    "PwsDomain",
    "make_chart",
    "strong_tangents",
    "weak_tangent",
    "check_local_intersection",
    "check_strict_convexity",
    "transform_domain",
    "validate_domain",
    "canonical_spec",
]

_NEWTON_TOL = 1e-12
_ONLOCUS_TOL = 1e-10


def _directional(rho, zhat, direction):
    """Real directional derivative of rho along a complex 2-vector direction."""
    g = rho.grad(zhat[0], zhat[1])
    return 2.0 * float(np.real(g @ np.asarray(direction, dtype=complex)))


class Chart:
    """Base class: a parameterization of a face (3 params) or edge (2 params)."""

    kind = "abstract"
    dim = 0

    def point(self, *params):
        raise NotImplementedError

    def tangents(self, *params):
        raise NotImplementedError

    def spec_dict(self):
        raise NotImplementedError

    def quad_nodes(self, resolution):
        """Deterministic node list [(params, weight), ...] at a resolution."""
        raise NotImplementedError


def _trapezoid_axis(n):
    return 2.0 * np.pi * np.arange(n) / n, np.full(n, 2.0 * np.pi / n)


def _gauss_axis(a, b, order):
    from .quadrature import gauss_rule

    return gauss_rule(a, b, order)


class TorusChart(Chart):
    """Edge chart: z_l = r_l(theta, phi) * exp(i * angle_l) on {rho1 = rho2 = 0}.

    The two radii are Newton-refined from the supplied starting values at
    every parameter pair, so chart points satisfy both defining equations to
    1e-12 and the tangent vectors follow by implicit differentiation.
    """

    kind = "torus2"
    dim = 2

    def __init__(self, rhos, r0=(1.0, 1.0)):
        if len(rhos) != 2:
            raise ValueError("torus2 chart needs exactly two defining functions")
        self.rhos = tuple(rhos)
        self.r0 = (float(r0[0]), float(r0[1]))

    def _solve(self, theta, phi):
        e = np.array([np.exp(1j * theta), np.exp(1j * phi)])
        r = np.array(self.r0, dtype=float)
        for _ in range(80):
            z = r * e
            vals = np.array([rho(z[0], z[1]) for rho in self.rhos])
            if np.max(np.abs(vals)) < _NEWTON_TOL:
                break
            jac = np.empty((2, 2))
            for l, rho in enumerate(self.rhos):
                g = rho.grad(z[0], z[1])
                jac[l, 0] = 2.0 * np.real(g[0] * e[0])
                jac[l, 1] = 2.0 * np.real(g[1] * e[1])
            r = r - np.linalg.solve(jac, vals)
        else:
            raise RuntimeError("torus chart Newton projection did not converge")
        return r, e

    def point(self, theta, phi):
        r, e = self._solve(theta, phi)
        return r * e

    def tangents(self, theta, phi):
        r, e = self._solve(theta, phi)
        z = r * e
        jac = np.empty((2, 2))
        for l, rho in enumerate(self.rhos):
            g = rho.grad(z[0], z[1])
            jac[l, 0] = 2.0 * np.real(g[0] * e[0])
            jac[l, 1] = 2.0 * np.real(g[1] * e[1])
        out = []
        for axis in (0, 1):
            dz_explicit = np.zeros(2, dtype=complex)
            dz_explicit[axis] = 1j * r[axis] * e[axis]
            rhs = np.array(
                [
                    -2.0 * np.real(rho.grad(z[0], z[1]) @ dz_explicit)
                    for rho in self.rhos
                ]
            )
            dr = np.linalg.solve(jac, rhs)
            out.append(dz_explicit + dr * e)
        return out

    def spec_dict(self):
        return {"type": "torus2", "r0": [self.r0[0], self.r0[1]]}

    def quad_nodes(self, resolution):
        n = max(4, int(resolution))
        th, wt = _trapezoid_axis(n)
        ph, wp = _trapezoid_axis(n)
        return [
            ((th[i], ph[j]), wt[i] * wp[j]) for i in range(n) for j in range(n)
        ]


class SpherePolarChart(Chart):
    """Face chart for a sphere-like hypersurface, radially Newton-projected.

    Parameters (theta, alpha, beta) map to the direction
    (cos(theta) e^{i alpha}, sin(theta) e^{i beta}) scaled to the locus.
    """

    kind = "sphere_polar"
    dim = 3

    def __init__(self, rho, r0=1.0):
        self.rho = rho
        self.r0 = float(r0)

    def _direction(self, theta, alpha, beta):
        return np.array(
            [np.cos(theta) * np.exp(1j * alpha), np.sin(theta) * np.exp(1j * beta)]
        )

    def _solve(self, theta, alpha, beta):
        u = self._direction(theta, alpha, beta)
        s = self.r0
        for _ in range(80):
            z = s * u
            val = self.rho(z[0], z[1])
            if abs(val) < _NEWTON_TOL:
                break
            dv = _directional(self.rho, z, u)
            s = s - val / dv
        else:
            raise RuntimeError("sphere chart Newton projection did not converge")
        return s, u

    def point(self, theta, alpha, beta):
        s, u = self._solve(theta, alpha, beta)
        return s * u

    def tangents(self, theta, alpha, beta):
        s, u = self._solve(theta, alpha, beta)
        z = s * u
        dn = _directional(self.rho, z, u)
        dus = (
            np.array([-np.sin(theta) * np.exp(1j * alpha), np.cos(theta) * np.exp(1j * beta)]),
            np.array([1j * np.cos(theta) * np.exp(1j * alpha), 0.0j]),
            np.array([0.0j, 1j * np.sin(theta) * np.exp(1j * beta)]),
        )
        out = []
        for du in dus:
            ds = -_directional(self.rho, z, s * du) / dn
            out.append(ds * u + s * du)
        return out

    def spec_dict(self):
        return {"type": "sphere_polar", "r0": self.r0}

    def quad_nodes(self, resolution):
        n = max(4, int(resolution))
        xt, wt = _gauss_axis(0.0, np.pi / 2.0, max(4, n // 2))
        xa, wa = _trapezoid_axis(n)
        xb, wb = _trapezoid_axis(n)
        return [
            ((xt[i], xa[j], xb[k]), wt[i] * wa[j] * wb[k])
            for i in range(len(xt))
            for j in range(n)
            for k in range(n)
        ]


class GraphPatchChart(Chart):
    """Face chart: one coordinate's modulus solved over a polar disk in the other.

    With ``solve = "z1"``: z2 = disk_radius * r * e^{i phi} ranges over a
    disk, and z1 = m(r, phi, psi) * e^{i psi} with the modulus m Newton-solved
    on the face's defining locus.
    """

    kind = "graph_patch"
    dim = 3

    def __init__(self, rho, solve="z1", disk_radius=1.0, r0=1.0):
        if solve not in ("z1", "z2"):
            raise ValueError("solve must be 'z1' or 'z2'")
        self.rho = rho
        self.solve = solve
        self.disk_radius = float(disk_radius)
        self.r0 = float(r0)

    def _assemble(self, m, disk, psi):
        z = np.empty(2, dtype=complex)
        si = 0 if self.solve == "z1" else 1
        z[si] = m * np.exp(1j * psi)
        z[1 - si] = disk
        return z

    def _solve_m(self, r, phi, psi):
        disk = self.disk_radius * r * np.exp(1j * phi)
        si = 0 if self.solve == "z1" else 1
        eradial = np.zeros(2, dtype=complex)
        eradial[si] = np.exp(1j * psi)
        m = self.r0
        for _ in range(80):
            z = self._assemble(m, disk, psi)
            val = self.rho(z[0], z[1])
            if abs(val) < _NEWTON_TOL:
                break
            dv = _directional(self.rho, z, eradial)
            m = m - val / dv
        else:
            raise RuntimeError("graph chart Newton projection did not converge")
        return m, disk, eradial, si

    def point(self, r, phi, psi):
        m, disk, _, si = self._solve_m(r, phi, psi)
        return self._assemble(m, disk, psi)

    def tangents(self, r, phi, psi):
        m, disk, eradial, si = self._solve_m(r, phi, psi)
        z = self._assemble(m, disk, psi)
        dn = _directional(self.rho, z, eradial)
        expl = []
        dphi = np.zeros(2, dtype=complex)
        dr = np.zeros(2, dtype=complex)
        dpsi = np.zeros(2, dtype=complex)
        dr[1 - si] = self.disk_radius * np.exp(1j * phi)
        dphi[1 - si] = 1j * self.disk_radius * r * np.exp(1j * phi)
        dpsi[si] = 1j * m * np.exp(1j * psi)
        out = []
        for dz in (dr, dphi, dpsi):
            dm = -_directional(self.rho, z, dz) / dn
            out.append(dz + dm * eradial)
        return out

    def spec_dict(self):
        return {
            "type": "graph_patch",
            "solve": self.solve,
            "disk_radius": self.disk_radius,
            "r0": self.r0,
        }

    def quad_nodes(self, resolution):
        n = max(4, int(resolution))
        xr, wr = _gauss_axis(0.0, 1.0, max(4, n // 2))
        xp, wp = _trapezoid_axis(n)
        xs, ws = _trapezoid_axis(n)
        return [
            ((xr[i], xp[j], xs[k]), wr[i] * wp[j] * ws[k])
            for i in range(len(xr))
            for j in range(n)
            for k in range(n)
        ]


class TransformedChart(Chart):
    """A chart composed with a projective map, with exact pushed tangents."""

    kind = "transformed"

    def __init__(self, base, tmap):
        self.base = base
        self.tmap = tmap
        self.dim = base.dim

    def point(self, *params):
        return np.array(self.tmap.affine(self.base.point(*params)))

    def tangents(self, *params):
        z = self.base.point(*params)
        jac = self.tmap.jacobian(z)
        return [jac @ v for v in self.base.tangents(*params)]

    def spec_dict(self):
        return {"type": "transformed", "base": self.base.spec_dict()}

    def quad_nodes(self, resolution):
        return self.base.quad_nodes(resolution)


@dataclass
class Face:
    """A smooth boundary piece: one hypersurface index plus its chart."""

    hypersurface: int
    chart: Chart


@dataclass
class Edge:
    """Where exactly the member hypersurfaces meet, with its chart (k = 2 here)."""

    members: tuple
    chart: Chart


@dataclass
class PwsDomain:
    """A piecewise-smooth domain with explicit boundary decomposition.

    ``membership`` is ``"intersection"`` (inside iff every defining function
    is negative — the pseudoconvex configuration) or ``"union"`` (inside iff
    some defining function is negative — used for the non-pseudoconvex
    counterexample fixture).
    """

    hypersurfaces: list
    faces: list
    edges: list
    interior_points: list = field(default_factory=list)
    membership: str = "intersection"
    raw_spec: dict | None = None

    def __post_init__(self):
        if self.membership not in ("intersection", "union"):
            raise ValueError("membership must be 'intersection' or 'union'")
        labels = [lab for lab, _ in self.hypersurfaces]
        if len(set(labels)) != len(labels):
            raise ValueError("hypersurface labels must be unique")

    def rho(self, i):
        return self.hypersurfaces[i][1]

    def label(self, i):
        return self.hypersurfaces[i][0]

    def rho_values(self, zhat):
        return np.array([rho(zhat[0], zhat[1]) for _, rho in self.hypersurfaces])

    def contains(self, zhat):
        vals = self.rho_values(zhat)
        if self.membership == "intersection":
            return bool(np.all(vals < 0))
        return bool(np.any(vals < 0))

    def active_members(self, zhat, tol=1e-8):
        vals = self.rho_values(zhat)
        return [i for i, v in enumerate(vals) if abs(v) <= tol]

    def edge_at(self, zhat, tol=1e-8):
        active = set(self.active_members(zhat, tol))
        for e in self.edges:
            if set(e.members) == active:
                return e
        raise ValueError(
            f"no declared edge matches the active hypersurfaces {sorted(active)} at {zhat}"
        )


def make_chart(spec, rhos_by_label, face_label=None, member_labels=None):
    """Build a catalog chart from its spec dict.

    ``rhos_by_label`` maps hypersurface labels to polynomials; face charts
    bind the face's own polynomial, edge charts bind both members'.
    """
    ctype = spec.get("type")
    if ctype == "torus2":
        rhos = [rhos_by_label[lab] for lab in member_labels]
        return TorusChart(rhos, r0=spec.get("r0", (1.0, 1.0)))
    if ctype == "sphere_polar":
        return SpherePolarChart(rhos_by_label[face_label], r0=spec.get("r0", 1.0))
    if ctype == "graph_patch":
        return GraphPatchChart(
            rhos_by_label[face_label],
            solve=spec.get("solve", "z1"),
            disk_radius=spec.get("disk_radius", 1.0),
            r0=spec.get("r0", 1.0),
        )
    raise ValueError(
        f"unknown chart type {ctype!r}; catalog: torus2, sphere_polar, graph_patch"
    )


def domain_from_spec(spec):
    """Assemble a :class:`PwsDomain` from a domain-spec dictionary."""
    hyper = []
    rhos_by_label = {}
    for h in spec["hypersurfaces"]:
        label = h["label"]
        rho = parse_poly(h["rho"])
        hyper.append((label, rho))
        if label in rhos_by_label:
            raise ValueError(f"duplicate hypersurface label {label!r}")
        rhos_by_label[label] = rho
    index = {label: i for i, (label, _) in enumerate(hyper)}

    faces = []
    for f in spec.get("faces", []):
        lab = f["hypersurface"]
        chart = make_chart(f["chart"], rhos_by_label, face_label=lab)
        faces.append(Face(index[lab], chart))

    edges = []
    for e in spec.get("edges", []):
        labs = list(e["members"])
        chart = make_chart(e["chart"], rhos_by_label, member_labels=labs)
        edges.append(Edge(tuple(index[lab] for lab in labs), chart))

    pts = []
    for p in spec.get("interior_points", []):
        pts.append(np.array([complex(p[0], p[1]), complex(p[2], p[3])]))

    return PwsDomain(
        hypersurfaces=hyper,
        faces=faces,
        edges=edges,
        interior_points=pts,
        membership=spec.get("membership", "intersection"),
        raw_spec=spec,
    )


def canonical_spec(spec):
    """Canonical byte-stable JSON serialization of a domain-spec dictionary."""
    return json.dumps(spec, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def strong_tangents(d, e, zhat, tol=1e-8):
    """The member hypersurfaces' tangent hyperplanes at an edge point, in member order."""
    from .kernels import StrongTangentSet

    for m in e.members:
        if abs(d.rho(m)(zhat[0], zhat[1])) > tol:
            raise ValueError(
                f"point is not on hypersurface {d.label(m)!r} within {tol}"
            )
    planes = [gradient_hyperplane(d.rho(m), zhat) for m in e.members]
    return StrongTangentSet(basepoint=HomVec.from_affine(zhat), planes=tuple(planes))


def weak_tangent(d, e, zhat, t):
    """Barycentric combination of the members' tangent hyperplanes at an edge point.

    ``t`` lives on the standard simplex (non-negative, sums to 1); the
    vertices reproduce the strong tangents, and every value is incident to
    the basepoint exactly.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (len(e.members),):
        raise ValueError(f"t must have {len(e.members)} barycentric coordinates")
    if np.any(t < -1e-12) or abs(float(np.sum(t)) - 1.0) > 1e-10:
        raise ValueError("t must be non-negative barycentric coordinates summing to 1")
    z1, z2 = zhat
    grad_sum = np.zeros(2, dtype=complex)
    for tl, m in zip(t, e.members):
        grad_sum += tl * d.rho(m).grad(z1, z2)
    return HomVec(
        (-(grad_sum[0] * complex(z1) + grad_sum[1] * complex(z2)), grad_sum[0], grad_sum[1]),
        role="hyperplane",
    )


def _ball_samples(rng, center, radius, n):
    pts = rng.standard_normal((n, 4))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    radii = radius * rng.random(n) ** 0.25
    pts = pts * radii[:, None]
    return center[None, :] + pts


def check_local_intersection(d, zhat, radius, samples, seed=0):
    """Does the domain agree with the intersection of its members' half-spaces nearby?

    Samples the real 4-ball around the edge point and compares the domain's
    membership rule against ``all(rho_member < 0)``.  Raises if any
    non-member hypersurface changes sign inside the ball (radius too large
    for a purely local statement).
    """
    members = d.active_members(zhat, tol=1e-8)
    if not members:
        raise ValueError("point is not on the boundary of any hypersurface")
    rng = np.random.default_rng(seed)
    center = np.array(
        [zhat[0].real, zhat[0].imag, zhat[1].real, zhat[1].imag], dtype=float
    )
    pts = _ball_samples(rng, center, radius, int(samples))
    nonmembers = [i for i in range(len(d.hypersurfaces)) if i not in members]
    disagreements = 0
    for row in pts:
        z = np.array([complex(row[0], row[1]), complex(row[2], row[3])])
        vals = d.rho_values(z)
        for i in nonmembers:
            if vals[i] >= 0:
                raise ValueError(
                    f"radius {radius} too large: non-member hypersurface "
                    f"{d.label(i)!r} reaches the sample ball"
                )
        local = bool(np.all(vals[members] < 0))
        if local != _membership_from_values(d, vals):
            disagreements += 1
    return {
        "passed": disagreements == 0,
        "samples": int(samples),
        "disagreements": disagreements,
        "members": [d.label(m) for m in members],
        "radius": float(radius),
    }


def _membership_from_values(d, vals):
    if d.membership == "intersection":
        return bool(np.all(vals < 0))
    return bool(np.any(vals < 0))


def check_strict_convexity(d, zhat, t_grid=11, ambient_grid=16, local_radius=None):
    """Avoidance margins of the weak-tangent lines through a boundary point.

    For each sampled barycentric weight ``t`` the complex line carried by the
    weak tangent is sampled on a punctured polar grid; the margin of a line is
    ``min over line samples of max over member rho values``.  Positive margin
    means the line leaves the closed domain immediately (strictness); zero
    margin detects contact of higher order, as on flat faces or cone models.
    """
    members = d.active_members(zhat, tol=1e-8)
    if not members:
        raise ValueError("point is not on the boundary")
    e = None
    if len(members) >= 2:
        e = d.edge_at(zhat)
        members = list(e.members)
    radius = 0.5 if local_radius is None else float(local_radius)

    if len(members) == 1:
        t_list = [np.array([1.0])]
    else:
        t_list = [
            np.array([i / (t_grid - 1.0), 1.0 - i / (t_grid - 1.0)])
            for i in range(t_grid)
        ]

    per_t = []
    z0 = np.array([complex(zhat[0]), complex(zhat[1])])
    for t in t_list:
        if len(members) == 1:
            w = gradient_hyperplane(d.rho(members[0]), zhat)
        else:
            w = weak_tangent(d, e, zhat, t)
        wa = w.array
        dvec = np.array([wa[2], -wa[1]])
        nd = np.linalg.norm(dvec)
        if nd < 1e-14:
            per_t.append((tuple(t), np.nan))
            continue
        dvec = dvec / nd
        margin = np.inf
        for i in range(1, ambient_grid + 1):
            rr = radius * i / ambient_grid
            for j in range(ambient_grid):
                s = rr * np.exp(2j * np.pi * j / ambient_grid)
                p = z0 + s * dvec
                vals = [d.rho(m)(p[0], p[1]) for m in members]
                margin = min(margin, max(vals))
        per_t.append((tuple(t), float(margin)))

    margins = [m for _, m in per_t if np.isfinite(m)]
    min_margin = float(min(margins)) if margins else np.nan
    return {
        "members": [d.label(m) for m in members],
        "per_t": per_t,
        "min_margin": min_margin,
        "strict": bool(min_margin > 1e-10),
    }


def transform_domain(d, t):
    """Apply a projective map to a whole domain.

    Every defining function is transformed at one common bihomogenization
    degree (the max over the family), so that tangent data built from several
    gradients at once — in particular the weak-tangent cycle at a fixed
    barycentric parameter — transforms coherently by the dual map.
    """
    if not isinstance(t, ProjMap):
        t = normalize_map(t)
    degree = 0
    for _, rho in d.hypersurfaces:
        dh, da = rho.max_degrees()
        degree = max(degree, dh, da)
    new_hyper = [
        (label, transform_poly(rho, t, degree=degree)) for label, rho in d.hypersurfaces
    ]
    new_faces = [
        Face(f.hypersurface, TransformedChart(f.chart, t) if f.chart else None)
        for f in d.faces
    ]
    new_edges = [
        Edge(e.members, TransformedChart(e.chart, t) if e.chart else None)
        for e in d.edges
    ]
    new_pts = [np.array(t.affine(p)) for p in d.interior_points]
    return PwsDomain(
        hypersurfaces=new_hyper,
        faces=new_faces,
        edges=new_edges,
        interior_points=new_pts,
        membership=d.membership,
        raw_spec=None,
    )


def validate_domain(d, resolution=12):
    """Structural validation: charts on-locus, sign conditions, transversality.

    Returns a report dict with ``passed`` and a list of human-readable
    ``failures`` naming the offending hypersurface or chart.
    """
    failures = []

    for fi, f in enumerate(d.faces):
        own = d.rho(f.hypersurface)
        for params, _ in f.chart.quad_nodes(resolution)[:: max(1, resolution)]:
            z = f.chart.point(*params)
            if abs(own(z[0], z[1])) > _ONLOCUS_TOL:
                failures.append(
                    f"face {fi} chart point leaves hypersurface "
                    f"{d.label(f.hypersurface)!r} (|rho| > {_ONLOCUS_TOL})"
                )
                break
            for i, (_, rho) in enumerate(d.hypersurfaces):
                if i != f.hypersurface and rho(z[0], z[1]) >= 0:
                    failures.append(
                        f"face {fi} chart reaches the wrong side of {d.label(i)!r}"
                    )
                    break

    for ei, e in enumerate(d.edges):
        for params, _ in e.chart.quad_nodes(resolution)[:: max(1, resolution)]:
            z = e.chart.point(*params)
            for m in e.members:
                if abs(d.rho(m)(z[0], z[1])) > _ONLOCUS_TOL:
                    failures.append(
                        f"edge {ei} chart point leaves member {d.label(m)!r}"
                    )
                    break
            g1 = d.rho(e.members[0]).grad(z[0], z[1])
            g2 = d.rho(e.members[1]).grad(z[0], z[1])
            det = g1[0] * g2[1] - g1[1] * g2[0]
            scale = max(np.linalg.norm(g1) * np.linalg.norm(g2), 1e-300)
            if abs(det) / scale < 1e-8:
                failures.append(
                    f"edge {ei}: member gradients are complex-linearly dependent "
                    f"(transversality fails)"
                )
                break
            for i, (_, rho) in enumerate(d.hypersurfaces):
                if i not in e.members and rho(z[0], z[1]) >= 0:
                    failures.append(
                        f"edge {ei} chart reaches the wrong side of {d.label(i)!r}"
                    )
                    break

    for p in d.interior_points:
        if d.membership == "intersection":
            for i, (_, rho) in enumerate(d.hypersurfaces):
                if rho(p[0], p[1]) >= 0:
                    failures.append(
                        f"interior point {p} is on the wrong side of {d.label(i)!r}"
                        " (orientation: rho must be negative inside)"
                    )
        elif not d.contains(p):
            failures.append(f"declared interior point {p} is not inside the domain")

    return {"passed": not failures, "failures": failures}
