"""Numerical integration engines: periodic trapezoid, Gauss tensor, simplex.

Three deterministic engines cover every integral in the package:

* :func:`integrate_periodic` — tensor trapezoid rule on ``[0, 2*pi)^d``,
  spectrally accurate for analytic periodic integrands (tori of edges,
  angular directions of boundary charts);
* :func:`integrate_patch` — tensor Gauss-Legendre on a rectangle (radial
  and polar directions of boundary charts);
* :func:`integrate_simplex` — a collapsed-coordinate (Duffy-type) tensor
  rule on the standard simplex slice ``{w >= 0, sum w = 1}`` parameterized
  by its first ``n - 1`` coordinates.

There is no adaptive subdivision: every caller states a fixed resolution,
and each result carries a self-consistency error estimate obtained by
comparing against the same rule at half resolution.  Summation order is
fixed (lexicographic over nodes), so reports are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = [
    "QuadResult",
    "integrate_periodic",
    "integrate_patch",
    "integrate_simplex",
    "gauss_rule",
]


@dataclass(frozen=True)
class QuadResult:
    """Value of a quadrature together with a refinement-based error estimate."""

    value: complex
    error_estimate: float
    nodes_used: int


def _tensor_sum(f, axes_nodes, axes_weights):
    """Deterministic lexicographic tensor sum of f over node/weight axes."""
    total = 0.0 + 0.0j
    dims = [len(a) for a in axes_nodes]
    idx = [0] * len(dims)
    ranges = [range(d) for d in dims]
    if len(dims) == 1:
        for i in ranges[0]:
            total += axes_weights[0][i] * f(axes_nodes[0][i])
        return total
    if len(dims) == 2:
        for i in ranges[0]:
            for j in ranges[1]:
                total += (
                    axes_weights[0][i]
                    * axes_weights[1][j]
                    * f(axes_nodes[0][i], axes_nodes[1][j])
                )
        return total
    if len(dims) == 3:
        for i in ranges[0]:
            for j in ranges[1]:
                for k in ranges[2]:
                    total += (
                        axes_weights[0][i]
                        * axes_weights[1][j]
                        * axes_weights[2][k]
                        * f(axes_nodes[0][i], axes_nodes[1][j], axes_nodes[2][k])
                    )
        return total
    raise ValueError("only 1, 2, or 3 axes supported")


def _periodic_value(f, n, dim):
    theta = 2.0 * np.pi * np.arange(n) / n
    w = np.full(n, 2.0 * np.pi / n)
    return _tensor_sum(f, [theta] * dim, [w] * dim)


def integrate_periodic(f, n, dim=1):
    """Tensor trapezoid rule for a smooth periodic integrand on [0, 2*pi)^dim.

    Parameters
    ----------
    f : callable
        Takes ``dim`` angle arguments, returns a complex value.
    n : int
        Nodes per axis (must be even and >= 4 so the half-resolution
        comparison reuses the even-index subgrid).
    dim : int
        1, 2, or 3.
    """
    if dim not in (1, 2, 3):
        raise ValueError("dim must be 1, 2, or 3")
    if n < 4 or n % 2:
        raise ValueError("n must be an even integer >= 4")
    value = _periodic_value(f, n, dim)
    coarse = _periodic_value(f, n // 2, dim)
    return QuadResult(value, abs(value - coarse), n ** dim)


def gauss_rule(a, b, order):
    """Gauss-Legendre nodes and weights on the interval [a, b]."""
    x, w = leggauss(order)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid + half * x, half * w


def _patch_value(f, rect, order):
    axes = [gauss_rule(a, b, order) for a, b in rect]
    return _tensor_sum(f, [ax[0] for ax in axes], [ax[1] for ax in axes])


def integrate_patch(f, rect, order):
    """Tensor Gauss-Legendre rule over a rectangle.

    Parameters
    ----------
    f : callable of len(rect) scalars
    rect : sequence of (a, b) interval pairs, 1 to 3 of them
    order : int
        Gauss order per axis (>= 2).
    """
    rect = [(float(a), float(b)) for a, b in rect]
    if not 1 <= len(rect) <= 3:
        raise ValueError("rect must have 1 to 3 axes")
    if order < 2:
        raise ValueError("order must be >= 2")
    value = _patch_value(f, rect, order)
    coarse = _patch_value(f, rect, max(2, order // 2))
    return QuadResult(value, abs(value - coarse), order ** len(rect))


def _simplex_value(f, n, order):
    if n == 2:
        x, w = gauss_rule(0.0, 1.0, order)
        total = 0.0 + 0.0j
        for xi, wi in zip(x, w):
            total += wi * f(np.array([xi, 1.0 - xi]))
        return total
    # n == 3: Duffy collapse of the triangle {w1, w2 >= 0, w1 + w2 <= 1}
    # w1 = u*(1 - v), w2 = u*v, jacobian u; w3 = 1 - u.
    xu, wu = gauss_rule(0.0, 1.0, order)
    xv, wv = gauss_rule(0.0, 1.0, order)
    total = 0.0 + 0.0j
    for ui, wui in zip(xu, wu):
        for vi, wvi in zip(xv, wv):
            w1 = ui * (1.0 - vi)
            w2 = ui * vi
            total += wui * wvi * ui * f(np.array([w1, w2, 1.0 - ui]))
    return total


def integrate_simplex(f, n, order):
    """Integrate over the standard simplex slice {w >= 0, sum(w) = 1}.

    The slice is parameterized by its first ``n - 1`` coordinates (the last
    coordinate is ``1 - sum`` of the others), and the integral is taken
    against the positive parameter measure ``dw_1 ... dw_{n-1}``.  Any
    orientation sign belongs to the caller (the kernel layer), not here.

    Parameters
    ----------
    f : callable
        Receives the full barycentric vector ``w`` of length ``n``.
    n : int
        2 or 3.
    order : int
        Gauss order per collapsed axis.
    """
    if n not in (2, 3):
        raise ValueError("n must be 2 or 3")
    if order < 2:
        raise ValueError("order must be >= 2")
    value = _simplex_value(f, n, order)
    coarse = _simplex_value(f, n, max(2, order // 2))
    nodes = order if n == 2 else order ** 2
    return QuadResult(value, abs(value - coarse), nodes)
