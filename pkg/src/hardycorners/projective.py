"""Homogeneous coordinates, projective maps, duality, and weighted sections.

Points and hyperplanes of complex projective 2-space are represented by
triples of homogeneous coordinates.  A point ``z = [z0 : z1 : z2]`` and a
hyperplane ``w = [w0 : w1 : w2]`` are incident when the bilinear pairing
``w0*z0 + w1*z1 + w2*z2`` vanishes.  Projective transformations are carried
by 3x3 matrices normalized to unit determinant; the hyperplane side
transforms by the inverse transpose, which preserves the pairing.

Weighted sections: a function ``F`` on nonzero coordinate triples has
bidegree ``(j, k)`` when ``F(lam * Z) = lam**j * conj(lam)**k * F(Z)``.
Such a section is determined by its values at affine representatives
``(1, z1, z2)``, and pulling back along a map with matrix ``M`` multiplies
the affine value by ``den**j * conj(den)**k`` with
``den = M[0,0] + M[0,1]*z1 + M[0,2]*z2``.  Half-integer bidegrees are kept
as exact :class:`fractions.Fraction` pairs; for those only modulus-level
statements are branch-independent, and :func:`pull_back_section` uses the
principal branch and flags the value as chart dependent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "HomVec",
    "ProjMap",
    "Section",
    "SectionValue",
    "normalize_map",
    "dual_map",
    "pair",
    "pull_back_section",
    "proj_equal",
    "homogenize",
    "affinize",
]


def _as_triple(v):
    """Coerce a HomVec or length-3 sequence to a complex numpy triple."""
    if isinstance(v, HomVec):
        return v.array
    a = np.asarray(v, dtype=complex)
    if a.shape != (3,):
        raise ValueError(f"expected 3 homogeneous coordinates, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class HomVec:
    """A point or hyperplane of projective 2-space in homogeneous coordinates.

    Parameters
    ----------
    coords : tuple of 3 complex
        Homogeneous coordinates, not all zero.
    role : str
        Either ``"point"`` or ``"hyperplane"``.  The incidence pairing
        checks that it is fed one of each.
    """

    coords: tuple
    role: str = "point"

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coords)
        if len(c) != 3:
            raise ValueError("HomVec needs exactly 3 coordinates")
        if max(abs(x) for x in c) == 0.0:
            raise ValueError("all homogeneous coordinates are zero")
        if self.role not in ("point", "hyperplane"):
            raise ValueError(f"unknown role {self.role!r}")
        object.__setattr__(self, "coords", c)

    @property
    def array(self):
        return np.array(self.coords, dtype=complex)

    @classmethod
    def from_affine(cls, zhat, role="point"):
        """Lift an affine pair (z1, z2) to the representative [1 : z1 : z2]."""
        z1, z2 = zhat
        return cls((1.0, complex(z1), complex(z2)), role)

    def affine(self):
        """Return (z1/z0, z2/z0); error on the hyperplane at infinity of the chart."""
        z0, z1, z2 = self.coords
        if abs(z0) <= 1e-300:
            raise ZeroDivisionError("representative lies on the affinization pole z0 = 0")
        return (z1 / z0, z2 / z0)

    def normalized(self):
        """Scale so the largest-modulus coordinate becomes exactly 1."""
        a = self.array
        i = int(np.argmax(np.abs(a)))
        return HomVec(tuple(a / a[i]), self.role)


def proj_equal(u, v, tol=1e-10):
    """Projective equality: proportional coordinates within relative *tol*.

    Both arguments are scaled so their largest-modulus coordinate is 1 and
    compared entrywise.
    """
    a = _as_triple(u)
    b = _as_triple(v)
    a = a / a[int(np.argmax(np.abs(a)))]
    b = b / b[int(np.argmax(np.abs(b)))]
    return bool(np.max(np.abs(a - b)) <= tol)


def homogenize(zhat):
    """Affine pair (z1, z2) -> numpy triple (1, z1, z2)."""
    z1, z2 = zhat
    return np.array([1.0, complex(z1), complex(z2)], dtype=complex)


def affinize(z):
    """Numpy triple -> affine pair (z1/z0, z2/z0)."""
    a = _as_triple(z)
    if abs(a[0]) <= 1e-300:
        raise ZeroDivisionError("representative lies on the affinization pole z0 = 0")
    return (a[1] / a[0], a[2] / a[0])


def _principal_cube_root(c):
    """Principal cube root r^(1/3) * exp(i*arg/3) with arg in (-pi, pi]."""
    r = abs(c)
    if r == 0.0:
        raise ZeroDivisionError("cube root of zero")
    return r ** (1.0 / 3.0) * np.exp(1j * np.angle(c) / 3.0)


@dataclass(frozen=True)
class ProjMap:
    """A projective transformation of CP^2 with unit-determinant matrix.

    The matrix acts on column vectors of homogeneous coordinates:
    ``Z' = M @ Z``.  Use :func:`normalize_map` to build one from an arbitrary
    invertible matrix.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError("ProjMap matrix must be 3x3")
        if abs(np.linalg.det(m) - 1.0) > 1e-9:
            raise ValueError("ProjMap matrix must have unit determinant; use normalize_map")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def apply(self, z):
        """Apply to a homogeneous triple (or point HomVec); returns a triple."""
        return self.matrix @ _as_triple(z)

    def den(self, zhat):
        """Homogeneous denominator M00 + M01*z1 + M02*z2 at an affine point."""
        z1, z2 = zhat
        m = self.matrix
        return m[0, 0] + m[0, 1] * complex(z1) + m[0, 2] * complex(z2)

    def affine(self, zhat):
        """Apply as a fractional-linear map on affine pairs."""
        out = self.matrix @ homogenize(zhat)
        if abs(out[0]) <= 1e-14 * np.max(np.abs(out)):
            raise ZeroDivisionError("image lies on the affinization pole z0 = 0")
        return (out[1] / out[0], out[2] / out[0])

    def jacobian(self, zhat):
        """Exact complex 2x2 Jacobian of the affine action at *zhat*."""
        m = self.matrix
        zh = homogenize(zhat)
        den = m[0] @ zh
        num1 = m[1] @ zh
        num2 = m[2] @ zh
        jac = np.empty((2, 2), dtype=complex)
        for i, num in ((0, num1), (1, num2)):
            for j in (0, 1):
                jac[i, j] = (m[i + 1, j + 1] * den - num * m[0, j + 1]) / den ** 2
        return jac

    def inverse(self):
        return ProjMap(_unit_det(np.linalg.inv(self.matrix)))

    def __matmul__(self, other):
        """Composition: (self @ other) applies *other* first."""
        if not isinstance(other, ProjMap):
            return NotImplemented
        return ProjMap(_unit_det(self.matrix @ other.matrix))

    @classmethod
    def identity(cls):
        return cls(np.eye(3, dtype=complex))


def _unit_det(m):
    d = np.linalg.det(m)
    if abs(d) < 1e-300:
        raise ValueError("singular matrix cannot define a projective map")
    return m / _principal_cube_root(d)


def normalize_map(m):
    """Scale an invertible 3x3 matrix to unit determinant (principal cube root).

    The three cube-root choices differ by a cube root of unity; fixing the
    principal root makes the normalization deterministic, and every invariance
    statement downstream compares moduli or projective classes so the residual
    root-of-unity ambiguity washes out.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    d = np.linalg.det(m)
    if not np.isfinite(d) or abs(d) < 1e-300:
        raise ValueError("singular matrix cannot define a projective map")
    return ProjMap(m / _principal_cube_root(d))


def dual_map(t):
    """The induced action on hyperplanes: the inverse-transpose matrix.

    Satisfies ``pair(T z, dual_map(T) w) == pair(z, w)`` identically.
    """
    if not isinstance(t, ProjMap):
        t = normalize_map(t)
    return ProjMap(_unit_det(np.linalg.inv(t.matrix).T))


def pair(z, w):
    """Incidence pairing sum(w_j * z_j); zero iff the point lies on the hyperplane."""
    if isinstance(z, HomVec) and isinstance(w, HomVec):
        if z.role == w.role:
            raise ValueError(
                f"pairing needs one point and one hyperplane, got two {z.role}s"
            )
        if z.role == "hyperplane":
            z, w = w, z
    return complex(_as_triple(z) @ _as_triple(w))


@dataclass(frozen=True)
class Section:
    """A weighted section given by its affine value function.

    ``func(zhat)`` returns the value at the representative ``(1, z1, z2)``;
    ``bidegree`` is the exact weight pair ``(j, k)`` (Fractions allowed).
    """

    func: object
    bidegree: tuple

    def __post_init__(self):
        j, k = self.bidegree
        object.__setattr__(self, "bidegree", (Fraction(j), Fraction(k)))

    def __call__(self, zhat):
        return self.func(zhat)


@dataclass(frozen=True)
class SectionValue:
    """A section value with its weight data and the basepoint representative."""

    value: complex
    bidegree: tuple
    basepoint: HomVec
    chart_dependent: bool = False


def _frac_power(base, expo):
    """base**expo for a Fraction exponent, principal branch."""
    if expo.denominator == 1:
        return base ** int(expo)
    return np.exp(complex(expo) * np.log(complex(base)))


def pull_back_section(t, f, zhat):
    """Pull a weighted section back along a projective map, at an affine point.

    For bidegree ``(j, k)`` the affine transformation law is

        (T* f)(z) = den**j * conj(den)**k * f(T(z)),
        den = M00 + M01*z1 + M02*z2.

    Half-integer exponents use the principal branch of ``den`` and the result
    is flagged ``chart_dependent`` (only its modulus is invariant).
    """
    if not isinstance(t, ProjMap):
        t = normalize_map(t)
    if not isinstance(f, Section):
        raise TypeError("f must be a Section (affine value function + bidegree)")
    den = t.den(zhat)
    if abs(den) <= 1e-14:
        raise ZeroDivisionError(
            "affine point lies on the pole hyperplane of this affinization"
        )
    j, k = f.bidegree
    image = t.affine(zhat)
    half = j.denominator != 1 or k.denominator != 1
    value = _frac_power(den, j) * _frac_power(np.conj(den), k) * f(image)
    return SectionValue(
        value=value,
        bidegree=(j, k),
        basepoint=HomVec.from_affine(zhat),
        chart_dependent=half,
    )
