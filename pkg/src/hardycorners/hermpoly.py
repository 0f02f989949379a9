"""Real-valued polynomial defining functions in (z1, conj(z1), z2, conj(z2)).

A boundary hypersurface is cut out by a real-valued polynomial in the two
complex variables and their conjugates.  Restricting to polynomials keeps
every derivative exact: the Wirtinger derivatives used by the kernels and
the complex Hessian used by the boundary measure are term-by-term exponent
arithmetic, so no numerical differentiation enters any invariance test.

Realness is equivalent to Hermitian symmetry of the coefficient table:
the coefficient of ``z1^p1 conj(z1)^q1 z2^p2 conj(z2)^q2`` must equal the
conjugate of the coefficient of the exponent-swapped monomial
``(q1, p1, q2, p2)``.  :func:`parse_poly` enforces this and reports the
offending term pair when it fails.

The text grammar (stable across versions, used verbatim inside domain-spec
files)::

    poly    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := coeff | var | var "^" int | "conj(" var ")" ["^" int]
             | "abs2(" var ")"
    coeff   := float | "(" float "," float ")"      # (re, im)
    var     := "z1" | "z2"

``abs2(z1)`` is sugar for ``z1*conj(z1)``.  Exponents are non-negative
integers; an omitted exponent means 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .projective import HomVec

__all__ = [
    "Poly",
    "HermitianPoly",
    "PolyParseError",
    "HermitianSymmetryError",
    "parse_poly",
    "wirtinger",
    "gradient_hyperplane",
    "transform_poly",
]

# Exponent keys are 4-tuples (p1, q1, p2, q2) for z1^p1 conj(z1)^q1 z2^p2 conj(z2)^q2.
_VARS = ("z1", "z1bar", "z2", "z2bar")


def _canonical(terms):
    out = {}
    for key, coeff in terms.items():
        if coeff == 0:
            continue
        out[key] = out.get(key, 0.0 + 0.0j) + complex(coeff)
    return {k: v for k, v in sorted(out.items()) if v != 0}


class Poly:
    """Polynomial in (z1, conj z1, z2, conj z2) with complex coefficients.

    Not necessarily real-valued; this is the common representation for
    Wirtinger derivatives of the real defining functions.
    """

    def __init__(self, terms=None):
        self.terms = _canonical(terms or {})

    def __call__(self, z1, z2):
        z1 = complex(z1)
        z2 = complex(z2)
        z1b = z1.conjugate()
        z2b = z2.conjugate()
        total = 0.0 + 0.0j
        for (p1, q1, p2, q2), c in self.terms.items():
            total += c * z1 ** p1 * z1b ** q1 * z2 ** p2 * z2b ** q2
        return total

    def diff(self, var):
        """Exact partial derivative with respect to one of z1, z1bar, z2, z2bar."""
        i = _VARS.index(var)
        out = {}
        for key, c in self.terms.items():
            e = key[i]
            if e == 0:
                continue
            new = list(key)
            new[i] = e - 1
            new = tuple(new)
            out[new] = out.get(new, 0.0 + 0.0j) + c * e
        return Poly(out)

    def conj(self):
        """Complex conjugate polynomial (swaps holomorphic/antiholomorphic exponents)."""
        return Poly(
            {(q1, p1, q2, p2): c.conjugate() for (p1, q1, p2, q2), c in self.terms.items()}
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0.0 + 0.0j) + c
        return Poly(out)

    def __mul__(self, scalar):
        return Poly({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def max_degrees(self):
        """(holomorphic degree, antiholomorphic degree) over all terms."""
        dh = max((p1 + p2 for (p1, q1, p2, q2) in self.terms), default=0)
        da = max((q1 + q2 for (p1, q1, p2, q2) in self.terms), default=0)
        return dh, da

    def __repr__(self):
        return f"Poly({self.terms!r})"


class HermitianSymmetryError(ValueError):
    """Raised when a would-be defining function is not real-valued."""

    def __init__(self, pairs):
        self.pairs = pairs
        lines = []
        for key, coeff, skey, scoeff in pairs:
            lines.append(
                f"coefficient {coeff} of {_monomial_str(key)} must equal the "
                f"conjugate of coefficient {scoeff} of {_monomial_str(skey)}"
            )
        super().__init__("polynomial is not real-valued: " + "; ".join(lines))


def _monomial_str(key):
    p1, q1, p2, q2 = key
    parts = []
    for name, e in (("z1", p1), ("conj(z1)", q1), ("z2", p2), ("conj(z2)", q2)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class HermitianPoly(Poly):
    """A real-valued polynomial: coefficient table with Hermitian symmetry."""

    def __init__(self, terms=None, _tol=1e-12):
        super().__init__(terms)
        bad = []
        seen = set()
        for key, c in self.terms.items():
            if key in seen:
                continue
            p1, q1, p2, q2 = key
            skey = (q1, p1, q2, p2)
            seen.add(key)
            seen.add(skey)
            sc = self.terms.get(skey, 0.0 + 0.0j)
            scale = max(abs(c), abs(sc), 1.0)
            if abs(c - sc.conjugate()) > _tol * scale:
                bad.append((key, c, skey, sc))
        if bad:
            raise HermitianSymmetryError(bad)

    def __call__(self, z1, z2):
        """Evaluate; realness is structural, so return a float."""
        return Poly.__call__(self, z1, z2).real

    def eval_complex(self, z1, z2):
        """Evaluate without discarding the (tiny, roundoff-level) imaginary part."""
        return Poly.__call__(self, z1, z2)

    def grad(self, z1, z2):
        """Holomorphic Wirtinger gradient (d/dz1, d/dz2) evaluated at a point."""
        return np.array(
            [
                Poly.__call__(self.diff("z1"), z1, z2),
                Poly.__call__(self.diff("z2"), z1, z2),
            ],
            dtype=complex,
        )

    def grad_real(self, z1, z2):
        """Real gradient (d/dx1, d/dy1, d/dx2, d/dy2) as a length-4 real vector."""
        g = self.grad(z1, z2)
        return np.array([2 * g[0].real, -2 * g[0].imag, 2 * g[1].real, -2 * g[1].imag])

    def hessian_complex(self, z1, z2):
        """Complex Hessian H[j, k] = d^2 rho / (dz_k d conj(z_j)) as a 2x2 array."""
        h = np.empty((2, 2), dtype=complex)
        for j, bvar in enumerate(("z1bar", "z2bar")):
            db = self.diff(bvar)
            for k, hvar in enumerate(("z1", "z2")):
                h[j, k] = Poly.__call__(db.diff(hvar), z1, z2)
        return h

    def __repr__(self):
        return f"HermitianPoly({self.terms!r})"


class PolyParseError(ValueError):
    """Syntax error in the defining-function grammar, with source position."""

    def __init__(self, message, pos, text):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}")


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def error(self, message, pos=None):
        raise PolyParseError(message, self.pos if pos is None else pos, self.text)

    def expect(self, literal):
        self._skip_ws()
        if not self.text.startswith(literal, self.pos):
            self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def try_literal(self, literal):
        self._skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def number(self):
        self._skip_ws()
        start = self.pos
        i = self.pos
        text = self.text
        if i < len(text) and text[i] in "+-":
            i += 1
        digits = False
        while i < len(text) and (text[i].isdigit() or text[i] == "."):
            digits = True
            i += 1
        if i < len(text) and text[i] in "eE":
            j = i + 1
            if j < len(text) and text[j] in "+-":
                j += 1
            if j < len(text) and text[j].isdigit():
                i = j
                while i < len(text) and text[i].isdigit():
                    i += 1
        if not digits:
            self.error("expected a number")
        self.pos = i
        return float(text[start:i])

    def integer(self):
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a non-negative integer exponent")
        return int(self.text[start : self.pos])


def _parse_var(tok):
    if tok.try_literal("z1"):
        return 0
    if tok.try_literal("z2"):
        return 2
    tok.error("expected variable z1 or z2")


def _parse_factor(tok):
    """Return (coeff, exponent-4-tuple) for one factor."""
    ch = tok.peek()
    if ch is None:
        tok.error("unexpected end of input")
    if ch == "(":
        # complex coefficient (re, im)
        tok.expect("(")
        re = tok.number()
        tok.expect(",")
        im = tok.number()
        tok.expect(")")
        return complex(re, im), (0, 0, 0, 0)
    if ch.isdigit() or ch == ".":
        return complex(tok.number()), (0, 0, 0, 0)
    if tok.try_literal("abs2("):
        slot = _parse_var(tok)
        tok.expect(")")
        exps = [0, 0, 0, 0]
        exps[slot] = 1
        exps[slot + 1] = 1
        return 1.0 + 0.0j, tuple(exps)
    conj = tok.try_literal("conj(")
    slot = _parse_var(tok)
    if conj:
        tok.expect(")")
        slot += 1
    e = 1
    if tok.try_literal("^"):
        e = tok.integer()
    exps = [0, 0, 0, 0]
    exps[slot] = e
    return 1.0 + 0.0j, tuple(exps)


def _parse_term(tok, sign):
    coeff = complex(sign)
    exps = [0, 0, 0, 0]
    while True:
        c, e = _parse_factor(tok)
        coeff *= c
        exps = [a + b for a, b in zip(exps, e)]
        if not tok.try_literal("*"):
            break
    return tuple(exps), coeff


def parse_poly(text):
    """Parse the defining-function grammar into a :class:`HermitianPoly`.

    Raises
    ------
    PolyParseError
        On malformed input, with the source position of the failure.
    HermitianSymmetryError
        When the polynomial is not real-valued, listing the offending
        coefficient pair(s).

    Examples
    --------
    >>> p = parse_poly("abs2(z1) + abs2(z2) - 1")
    >>> round(p(0.6, 0.8), 12)
    0.0
    """
    if not isinstance(text, str):
        raise TypeError("parse_poly expects a string")
    tok = _Tokenizer(text)
    if tok.peek() is None:
        tok.error("empty polynomial")
    terms = {}
    sign = 1.0
    if tok.try_literal("+"):
        pass
    elif tok.try_literal("-"):
        sign = -1.0
    while True:
        key, coeff = _parse_term(tok, sign)
        terms[key] = terms.get(key, 0.0 + 0.0j) + coeff
        ch = tok.peek()
        if ch is None:
            break
        if tok.try_literal("+"):
            sign = 1.0
        elif tok.try_literal("-"):
            sign = -1.0
        else:
            tok.error("expected '+', '-' or end of input")
    return HermitianPoly(terms)


def wirtinger(p, which):
    """Exact Wirtinger derivative of a polynomial.

    Parameters
    ----------
    p : Poly
    which : str
        One of ``"z1"``, ``"z2"``, ``"z1bar"``, ``"z2bar"``.
    """
    if which not in _VARS:
        raise ValueError(f"which must be one of {_VARS}, got {which!r}")
    return p.diff(which)


def gradient_hyperplane(rho, zhat):
    """The tangent hyperplane cut out by the holomorphic gradient at a boundary point.

    Returns the hyperplane ``[-(r1*z1 + r2*z2) : r1 : r2]`` with
    ``r_j = d rho / d z_j`` evaluated at the affine point; it is incident to
    ``[1 : z1 : z2]`` exactly by construction.
    """
    z1, z2 = zhat
    g = rho.grad(z1, z2)
    if np.max(np.abs(g)) <= 1e-14:
        raise ValueError("vanishing complex gradient: degenerate boundary point")
    return HomVec(
        (-(g[0] * complex(z1) + g[1] * complex(z2)), g[0], g[1]),
        role="hyperplane",
    )


def _linear_forms_product(rows, exps):
    """Expand prod_i (rows[i] . Z)^exps[i] into a homogeneous triple-exponent dict.

    Returns a dict mapping (e0, e1, e2) -> coefficient for the polynomial in
    (z0, z1, z2).
    """
    result = {(0, 0, 0): 1.0 + 0.0j}
    for row, e in zip(rows, exps):
        for _ in range(e):
            new = {}
            for key, c in result.items():
                for j in range(3):
                    if row[j] == 0:
                        continue
                    nk = list(key)
                    nk[j] += 1
                    nk = tuple(nk)
                    new[nk] = new.get(nk, 0.0 + 0.0j) + c * row[j]
            result = new
    return result


def transform_poly(rho, t, degree=None):
    """Defining function of the image hypersurface under a projective map.

    Bihomogenizes ``rho`` to degree ``degree`` in the coordinates and in their
    conjugates (default: the polynomial's own max degree), substitutes the
    rows of the inverse matrix, and dehomogenizes at ``z0 = 1``.  The result
    equals ``|den|**(2*degree) * rho(T^(-1) z)`` with a positive factor, so it
    is a valid defining function for the transformed hypersurface with the
    same sign convention.

    When several hypersurfaces of one domain are transformed together, pass a
    common *degree* (the max over the family): quantities built from several
    gradients at once then rescale coherently.
    """
    from .projective import ProjMap, normalize_map

    if not isinstance(t, ProjMap):
        t = normalize_map(t)
    dh, da = rho.max_degrees()
    d = max(dh, da)
    if degree is None:
        degree = d
    if degree < d:
        raise ValueError(f"degree {degree} is below the polynomial degree {d}")
    n = np.linalg.inv(t.matrix)
    nrows = [tuple(n[i]) for i in range(3)]
    crows = [tuple(np.conj(n[i])) for i in range(3)]

    out = {}
    for (p1, q1, p2, q2), coeff in rho.terms.items():
        e0 = degree - p1 - p2
        f0 = degree - q1 - q2
        holo = _linear_forms_product(nrows, (e0, p1, p2))
        anti = _linear_forms_product(crows, (f0, q1, q2))
        for (h0, h1, h2), hc in holo.items():
            for (a0, a1, a2), ac in anti.items():
                key = (h1, a1, h2, a2)  # dehomogenize: z0 = conj(z0) = 1
                out[key] = out.get(key, 0.0 + 0.0j) + coeff * hc * ac
    # roundoff can leave ~1e-17 asymmetries; resymmetrize exactly
    sym = {}
    for key, c in out.items():
        p1, q1, p2, q2 = key
        skey = (q1, p1, q2, p2)
        mate = out.get(skey, 0.0 + 0.0j)
        sym[key] = (c + mate.conjugate()) / 2.0
    sym = {k: v for k, v in sym.items() if abs(v) > 1e-14}
    return HermitianPoly(sym)
