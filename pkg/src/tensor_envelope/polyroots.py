"""Roots of univariate polynomials over Q or Q(t).

Only roots lying in the ground field are returned.  Over Q(t) the polynomial
is cleared of denominators and factored as a bivariate integer polynomial;
factors of degree one in x give the roots.
"""

from __future__ import annotations

import flint
from flint import fmpq, fmpq_poly, fmpz_poly

from .scalar import Scalar

_CTX = None


def _ctx():
    global _CTX
    if _CTX is None:
        _CTX = flint.fmpz_mpoly_ctx.get(("x", "t"), "lex")
    return _CTX


def roots(F, coeffs):
    """Roots in F of sum coeffs[i] x^i, as a list of (root, multiplicity), and
    the total degree accounted for by linear factors."""
    if F.is_generic:
        return _roots_qt(coeffs)
    return _roots_q(coeffs)


def _roots_q(coeffs):
    p = fmpq_poly([fmpq(c) for c in coeffs])
    out = []
    _, facs = p.factor()
    for fac, mult in facs:
        if fac.degree() == 1:
            c = fac.coeffs()
            out.append((-fmpq(c[0]) / fmpq(c[1]), mult))
    return sorted(out, key=lambda rm: rm[0]), sum(m for _, m in out)


def _lcm(a: fmpz_poly, b: fmpz_poly) -> fmpz_poly:
    return (a * b) // a.gcd(b)


def _roots_qt(coeffs):
    coeffs = [Scalar.coerce(c) for c in coeffs]
    den = fmpz_poly([1])
    for c in coeffs:
        den = _lcm(den, c.den)
    ctx = _ctx()
    x, t = ctx.gens()
    P = ctx.from_dict({})
    for i, c in enumerate(coeffs):
        num = c.num * (den // c.den)
        for k, a in enumerate(num.coeffs()):
            if a != 0:
                P += int(a) * x ** i * t ** k
    out = []
    _, facs = P.factor()
    for fac, mult in facs:
        d = fac.degrees()
        if d[0] != 1:
            continue
        # fac = a(t) x + b(t)
        a_coeffs, b_coeffs = {}, {}
        for (ex, et), c in fac.to_dict().items():
            (a_coeffs if ex == 1 else b_coeffs)[et] = int(c)
        a = fmpz_poly([a_coeffs.get(k, 0) for k in range(max(a_coeffs) + 1)])
        b = fmpz_poly([b_coeffs.get(k, 0) for k in range(max(b_coeffs) + 1)]) if b_coeffs else fmpz_poly()
        out.append((Scalar(-b, a), mult))
    out.sort(key=lambda rm: str(rm[0]))
    return out, sum(m for _, m in out)
