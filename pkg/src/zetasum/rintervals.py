"""Outward-rounded real intervals for transcendental steps (log, exp, roots).

Thin wrapper over mpmath's interval context.  All conversions from exact
rationals use directed rounding, so enclosures stay sound.  mpmath keeps the
working precision in a context object; `workprec` scopes it.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, libmp


@contextmanager
def workprec(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def iv_from_fraction(q: Fraction, bits: int | None = None):
    """Interval enclosing an exact rational, endpoints rounded outward."""
    prec = bits if bits is not None else iv.prec
    q = Fraction(q)
    lo = libmp.from_rational(q.numerator, q.denominator, prec, "d")
    hi = libmp.from_rational(q.numerator, q.denominator, prec, "u")
    return iv.make_mpf((lo, hi))


def iv_from_qinterval(qi, bits: int | None = None):
    prec = bits if bits is not None else iv.prec
    lo = libmp.from_rational(qi.lo.numerator, qi.lo.denominator, prec, "d")
    hi = libmp.from_rational(qi.hi.numerator, qi.hi.denominator, prec, "u")
    return iv.make_mpf((lo, hi))


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of an mpf endpoint (raw tuple or mpf-like)."""
    t = x if isinstance(x, tuple) else x._mpf_
    sign, man, exp, _ = t
    if man == 0:
        return Fraction(0)
    v = Fraction(int(man), 1) * Fraction(2) ** exp
    return -v if sign else v


def iv_bounds(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath interval."""
    return mpf_to_fraction(x.a._mpi_[0]), mpf_to_fraction(x.b._mpi_[1])


def iv_log(x):
    return iv.log(x)


def iv_exp(x):
    return iv.exp(x)


def iv_sqrt(x):
    return iv.sqrt(x)


def iv_contains_zero(x) -> bool:
    return x.a <= 0 <= x.b


def iv_width(x) -> float:
    return float(x.delta.b)


def iv_mid(x) -> float:
    return float(x.mid.a)


def iv_abs_log(qi, bits: int | None = None):
    """log|I| for an exact rational interval certainly away from zero."""
    if qi.sign() == 0:
        raise ValueError("interval touches zero; refine first")
    a = abs(qi)
    return iv.log(iv_from_qinterval(a, bits))


def iv_det(mat):
    """Interval determinant by cofactor expansion (small matrices only)."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    acc = iv.mpf(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = mat[0][j] * iv_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def iv_solve(mat, rhs):
    """Solve a small square interval system by Cramer's rule."""
    n = len(mat)
    det = iv_det(mat)
    if iv_contains_zero(det):
        raise ZeroDivisionError("interval determinant contains zero")
    out = []
    for j in range(n):
        col = [[mat[i][k] if k != j else rhs[i] for k in range(n)] for i in range(n)]
        out.append(iv_det(col) / det)
    return out
