"""Exact univariate polynomial helpers: Sturm sequences and root isolation.

Polynomials are tuples of Fractions in ascending degree order.  Everything
here is exact; root enclosures are rational intervals produced by bisection,
so refining an enclosure always nests inside the previous one.
"""

from __future__ import annotations

from fractions import Fraction

from .qintervals import QInterval


def poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def poly_degree(p) -> int:
    return len(p) - 1


def poly_eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_eval_interval(p, xi: QInterval) -> QInterval:
    """Interval Horner evaluation; exact over rational intervals."""
    acc = QInterval.point(0)
    for c in reversed(p):
        acc = acc * xi + QInterval.point(c)
    return acc


def poly_derivative(p):
    d = poly_trim(tuple(c * k for k, c in enumerate(p))[1:])
    return d if d else (Fraction(0),)


def poly_neg(p):
    return tuple(-c for c in p)


def poly_divmod(num, den):
    num = list(poly_trim(num))
    den = list(poly_trim(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        while num and num[-1] == 0:
            num.pop()
    return poly_trim(quot), poly_trim(num)


def sturm_chain(p):
    p = poly_trim(p)
    chain = [p, poly_derivative(p)]
    while poly_degree(chain[-1]) > 0:
        _, rem = poly_divmod(chain[-2], chain[-1])
        if not rem:
            # not squarefree: divide the chain by the gcd instead of failing
            g = chain[-1]
            chain = [poly_divmod(q, g)[0] for q in chain]
            continue
        chain.append(poly_neg(rem))
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = poly_eval(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_changes_at_inf(chain, positive: bool) -> int:
    signs = []
    for q in chain:
        if not q or all(c == 0 for c in q):
            continue
        lead = q[-1]
        deg = poly_degree(q)
        s = 1 if lead > 0 else -1
        if not positive and deg % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in (lo, hi]; None means +-infinity."""
    chain = sturm_chain(p)
    va = _sign_changes(chain, lo) if lo is not None else _sign_changes_at_inf(chain, False)
    vb = _sign_changes(chain, hi) if hi is not None else _sign_changes_at_inf(chain, True)
    return va - vb


def is_squarefree(p) -> bool:
    g, r = p, poly_derivative(p)
    while r and any(c != 0 for c in r):
        g, r = r, poly_divmod(g, r)[1]
    return poly_degree(poly_trim(g)) == 0


def root_bound(p) -> Fraction:
    """Cauchy bound: all real roots lie in [-B, B]."""
    p = poly_trim(p)
    lead = abs(p[-1])
    b = max((abs(c) / lead for c in p[:-1]), default=Fraction(0))
    return b + 1


def isolate_real_roots(p) -> list[QInterval]:
    """Disjoint rational intervals, each containing exactly one real root.

    Interval endpoints are never roots.  Roots come back sorted ascending.
    """
    p = poly_trim(p)
    chain = sturm_chain(p)
    bound = root_bound(p)

    def count(lo, hi):
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    def safe_split(lo, hi):
        # midpoint that is not a root (shift by a small amount if it is)
        mid = (lo + hi) / 2
        step = (hi - lo) / 64
        while poly_eval(p, mid) == 0:
            mid += step
            step /= 2
            if mid >= hi:
                raise RuntimeError("could not find a non-root split point")
        return mid

    lo, hi = -bound, bound
    # make sure the outer endpoints are not roots
    while poly_eval(p, lo) == 0:
        lo -= 1
    while poly_eval(p, hi) == 0:
        hi += 1

    out = []
    stack = [(lo, hi, count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(QInterval(a, b))
            continue
        m = safe_split(a, b)
        stack.append((a, m, count(a, m)))
        stack.append((m, b, count(m, b)))
    out.sort(key=lambda it: it.lo)
    return out


def refine_root(p, enclosure: QInterval, max_width: Fraction) -> QInterval:
    """Shrink a single-root enclosure by bisection until width <= max_width.

    The result is nested inside the input, and endpoints stay non-roots.
    """
    lo, hi = enclosure.lo, enclosure.hi
    s_lo = poly_eval(p, lo)
    s_hi = poly_eval(p, hi)
    if s_lo == 0 or s_hi == 0:
        raise ValueError("enclosure endpoint is a root")
    sign_lo = s_lo > 0
    while hi - lo > max_width:
        mid = (lo + hi) / 2
        v = poly_eval(p, mid)
        if v == 0:
            # exact rational root: collapse around it just off-center
            eps = (hi - lo) / 1024
            lo, hi = mid - eps, mid + eps
            # endpoints must not be roots; a poly has finitely many
            while poly_eval(p, lo) == 0:
                lo -= eps / 7
            while poly_eval(p, hi) == 0:
                hi += eps / 7
            if hi - lo <= max_width:
                break
            continue
        if (v > 0) == sign_lo:
            lo = mid
        else:
            hi = mid
    return QInterval(lo, hi)
