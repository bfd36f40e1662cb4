"""Vectorized complete box sweeps for degree-2 lattices.

The certified stream in `lattice_enum` visits points one at a time, which is
fine up to a few hundred thousand points.  Boxes with 10^7..10^9 points need
the same exact answers without per-point Python objects.  The sweep here
fixes the second ideal coordinate c2 (outer loop) and computes the exact c1
ranges from the two embedding constraints in floating point WITH a rigorous
margin: integers certainly inside are bulk-processed by numpy, the few
integers inside the margin zone are handed to the exact membership test.
Norms are integer values of the exact binary quadratic form, evaluated in
int64 (magnitudes are pre-checked against overflow).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .config import DEFAULT_ENUMERATION
from .errors import InfeasibleEnumeration
from .lattice_enum import BoxCount, BoxTester, _element_from_ideal_coords


def _prepare(lattice, R_sq, E):
    field = lattice.field
    H = lattice.ideal.hnf
    assert H[1][0] == 0
    a = H[0][0]  # e1 = a (rational integer)
    e2 = lattice.ideal.basis_elements[1]

    # exact binary quadratic norm form N(c1 e1 + c2 e2)
    e1 = lattice.ideal.basis_elements[0]
    qA = int(e1.norm())
    qC = int(e2.norm())
    qB = int((e1 + e2).norm()) - qA - qC

    alpha_img = E.embed(lattice.alpha)
    e2_img = E.embed(e2)

    # W_i^2 = R^2 / (kappa^2 sigma_i(alpha)) as rational intervals
    W2 = []
    for i in range(2):
        denom = lattice.kappa_sq * alpha_img[i]
        W2.append((Fraction(R_sq) * Fraction(1, 1)) * _qinv(denom))
    U = [e2_img[0], e2_img[1]]

    w_f = [math.sqrt(float(w2.mid)) for w2 in W2]
    u_f = [float(u.mid) for u in U]

    # rigorous per-endpoint margin: m(c2) = (p + q*|c2|) / a
    eps = 2.0**-50
    dW = []
    for w2, wf in zip(W2, w_f):
        w2err = float(w2.width) / 2 + float(w2.mag()) * eps
        dW.append(w2err / max(2 * wf, 1e-300) + wf * eps)
    dU = [float(u.width) / 2 + abs(uf) * eps for u, uf in zip(U, u_f)]
    p_marg = max(dW[i] + 4 * eps * w_f[i] for i in range(2)) * 4
    q_marg = max(dU[i] + 4 * eps * abs(u_f[i]) for i in range(2)) * 4

    return a, u_f, w_f, (qA, qB, qC), p_marg, q_marg


def _qinv(qi):
    """Exact reciprocal of a positive rational interval."""
    from .qintervals import QInterval

    if qi.lo <= 0:
        raise ValueError("interval must be positive")
    return QInterval(1 / qi.hi, 1 / qi.lo)


def _c2_bound(a, u_f, w_f):
    du = abs(u_f[0] - u_f[1])
    if du <= 0:
        raise ZeroDivisionError("degenerate embedding difference")
    return int(math.floor((w_f[0] + w_f[1]) / du)) + 2


def _row_ranges(c2, a, u_f, w_f, p_marg, q_marg):
    """(sure_lo, sure_hi, edge candidates) for the c1 range at this c2."""
    lo = -math.inf
    hi = math.inf
    for i in range(2):
        l = (-w_f[i] - c2 * u_f[i]) / a
        h = (w_f[i] - c2 * u_f[i]) / a
        lo = max(lo, l)
        hi = min(hi, h)
    m = (p_marg + abs(c2) * q_marg) / a + 1e-9
    sure_lo = math.ceil(lo + m)
    sure_hi = math.floor(hi - m)
    edge = []
    out_lo = math.floor(lo - m)
    out_hi = math.ceil(hi + m)
    for t in range(out_lo, min(sure_lo, out_hi + 1)):
        edge.append(t)
    for t in range(max(sure_hi + 1, out_lo), out_hi + 1):
        edge.append(t)
    return sure_lo, sure_hi, sorted(set(edge))


def _sweep(lattice, R_sq, E, config, on_block, on_point):
    """Drive the sweep; on_block(c1_array, c2) for certain-inside columns,
    on_point(x) for exact-checked edge points."""
    a, u_f, w_f, form, p_marg, q_marg = _prepare(lattice, R_sq, E)
    tester = BoxTester(lattice, R_sq, E)
    C2 = _c2_bound(a, u_f, w_f)

    est = float(2 * C2 + 1) * (2 * (w_f[0] + w_f[1]) / a / 2 + 1)
    if est > config.max_cells:
        raise InfeasibleEnumeration(f"~{est:.2e} cells exceed budget")

    for c2 in range(-C2, C2 + 1):
        sure_lo, sure_hi, edge = _row_ranges(c2, a, u_f, w_f, p_marg, q_marg)
        if sure_hi >= sure_lo:
            c1s = np.arange(sure_lo, sure_hi + 1, dtype=np.int64)
            if c2 == 0:
                c1s = c1s[c1s != 0]
            if c1s.size:
                on_block(c1s, c2)
        for t in edge:
            if t == 0 and c2 == 0:
                continue
            x = _element_from_ideal_coords(lattice.ideal, (t, c2))
            if tester.contains(x):
                on_point(x)
    return form


def quadratic_box_power_sum(lattice, R_sq, E, s, config=DEFAULT_ENUMERATION):
    """(sum of 1/|N|^s, rigorous float error bound, point count) over the box."""
    A, B, C = _norm_form(lattice)
    total = 0.0
    err = 0.0
    npts = 0
    nblocks = 0
    eps = 2.0**-52

    a, u_f, w_f, _, _, _ = _prepare(lattice, R_sq, E)
    worst = max(abs(A), abs(B), abs(C)) * 3 * ((w_f[0] + w_f[1]) / a + _c2_bound(a, u_f, w_f) + 10) ** 2
    if worst >= 2**62:
        raise InfeasibleEnumeration("norm form would overflow int64; use the exact path")

    def on_block(c1s, c2):
        nonlocal total, err, npts, nblocks
        nvals = np.abs((A * c1s + B * c2) * c1s + C * (c2 * c2))
        assert nvals.min() >= 1
        terms = 1.0 / np.power(nvals.astype(np.float64), s)
        ssum = float(np.sum(terms))
        total += ssum
        # per-term power error + pairwise summation error, all relative to ssum
        err += (math.log2(max(terms.size, 2)) + s + 3) * eps * ssum
        npts += int(terms.size)
        nblocks += 1

    def on_point(x):
        nonlocal total, err, npts
        k = abs(x.norm())
        total += 1.0 / float(k) ** s
        err += 2.0**-50
        npts += 1

    _sweep(lattice, R_sq, E, config, on_block, on_point)
    err += (nblocks + 8) * eps * abs(total)  # block accumulation slack
    return total, err, npts


def _norm_form(lattice):
    e1, e2 = lattice.ideal.basis_elements
    qA = int(e1.norm())
    qC = int(e2.norm())
    qB = int((e1 + e2).norm()) - qA - qC
    return qA, qB, qC


def quadratic_box_histogram(lattice, R_sq, E, collect_norms=(),
                            config=DEFAULT_ENUMERATION) -> BoxCount:
    """Exact BoxCount via the vectorized sweep (degree 2)."""
    form = _norm_form(lattice)
    A, B, C = form

    # overflow guard for int64 evaluation
    a, u_f, w_f, _, _, _ = _prepare(lattice, R_sq, E)
    c1max = (w_f[0] + w_f[1]) / a + 10
    c2max = _c2_bound(a, u_f, w_f) + 10
    worst = max(abs(A), abs(B), abs(C)) * 3 * max(c1max, c2max) ** 2
    use_object = worst >= 2**62

    counts = {}
    witnesses = {}
    collect = set(collect_norms)
    npts = 0

    def record_array(nvals, c1s, c2):
        nonlocal npts
        uniq, cnt = np.unique(nvals, return_counts=True)
        for k, c in zip(uniq.tolist(), cnt.tolist()):
            counts[k] = counts.get(k, 0) + c
        npts += int(nvals.size)
        if collect:
            for k in collect:
                idx = np.nonzero(nvals == k)[0]
                for t in idx.tolist():
                    witnesses.setdefault(k, []).append(
                        _element_from_ideal_coords(lattice.ideal, (int(c1s[t]), c2))
                    )

    def on_block(c1s, c2):
        if use_object:
            ks = [abs((A * int(t) + B * c2) * int(t) + C * c2 * c2) for t in c1s.tolist()]
            nvals = np.array(ks, dtype=object)
        else:
            nvals = np.abs((A * c1s + B * c2) * c1s + C * (c2 * c2))
        record_array(nvals, c1s, c2)

    def on_point(x):
        nonlocal npts
        k = int(abs(x.norm()))
        counts[k] = counts.get(k, 0) + 1
        npts += 1
        if k in collect:
            witnesses.setdefault(k, []).append(x)

    _sweep(lattice, R_sq, E, config, on_block, on_point)
    return BoxCount(R_sq=Fraction(R_sq), counts=counts, total_points=npts,
                    witnesses=witnesses)
