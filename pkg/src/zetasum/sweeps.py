"""Complete sweeps counting canonical orbit representatives by norm.

principal_ideal_counts needs, for every k <= k_max, the number of unit-orbit
representatives x in an ideal with |N(x)| = k.  All such representatives lie
in a per-embedding box derived from the unit log-lattice spans, so a complete
scan of that box with exact norm and canonicality filters produces the exact
histogram.

Degree 2 is fully exact integer arithmetic: the canonical-domain conditions
reduce to sign tests of u + v sqrt(D) with integer u, v, vectorized over
numpy int64 (with an object-dtype fallback when magnitudes approach 2^63).
Degree >= 3 uses float filters with rigorous margins; candidates inside the
margin zone fall back to the exact object-level test.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .config import DEFAULT_ENUMERATION, EnumerationConfig
from .errors import InfeasibleEnumeration
from .ideal_arith import Ideal
from .intmat import mat_inverse
from .nf_core import EmbeddingSet
from .unit_group import UnitSystem, is_canonical_rep, unit_power


# -- degree 2: exact integer sweep ------------------------------------------------


def _sqrtD_sign_int64(u, v, D):
    """Vectorized exact sign of u + v*sqrt(D) for integer arrays u, v."""
    sign = np.zeros(u.shape, dtype=np.int8)
    both_nonneg = (u >= 0) & (v >= 0)
    both_nonpos = (u <= 0) & (v <= 0)
    nonzero = (u != 0) | (v != 0)
    sign[both_nonneg & nonzero] = 1
    sign[both_nonpos & nonzero] = -1
    mixed = ~(both_nonneg | both_nonpos)
    if np.any(mixed):
        um = u[mixed]
        vm = v[mixed]
        t = um * um - vm * vm * D  # sign of u^2 - v^2 D matches sign of u when u>0>v etc.
        s = np.where(t > 0, np.sign(um), np.where(t < 0, np.sign(vm), 0)).astype(np.int8)
        sign[mixed] = s
    return sign


def quadratic_orbit_histogram(a: Ideal, units: UnitSystem, E: EmbeddingSet,
                              k_max: int,
                              config: EnumerationConfig = DEFAULT_ENUMERATION):
    """Exact a_k histogram (k = 1..k_max) for a degree-2 ideal."""
    field = a.field
    assert field.degree == 2
    D = field.disc
    w = field.element([0, 1])
    tr = int(w.trace())
    # omega^2 = t0 + t1*omega
    w2 = w * w
    t0, t1 = int(w2.coords[0]), int(w2.coords[1])
    n_w = int(w.norm())

    eps = units.units[0]
    eps2 = eps * eps
    g0, g1 = int(eps2.coords[0]), int(eps2.coords[1])

    H = a.hnf
    a0, b0h, d_h = H[0][0], H[0][1], H[1][1]

    # box bounds per embedding (ascending root order)
    upper = [math.sqrt(k_max) * math.exp(float(p)) * (1 + 1e-9) + 1e-9 for p in units.pos_span]
    B1, B2 = upper
    # sigma_i(e2) floats for range computation (completeness only; inflated)
    e2 = a.basis_elements[1]
    e2i = E.embed(e2)
    u1, u2 = float(e2i[0].mid), float(e2i[1].mid)
    du = abs(u1 - u2)
    c2_max = int((B1 + B2) / du) + 2

    est = (2 * c2_max + 1.0) * ((B1 + B2) / a0 + 2)
    if est > config.max_cells:
        raise InfeasibleEnumeration(f"~{est:.2e} cells exceed budget")

    # int64 overflow guard (conservative)
    pmax = (B1 + B2) / 1 + abs(b0h) * (c2_max + 1) + 10
    Pmax = pmax**2 * (1 + abs(t0) + abs(t1)) * 4
    worst = (2 * Pmax + Pmax * abs(tr) + 2 * k_max * (abs(g0) + abs(g1) + 2)) ** 2
    use_object = worst >= 2**62 or worst * D >= 2**62

    counts = np.zeros(k_max + 1, dtype=np.int64)
    margin = 1e-7

    for c2 in range(-c2_max, c2_max + 1):
        lo = -math.inf
        hi = math.inf
        for (ui, Bi) in ((u1, B1), (u2, B2)):
            l = (-Bi - c2 * ui) / a0
            h = (Bi - c2 * ui) / a0
            lo = max(lo, l)
            hi = min(hi, h)
        lo = math.floor(lo - margin)
        hi = math.ceil(hi + margin)
        if hi < lo:
            continue
        c1s = np.arange(lo, hi + 1, dtype=np.int64)
        if c2 == 0:
            c1s = c1s[c1s != 0]
        if not c1s.size:
            continue
        p = c1s * a0 + c2 * b0h
        q = np.full_like(c1s, c2 * d_h)
        if use_object:
            p = p.astype(object)
            q = q.astype(object)
        # N(x) = p^2 + p q tr(w) + q^2 N(w)
        k = p * p + p * q * tr + q * q * n_w
        k = np.abs(k)
        keep = (k >= 1) & (k <= k_max)
        if not np.any(keep):
            continue
        p, q, k = p[keep], q[keep], k[keep]
        # sigma_1(x) > 0: sign(2p + q tr - q sqrt(D))
        s1 = _sqrt_sign(2 * p + q * tr, -q, D, use_object)
        keep2 = s1 > 0
        if not np.any(keep2):
            continue
        p, q, k = p[keep2], q[keep2], k[keep2]
        # x^2 coordinates
        P = p * p + q * q * t0
        Q = 2 * p * q + q * q * t1
        # c >= 0: sigma_1(x^2) <= k
        condA = _sqrt_sign(2 * P + Q * tr - 2 * k, -Q, D, use_object) <= 0
        # c < 1: sigma_1(x^2 - k eps^2) > 0
        uB = 2 * (P - k * g0) + (Q - k * g1) * tr
        vB = -(Q - k * g1)
        condB = _sqrt_sign(uB, vB, D, use_object) > 0
        keep3 = condA & condB
        if not np.any(keep3):
            continue
        ks = k[keep3]
        if use_object:
            for kk in ks.tolist():
                counts[int(kk)] += 1
        else:
            counts += np.bincount(ks.astype(np.int64), minlength=k_max + 1)
    counts[0] = 0
    return counts


def _sqrt_sign(u, v, D, use_object):
    if not use_object:
        return _sqrtD_sign_int64(u, v, D)
    out = np.zeros(len(u), dtype=np.int8)
    for i, (uu, vv) in enumerate(zip(u.tolist(), v.tolist())):
        if uu >= 0 and vv >= 0:
            out[i] = 1 if (uu or vv) else 0
        elif uu <= 0 and vv <= 0:
            out[i] = -1 if (uu or vv) else 0
        else:
            t = uu * uu - vv * vv * D
            if t > 0:
                out[i] = 1 if uu > 0 else -1
            elif t < 0:
                out[i] = 1 if vv > 0 else -1
            else:
                out[i] = 0
    return out


# -- degree >= 3: float filters with exact fallbacks ------------------------------


def general_orbit_histogram(a: Ideal, units: UnitSystem, E: EmbeddingSet,
                            k_max: int,
                            config: EnumerationConfig = DEFAULT_ENUMERATION):
    """Exact a_k histogram for degree >= 3 via a margin-certified sweep.

    Floats drive the candidate generation (box inflated, so completeness is
    safe); exact arithmetic decides every surviving point: integer norms via
    the exact multiplication matrix, canonicality via float coordinates with
    a rigorous margin and the exact object-level test inside the margin zone.
    """
    field = a.field
    n = field.degree
    upper = [float(k_max) ** (1.0 / n) * math.exp(float(p)) * (1 + 1e-9) for p in units.pos_span]
    B = np.array(upper)

    basis = a.basis_elements
    emb = [E.embed(b) for b in basis]
    G = np.array([[float(emb[j][i].mid) for j in range(n)] for i in range(n)])
    Gerr = max(
        float(emb[j][i].width) / 2 + abs(float(emb[j][i].mid)) * 2.0**-50
        for j in range(n)
        for i in range(n)
    )
    col = [G[:, j] for j in range(n)]

    Ginv = np.linalg.inv(G)
    radii = (np.abs(Ginv) @ B) * (1 + 1e-9) + 1e-6
    cmax = [int(r) + 1 for r in radii]

    est = float(np.prod([2 * r + 1 for r in cmax]))
    if est > config.max_cells * 100:
        raise InfeasibleEnumeration(f"outer box ~{est:.2e} cells; regulator too large")

    sigma_err = (sum(cmax) + 1) * Gerr + 1e-9

    # fundamental-domain coordinate solve (floats) + rigorous fallback margin
    L = np.array(
        [[_mid(units.log_basis[i][j]) for i in range(n - 1)] for j in range(n - 1)]
    )
    Linv = np.linalg.inv(L)
    Linv_norm = float(np.abs(Linv).sum(axis=1).max())

    # per-coordinate spread of columns j < idx, for pruning partial sums
    spread = [np.zeros(n)]
    for j in range(1, n):
        spread.append(spread[-1] + np.abs(col[j - 1]) * cmax[j - 1])

    counts = np.zeros(k_max + 1, dtype=np.int64)
    stats = {"exact_points": 0, "fallbacks": 0}

    def exact_point(coords):
        x = _elem(a, coords)
        nrm = x.norm()
        assert nrm.denominator == 1
        k = abs(int(nrm))
        if k < 1 or k > k_max:
            return
        stats["exact_points"] += 1
        xi = Bimg @ np.array([float(c) for c in x.coords])
        if min(abs(v) for v in xi) <= 4 * sigma_err:
            ok = is_canonical_rep(x, units, E)
            stats["fallbacks"] += 1
        elif xi[0] < 0:
            return
        else:
            logs = np.log(np.abs(xi))
            rhs = logs[: n - 1] - math.log(k) / n
            c = Linv @ rhs
            log_err = sigma_err / min(abs(v) for v in xi) + 1e-12
            m = Linv_norm * log_err * 4 + 1e-9
            if np.all(c >= m) and np.all(c <= 1 - m):
                ok = True
            elif np.any(c < -m) or np.any(c >= 1 + m):
                ok = False
            else:
                ok = is_canonical_rep(x, units, E)
                stats["fallbacks"] += 1
        if ok:
            counts[k] += 1

    def innermost(partial, outer_coords):
        # outer_coords = (c_2, ..., c_{n-1}) coefficients of columns 2..n-1
        lo1 = -math.inf
        hi1 = math.inf
        for i in range(n):
            g = G[i, 0]
            l = (-B[i] - sigma_err - partial[i]) / g
            h = (B[i] + sigma_err - partial[i]) / g
            if g < 0:
                l, h = h, l
            lo1 = max(lo1, l)
            hi1 = min(hi1, h)
        if hi1 < lo1:
            return
        c1s = np.arange(math.floor(lo1 - 1e-9), math.ceil(hi1 + 1e-9) + 1, dtype=np.int64)
        if all(c == 0 for c in outer_coords):
            c1s = c1s[c1s != 0]
        if not c1s.size:
            return
        sig = partial[None, :] + c1s[:, None] * col[0][None, :]
        nf = np.abs(np.prod(sig, axis=1))
        keep = (nf >= 0.25) & (nf <= k_max * (1 + 1e-6) + 1.0)
        for t in np.nonzero(keep)[0].tolist():
            exact_point((int(c1s[t]),) + outer_coords)

    def sweep(idx, partial, outer_coords):
        # fixes coefficient of column idx; idx runs n-1 .. 1
        if idx == 0:
            innermost(partial, outer_coords)
            return
        r = cmax[idx]
        for c in range(-r, r + 1):
            newp = partial + c * col[idx]
            if np.any(np.abs(newp) - spread[idx] > B + sigma_err):
                continue
            sweep(idx - 1, newp, (c,) + outer_coords)

    Bimg = np.array(
        [[float(E.basis_images[i][j].mid) for j in range(n)] for i in range(n)]
    )

    sweep(n - 1, np.zeros(n), ())
    counts[0] = 0
    return counts


def _elem(a: Ideal, coords):
    n = a.field.degree
    acc = [0] * n
    for j, c in enumerate(coords):
        if c:
            colv = a.basis_elements[j].coords
            for i in range(n):
                acc[i] += c * colv[i]
    return a.field.element(acc)


def _mid(ivx):
    return float(ivx.mid.a)
