"""Twisted canonical embeddings of ideals and complete box enumeration.

The lattice of an ideal under the (optionally twisted, optionally
volume-normalized) embedding is never materialized in floating point for
counting purposes.  Enumeration is driven by the exact rational quadratic
form q(x) = Tr(alpha x^2) on ideal coordinates: the sup-norm box of radius R
is contained in the sphere q <= n R^2 / kappa^2, which Fincke-Pohst style
recursion over an exact Cholesky decomposition enumerates completely.  Each
candidate is then tested against the box with rational interval arithmetic;
points whose enclosure straddles the boundary are decided exactly by
comparing the field element (alpha x^2)^n against a rational threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from mpmath import iv

from .config import DEFAULT_ENUMERATION, DEFAULT_PRECISION, EnumerationConfig
from .errors import (
    InfeasibleEnumeration,
    NotPrincipal,
    NotTotallyPositive,
    PrecisionExhausted,
)
from .ideal_arith import Ideal, ideal_pow, principal_ideal
from .nf_core import EmbeddingSet, FieldElement, NumberField, certified_sign
from .qintervals import QInterval
from .rintervals import iv_bounds, iv_from_fraction, iv_from_qinterval, workprec


def simple_lower(q: Fraction, bits: int = 48) -> Fraction:
    """Rational lower bound on q with a small power-of-two denominator."""
    scaled = q * (1 << bits)
    return Fraction(scaled.numerator // scaled.denominator - 1, 1 << bits)


def simple_upper(q: Fraction, bits: int = 48) -> Fraction:
    scaled = q * (1 << bits)
    return Fraction(-((-scaled.numerator) // scaled.denominator) + 1, 1 << bits)


@dataclass(frozen=True)
class IdealLattice:
    """Embedded ideal with twist and optional unit-volume normalization."""

    field: NumberField
    ideal: Ideal
    alpha: FieldElement
    normalized: bool
    # exact rational kappa^(-2n); equals |N(alpha)| N(a)^2 |D| when normalized, else 1
    kappa_pow_minus_2n: Fraction
    kappa_sq: QInterval  # enclosure of kappa^2
    volume: object  # mpmath interval
    precision: int

    @property
    def degree(self) -> int:
        return self.field.degree

    def kappa_interval(self):
        with workprec(self.precision):
            return iv.sqrt(iv_from_qinterval(self.kappa_sq, self.precision))

    def basis_embeddings(self, E: EmbeddingSet):
        """QInterval matrix: rows = embeddings, cols = ideal basis elements."""
        return [
            [E.embed(b)[i] for b in self.ideal.basis_elements]
            for i in range(self.degree)
        ]


def build_lattice(field: NumberField, ideal: Ideal, alpha: FieldElement | None = None,
                  normalize: bool = False, E: EmbeddingSet | None = None,
                  precision: int = 128) -> IdealLattice:
    """Assemble an ideal lattice, certifying total positivity of the twist."""
    E = E or field.embeddings(precision)
    if alpha is None:
        alpha = field.one()
    if alpha.is_zero():
        raise NotTotallyPositive("twist element is zero")
    for i in range(field.degree):
        if certified_sign(alpha, i, E) <= 0:
            raise NotTotallyPositive(f"embedding {i} of the twist is not positive")

    n = field.degree
    norm_alpha = abs(alpha.norm())
    q_vol = norm_alpha * Fraction(ideal.norm()) ** 2 * abs(field.disc)

    if normalize:
        kappa_pow_minus_2n = q_vol
        with workprec(max(precision, 128)):
            qv = iv_from_fraction(q_vol, max(precision, 128))
            kappa_sq_iv = iv.exp(iv.log(qv) * iv_from_fraction(Fraction(-1, n)))
            lo, hi = iv_bounds(kappa_sq_iv)
        kappa_sq = QInterval(lo, hi)
    else:
        kappa_pow_minus_2n = Fraction(1)
        kappa_sq = QInterval.point(1)

    with workprec(max(precision, 128)):
        # vol = kappa^n * sqrt(q_vol)
        ksq = iv_from_qinterval(kappa_sq, precision)
        vol = iv.sqrt(ksq) ** n * iv.sqrt(iv_from_fraction(q_vol, precision))

    return IdealLattice(
        field=field,
        ideal=ideal,
        alpha=alpha,
        normalized=normalize,
        kappa_pow_minus_2n=kappa_pow_minus_2n,
        kappa_sq=kappa_sq,
        volume=vol,
        precision=precision,
    )


# -- exact quadratic-range helper -------------------------------------------------


def integer_range_quadratic(A: Fraction, B: Fraction, C: Fraction):
    """All integers t with A t^2 + B t + C <= 0, for A > 0 (rational coeffs).

    Locates the window with floating point, then trims with exact evaluation,
    so the result is exact regardless of rounding.
    """
    if A <= 0:
        raise ValueError("A must be positive")
    disc = B * B - 4 * A * C
    if disc < 0:
        return range(0, 0)
    fd = math.sqrt(float(disc))
    lo_f = (-float(B) - fd) / (2 * float(A))
    hi_f = (-float(B) + fd) / (2 * float(A))
    lo = math.floor(lo_f) - 2
    hi = math.ceil(hi_f) + 2

    def val(t):
        return (A * t + B) * t + C

    while lo <= hi and val(lo) > 0:
        lo += 1
    while hi >= lo and val(hi) > 0:
        hi -= 1
    return range(lo, hi + 1)


def rational_cholesky(G):
    """q, mu with x^T G x = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2, exact."""
    n = len(G)
    q = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    diag = [q[i][i] for i in range(n)]
    mu = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return diag, mu


def fincke_pohst(G, bound: Fraction):
    """Yield all integer vectors c (including 0) with c^T G c <= bound.

    Deterministic order: outermost coordinate ascending, and so on inward.
    Exactly one of {c, -c} is NOT produced; the caller mirrors.  (The zero
    vector is produced once.)  G must be exactly positive definite.
    """
    n = len(G)
    diag, mu = rational_cholesky(G)
    if any(d <= 0 for d in diag):
        raise ValueError("form is not positive definite")

    c = [0] * n

    def rec(i, remaining):
        # remaining = bound - sum_{k>i} q_k (c_k + sum_{j>k} mu_kj c_j)^2
        center = sum((mu[i][j] * c[j] for j in range(i + 1, n)), Fraction(0))
        # q_i (t + center)^2 <= remaining
        A = diag[i]
        B = 2 * diag[i] * center
        C = diag[i] * center * center - remaining
        rng = integer_range_quadratic(A, B, C)
        for t in rng:
            c[i] = t
            if i == 0:
                yield tuple(c)
            else:
                used = diag[i] * (t + center) ** 2
                yield from rec(i - 1, remaining - used)
        c[i] = 0

    # half-space trick: enumerate with the outermost nonzero coordinate > 0
    def rec_half(i, remaining, free):
        center = sum((mu[i][j] * c[j] for j in range(i + 1, n)), Fraction(0))
        A = diag[i]
        B = 2 * diag[i] * center
        C = diag[i] * center * center - remaining
        rng = integer_range_quadratic(A, B, C)
        for t in rng:
            if free and t < 0:
                continue
            c[i] = t
            nfree = free and t == 0
            if i == 0:
                yield tuple(c)
            else:
                used = diag[i] * (t + center) ** 2
                yield from rec_half(i - 1, remaining - used, nfree)
        c[i] = 0

    yield from rec_half(n - 1, Fraction(bound), True)


# -- certified box membership ------------------------------------------------------


class BoxTester:
    """Certified sup-norm box membership for lattice points.

    The box condition per embedding i is kappa^2 sigma_i(alpha) sigma_i(x)^2
    <= R^2.  Interval arithmetic decides generic points; straddling points
    are settled exactly by comparing sigma_i((alpha x^2)^n) with
    R^(2n) * kappa^(-2n), a rational number.
    """

    def __init__(self, lattice: IdealLattice, R_sq: Fraction, E: EmbeddingSet):
        self.L = lattice
        self.R_sq = Fraction(R_sq)
        self.E = E
        self.field = lattice.field
        n = self.field.degree
        # exact threshold for the power-n comparison
        self.T = self.R_sq**n * lattice.kappa_pow_minus_2n
        self._alpha_img = E.embed(lattice.alpha)

    def point_intervals(self, x: FieldElement):
        return self.E.embed(x)

    def contains(self, x: FieldElement, policy=DEFAULT_PRECISION) -> bool:
        """Certified: max_i |kappa psi_alpha(x)_i| <= R."""
        E = self.E
        alpha_img = self._alpha_img
        ksq = self.L.kappa_sq
        for i in range(self.field.degree):
            xi = E.embed(x)[i]
            val = ksq * alpha_img[i] * xi * xi
            c = val.cmp(self.R_sq)
            if c is not None:
                if c > 0:
                    return False
                continue
            if not self._contains_exact(x, i, policy):
                return False
        return True

    def _contains_exact(self, x, i, policy) -> bool:
        # compare sigma_i(w) with T, w = (alpha x^2)^n
        n = self.field.degree
        w = (self.L.alpha * x * x) ** n
        diff = w - self.field.from_integer(self.T) if self.T.denominator == 1 else None
        if diff is None:
            # clear denominators: sigma_i(w) <= T  <=>  sigma_i(w*q) <= p
            q = self.T.denominator
            diff = w * q - self.field.from_integer(self.T.numerator)
        if diff.is_zero():
            return True  # exactly on the boundary; closed box keeps it
        s = certified_sign(diff, i, self.E, policy)
        return s < 0


# -- box count + sums ---------------------------------------------------------------


@dataclass
class BoxCount:
    """Histogram of |N(x)| over nonzero lattice points in a box."""

    R_sq: Fraction
    counts: dict
    total_points: int
    witnesses: dict = dc_field(default_factory=dict)

    def max_count(self) -> int:
        return max(self.counts.values(), default=0)


def enumerate_box(lattice: IdealLattice, R=None, R_sq=None,
                  E: EmbeddingSet | None = None,
                  config: EnumerationConfig = DEFAULT_ENUMERATION):
    """Yield (x, enclosures) for every nonzero x in the ideal with
    ||kappa psi_alpha(x)||_inf <= R, each exactly once, deterministically.

    R may be irrational as long as R^2 is rational; pass R_sq in that case.
    The zero vector is skipped.  Completeness comes from enumerating the
    enclosing ellipsoid Tr(alpha x^2) <= n R^2 / kappa^2 exactly.
    """
    if R_sq is None:
        if R is None:
            raise ValueError("pass R or R_sq")
        R_sq = Fraction(R) ** 2
    R_sq = Fraction(R_sq)
    if R_sq <= 0:
        return
    field = lattice.field
    E = E or field.embeddings(lattice.precision)
    tester = BoxTester(lattice, R_sq, E)

    n = field.degree
    basis = lattice.ideal.basis_elements
    # Gram of the twist form on the ideal basis (exact)
    gram = [[(lattice.alpha * basis[i] * basis[j]).trace() for j in range(n)] for i in range(n)]
    # sphere bound: Tr(alpha x^2) <= n R^2 / kappa^2 (rational upper bound with
    # small denominator, so the recursion stays cheap)
    bound = n * R_sq / simple_lower(lattice.kappa_sq.lo)

    # rough cell estimate to guard against runaway enumerations
    est = (math.pi * float(bound)) ** (n / 2) / math.gamma(n / 2 + 1)
    est /= math.sqrt(alpha_vol_sq(lattice))
    if est > config.max_cells:
        raise InfeasibleEnumeration(
            f"~{est:.2e} candidates exceed the budget {config.max_cells:.1e}"
        )

    for coords in fincke_pohst(gram, bound):
        if all(c == 0 for c in coords):
            continue
        x = _element_from_ideal_coords(lattice.ideal, coords)
        if tester.contains(x):
            pts = tester.point_intervals(x)
            yield x, pts
            yield -x, [-qi for qi in pts]


def alpha_vol_sq(lattice: IdealLattice) -> float:
    """Squared covolume of the untwisted unscaled embedded ideal (float)."""
    return float(Fraction(lattice.ideal.norm()) ** 2 * abs(lattice.field.disc) *
                 abs(lattice.alpha.norm()))


def _element_from_ideal_coords(ideal: Ideal, coords) -> FieldElement:
    n = ideal.field.degree
    acc = [0] * n
    for j, c in enumerate(coords):
        if c:
            col = ideal.basis_elements[j].coords
            for i in range(n):
                acc[i] += c * col[i]
    return ideal.field.element(acc)


def count_by_norm(lattice: IdealLattice, R=None, R_sq=None,
                  E: EmbeddingSet | None = None,
                  collect_norms=(),
                  config: EnumerationConfig = DEFAULT_ENUMERATION) -> BoxCount:
    """Exact histogram k -> #{x in box : |N(x)| = k} (nonzero x).

    Norms are computed exactly.  For degree-2 lattices with many points a
    vectorized integer sweep computes the same histogram; its per-point
    boundary margin is backed by an exact recheck of edge candidates.
    """
    if R_sq is None:
        R_sq = Fraction(R) ** 2
    R_sq = Fraction(R_sq)
    field = lattice.field
    E = E or field.embeddings(lattice.precision)

    if field.degree == 2:
        est = _quadratic_point_estimate(lattice, R_sq)
        if est > config.bulk_threshold:
            from .fastquad import quadratic_box_histogram

            return quadratic_box_histogram(lattice, R_sq, E, collect_norms, config)

    counts = {}
    witnesses = {}
    total = 0
    collect = set(collect_norms)
    for x, _ in enumerate_box(lattice, R_sq=R_sq, E=E, config=config):
        k = abs(x.norm())
        assert k.denominator == 1
        k = int(k)
        counts[k] = counts.get(k, 0) + 1
        total += 1
        if k in collect:
            witnesses.setdefault(k, []).append(x)
    return BoxCount(R_sq=R_sq, counts=counts, total_points=total, witnesses=witnesses)


def _quadratic_point_estimate(lattice: IdealLattice, R_sq: Fraction) -> float:
    r_eff_sq = float(R_sq) / float(lattice.kappa_sq.mid)
    return 4.0 * r_eff_sq / math.sqrt(alpha_vol_sq(lattice))


@dataclass
class InverseNormSum:
    """Inverse norm sum with exact raw accumulation when affordable."""

    s: int
    R_sq: Fraction
    raw_rational: Fraction | None  # sum over box of 1/|N(x)|^s, exact if present
    raw_float: float
    raw_error: float  # rigorous bound on |raw_float - true raw sum|
    value: object  # mpmath interval of kappa^(-ns) |N(alpha)|^(-s/2) * raw
    points: int

    def value_bounds(self):
        return iv_bounds(self.value)

    def value_float(self) -> float:
        return float(self.value.mid.a)


def inverse_norm_sum_exact(lattice: IdealLattice, s: int, R=None, R_sq=None,
                           E: EmbeddingSet | None = None,
                           config: EnumerationConfig = DEFAULT_ENUMERATION,
                           counts: BoxCount | None = None,
                           method: str = "auto") -> InverseNormSum:
    """S(lattice, s, R): sum of the inverse s-th powers of the coordinate
    products over nonzero box points, with the normalization scaling.

    method="exact" accumulates the raw sum as an exact rational.  For very
    large degree-2 boxes method="fast" (or "auto") sums in floats over the
    exact point set, carrying a rigorous rounding-error bound instead of the
    rational value.
    """
    if s not in (2, 3):
        raise ValueError("s must be 2 or 3")
    if R_sq is None:
        R_sq = Fraction(R) ** 2
    R_sq = Fraction(R_sq)
    field = lattice.field

    raw = None
    if counts is None and method != "exact" and field.degree == 2:
        est = _quadratic_point_estimate(lattice, R_sq)
        if method == "fast" or (method == "auto" and est > 2e6):
            from .fastquad import quadratic_box_power_sum

            E = E or field.embeddings(lattice.precision)
            raw_float, raw_err, npts = quadratic_box_power_sum(lattice, R_sq, E, s, config)
            return _assemble_sum(lattice, s, R_sq, None, raw_float, raw_err, npts)

    if counts is None:
        counts = count_by_norm(lattice, R_sq=R_sq, E=E, config=config)
    raw = Fraction(0)
    for k, b in sorted(counts.counts.items()):
        raw += Fraction(b, k**s)
    raw_float = float(raw)
    raw_err = float(abs(Fraction(raw_float) - raw))
    return _assemble_sum(lattice, s, R_sq, raw, raw_float, raw_err, counts.total_points)


def _assemble_sum(lattice, s, R_sq, raw, raw_float, raw_err, points) -> InverseNormSum:
    norm_alpha = abs(lattice.alpha.norm())
    with workprec(max(lattice.precision, 128)):
        # kappa^(-ns) = (kappa^(-2n))^(s/2); the s/2 power via exp/log
        km2n = iv_from_fraction(lattice.kappa_pow_minus_2n, 128)
        scale = iv.exp(iv.log(km2n) * iv_from_fraction(Fraction(s, 2)))
        scale = scale / iv.exp(iv.log(iv_from_fraction(norm_alpha, 128)) * iv_from_fraction(Fraction(s, 2)))
        if raw is not None:
            raw_iv = iv_from_fraction(raw, 128)
        else:
            raw_iv = iv.mpf([raw_float - raw_err, raw_float + raw_err])
        value = scale * raw_iv

    return InverseNormSum(
        s=s,
        R_sq=R_sq,
        raw_rational=raw,
        raw_float=raw_float,
        raw_error=raw_err,
        value=value,
        points=points,
    )


def riemann_zeta_upper(s: int) -> Fraction:
    """Rational upper bound on zeta(s), accurate to ~1e-13."""
    from mpmath import mp, zeta as mp_zeta

    old = mp.prec
    mp.prec = 80
    try:
        v = mp_zeta(s)
        out = Fraction(str(v)) + Fraction(1, 10**13)
    finally:
        mp.prec = old
    return out


@dataclass
class Prop1Bounds:
    lower: Fraction
    upper: Fraction
    generator_in_box: bool
    m: int
    M_R: int


def prop1_bounds(lattice: IdealLattice, s: int, counts: BoxCount, m: int,
                 M_R: int | None = None) -> Prop1Bounds:
    """Elementary sandwich for the raw inverse norm sum of an untwisted,
    unnormalized ideal lattice: counts[N^m]/N^(ms) <= S <= M_R zeta(s)."""
    if lattice.normalized or not (lattice.alpha == lattice.field.one()):
        raise ValueError("bounds apply to the untwisted, unnormalized lattice")
    N = lattice.ideal.norm()
    key = N**m
    b = counts.counts.get(key, 0)
    if M_R is None:
        M_R = counts.max_count()
    lower = Fraction(b, key**s)
    upper = Fraction(M_R) * riemann_zeta_upper(s)

    gen_in_box = False
    target = ideal_pow(lattice.ideal, m)
    for x in counts.witnesses.get(key, []):
        if principal_ideal(x) == target:
            gen_in_box = True
            break
    return Prop1Bounds(lower=lower, upper=upper, generator_in_box=gen_in_box, m=m, M_R=M_R)


def min_product_distance(lattice: IdealLattice, units=None, E=None):
    """Minimum product distance of a normalized principal ideal lattice:
    |D|^(-1/2) as an interval."""
    if not lattice.normalized:
        raise ValueError("lattice must be volume-normalized")
    if lattice.ideal.norm() != 1:
        if units is None or E is None:
            raise NotPrincipal("supply a unit system to verify principality")
        from .orbits import is_principal

        if is_principal(lattice.ideal, units, E) is None:
            raise NotPrincipal("ideal is not principal")
    with workprec(max(lattice.precision, 128)):
        d = iv_from_fraction(Fraction(abs(lattice.field.disc)), 128)
        return 1 / iv.sqrt(d)
