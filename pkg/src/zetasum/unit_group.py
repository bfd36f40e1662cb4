"""Fundamental units, the logarithmic lattice, and canonical orbit representatives.

The logarithm map sends a nonzero element to the vector of logs of the
absolute values of its embeddings.  Units land on the trace-zero hyperplane
and form a full lattice there; its covolume determines the regulator.  A
canonical representative of the orbit {±u·x : u a unit} is singled out by
requiring the unit-lattice coordinates of the log vector to lie in [0,1)^(n-1)
and the first embedding to be positive.  Those half-open conditions are
decided by interval refinement, with an exact algebraic tie-break for
elements that sit exactly on an orbit boundary (x times a unit power having
rational square).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from mpmath import iv

from .config import DEFAULT_PRECISION, PrecisionPolicy
from .errors import (
    Dependent,
    NotAUnit,
    NotQuadratic,
    PrecisionExhausted,
    RegulatorMismatch,
)
from .nf_core import EmbeddingSet, FieldElement, NumberField, certified_sign
from .rintervals import (
    iv_abs_log,
    iv_bounds,
    iv_contains_zero,
    iv_det,
    iv_from_fraction,
    iv_solve,
    workprec,
)


def fundamental_unit_quadratic(field: NumberField) -> FieldElement:
    """Fundamental unit > 1 of a real quadratic field, by continued fractions.

    Runs the classical (P + sqrt(D))/Q expansion of (D mod 2 + sqrt(D))/2 and
    returns the first convergent unit, which solves x^2 - D y^2 = +-4 with
    minimal y.
    """
    if field.degree != 2:
        raise NotQuadratic("fundamental_unit_quadratic requires a degree-2 field")
    D = field.disc
    sD = isqrt(D)
    b0 = D % 2
    P, Q = b0, 2
    G_prev, G = -P, Q
    B_prev, B = 1, 0
    for _ in range(10**7):
        a = (P + sD) // Q
        G_prev, G = G, a * G + G_prev
        B_prev, B = B, a * B + B_prev
        P = a * Q - P
        Q = (D - P * P) // Q
        if G * G - D * B * B in (4, -4):
            x, y = G, B
            break
    else:  # pragma: no cover
        raise RuntimeError("continued fraction did not terminate")
    # epsilon = (x + y*sqrt(D))/2; express on the integral basis
    # basis is {1, w} with w = theta or (1+theta)/2; sqrt(D) = 2*w - Tr(w)
    w = field.element([0, 1])
    trw = w.trace()
    sqrtD_num = 2 * w - field.from_integer(trw)  # = sqrt(disc of the order)
    # sanity: (2w - tr)^2 = D
    assert (sqrtD_num * sqrtD_num).is_rational() == D
    eps = (field.from_integer(x) + Fraction(y) * sqrtD_num) * Fraction(1, 2)
    if not eps.is_integral():
        raise NotAUnit(f"continued fraction produced non-integral unit {eps.coords}")
    assert abs(eps.norm()) == 1
    assert certified_sign(eps, 1, field.embeddings(64)) > 0  # eps > 1 under the larger root
    return eps


@dataclass(frozen=True)
class UnitSystem:
    """Validated system of independent units with the derived log-lattice data."""

    field: NumberField
    units: tuple
    w_K: int
    precision: int
    log_basis: tuple  # (n-1) rows x n cols of mpmath intervals, log|sigma_j(eps_i)|
    regulator: object  # mpmath interval
    pos_span: tuple  # per embedding j: sum_i max(0, log_basis[i][j]) upper bound (float)
    neg_span: tuple  # per embedding j: sum_i min(0, log_basis[i][j]) lower bound (float)

    def regulator_float(self) -> float:
        return float(self.regulator.mid.a)

    def refined(self, precision: int) -> "UnitSystem":
        if precision <= self.precision:
            return self
        return validate_units(self.field, list(self.units), self.field.embeddings(precision))


def _log_matrix(field, units, E, bits):
    return [tuple(log_vector(u, E, bits)) for u in units]


def validate_units(field: NumberField, units, E: EmbeddingSet,
                   declared_regulator: str | None = None) -> UnitSystem:
    """Check unit invariants and assemble the log-lattice data.

    Units are validated as independent units of the order (|norm| = 1 and a
    regulator enclosure excluding zero).  Fundamentality is NOT certified
    here; a declared regulator, when present, must match the computed
    enclosure to 1e-9 relative and serves as the fundamentality cross-check.
    """
    n = field.degree
    if len(units) != n - 1:
        raise NotAUnit(f"expected {n - 1} units, got {len(units)}")
    for u in units:
        if not u.is_integral():
            raise NotAUnit(f"unit {u.coords} is not integral")
        if abs(u.norm()) != 1:
            raise NotAUnit(f"|N| = {abs(u.norm())} != 1 for {u.coords}")

    bits = max(E.precision, 64)
    E = field.embeddings(bits)
    with workprec(bits):
        log_basis = _log_matrix(field, units, E, bits)
        # rows must sum to ~0 (trace-zero hyperplane)
        for row in log_basis:
            s = iv.mpf(0)
            for x in row:
                s = s + x
            if not iv_contains_zero(s):
                raise NotAUnit("unit log vector does not lie on the trace-zero hyperplane")
        if n == 1:
            raise NotQuadratic("degree-1 field has no unit lattice")
        # regulator from the minor dropping the last column
        minor = [row[: n - 1] for row in log_basis]
        det = iv_det(minor)
        reg = abs(det)
        if iv_contains_zero(det):
            raise Dependent("regulator enclosure contains zero (units dependent?)")
        # cross-check: minor dropping the first column agrees
        minor2 = [row[1:] for row in log_basis]
        det2 = abs(iv_det(minor2))
        if reg.b < det2.a or det2.b < reg.a:
            raise Dependent("regulator minors disagree beyond enclosure widths")

        if declared_regulator is not None:
            declared = Fraction(str(declared_regulator))
            dv = iv_from_fraction(declared, bits)
            rel = abs(dv - reg) / reg
            # mismatch only when the relative deviation certainly exceeds 1e-9
            if float(rel.a) > 1e-9:
                raise RegulatorMismatch(
                    f"declared regulator {declared_regulator} vs computed {reg}"
                )

        pos = []
        neg = []
        for j in range(n):
            up = Fraction(0)
            dn = Fraction(0)
            for i in range(n - 1):
                lo, hi = iv_bounds(log_basis[i][j])
                if hi > 0:
                    up += hi
                if lo < 0:
                    dn += lo
            pos.append(up)
            neg.append(dn)

    return UnitSystem(
        field=field,
        units=tuple(units),
        w_K=2,
        precision=bits,
        log_basis=tuple(log_basis),
        regulator=reg,
        pos_span=tuple(pos),
        neg_span=tuple(neg),
    )


def log_vector(x: FieldElement, E: EmbeddingSet, bits: int | None = None):
    """Componentwise log|sigma_j(x)| as mpmath intervals."""
    if x.is_zero():
        raise ValueError("log vector of zero")
    bits = bits or E.precision
    field = x.field
    out = []
    with workprec(bits):
        Ecur = E
        for j in range(field.degree):
            qi = Ecur.embed(x)[j]
            while qi.sign() == 0:
                Ecur = Ecur.refine()
                qi = Ecur.embed(x)[j]
            out.append(iv_abs_log(qi, bits))
    return out


def fundamental_domain_coords(x: FieldElement, U: UnitSystem, E: EmbeddingSet,
                              bits: int | None = None):
    """Coordinates of the norm-normalized log vector in the unit-lattice basis."""
    field = x.field
    n = field.degree
    bits = bits or max(U.precision, E.precision)
    with workprec(bits):
        y = log_vector(x, E, bits)
        nrm = abs(x.norm())
        lognorm = iv.log(iv_from_fraction(nrm, bits)) / n
        rhs = [y[j] - lognorm for j in range(n - 1)]
        M = [[U.log_basis[i][j] for i in range(n - 1)] for j in range(n - 1)]
        c = iv_solve(M, rhs)
    return c


def _unit_power_product(U: UnitSystem, exps) -> FieldElement:
    acc = U.field.one()
    for u, v in zip(U.units, exps):
        if v:
            acc = acc * _int_power(u, v, U)
    return acc


def _int_power(u: FieldElement, k: int, U: UnitSystem) -> FieldElement:
    if k >= 0:
        return u**k
    # inverse of a unit: +-(conjugate-like product); compute via norm 1 trick:
    # u^-1 = sign(N(u)) * product of the other conjugates = N(u) * u^-1 ... use
    # the adjugate route: u^-1 has integral coords since u is a unit.
    inv = _unit_inverse(u)
    return inv ** (-k)


def _unit_inverse(u: FieldElement) -> FieldElement:
    """Inverse of a unit (exact; integral because |N(u)| = 1)."""
    from .intmat import mat_inverse, mat_vec

    field = u.field
    M = field.mult_matrix(u)
    Minv = mat_inverse(M)
    one = [Fraction(1)] + [Fraction(0)] * (field.degree - 1)
    coords = mat_vec(Minv, one)
    inv = field.element(coords)
    assert inv.is_integral()
    return inv


def unit_power(U: UnitSystem, exps) -> FieldElement:
    """epsilon_1^v1 * ... * epsilon_{n-1}^v_{n-1} with integer (possibly
    negative) exponents."""
    return _unit_power_product(U, exps)


def is_canonical_rep(x: FieldElement, U: UnitSystem, E: EmbeddingSet,
                     policy: PrecisionPolicy = DEFAULT_PRECISION) -> bool:
    """True iff x is the canonical representative of its orbit {+-u x}.

    Canonical means: unit-lattice coordinates of the log vector lie in
    [0,1)^(n-1) and the first embedding is positive.  Interval refinement
    decides generic points; points exactly on a coordinate boundary are
    resolved exactly by testing whether x divided by the matching unit power
    has rational square.
    """
    if x.is_zero():
        raise ValueError("zero has no orbit representative")
    field = x.field
    if certified_sign(x, 0, E, policy) < 0:
        return False

    for bits in policy.ladder():
        Ecur = field.embeddings(max(bits, E.precision)) if bits > E.precision else E
        Ucur = U.refined(bits) if bits > U.precision else U
        c = fundamental_domain_coords(x, Ucur, Ecur, bits)
        undecided = []
        for i, ci in enumerate(c):
            lo, hi = iv_bounds(ci)
            if hi < 0 or lo >= 1:
                return False
            if lo >= 0 and hi < 1:
                continue
            undecided.append(i)
        if not undecided:
            return True
        # boundary suspicion: exact tie-break when all coordinates are near
        # integers, i.e. x = (unit power) * z with z^2 rational
        mids = [round(float(ci.mid.a)) for ci in c]
        z = x * _unit_inverse(_unit_power_product(U, mids)) if any(mids) else x
        zz = z * z
        if zz.is_rational() is not None:
            # all coordinates are exactly the integers `mids`
            return all(m == 0 for m in mids)
    raise PrecisionExhausted("canonicality undecided at precision cap")


def orbit_box_bound(U: UnitSystem, E: EmbeddingSet, k: int) -> float:
    """Sup-norm bound B: any canonical representative with |N(x)| = k has
    max_j |sigma_j(x)| <= B.  Over-approximates on purpose; scaling in k is
    exactly k^(1/n) by construction."""
    if k < 1:
        raise ValueError("k must be >= 1")
    base = orbit_box_base(U)
    n = U.field.degree
    return float(k) ** (1.0 / n) * base


def orbit_box_base(U: UnitSystem) -> float:
    """max_j exp(positive span) with a safety inflation, as a float."""
    import math

    worst = max(float(p) for p in U.pos_span)
    return math.exp(worst) * (1 + 1e-9)


def orbit_box_vectors(U: UnitSystem, k: int):
    """Per-embedding upper bounds and lower (mignitude) bounds for canonical
    representatives of norm k, as floats with safety margins."""
    import math

    n = U.field.degree
    r = float(k) ** (1.0 / n)
    upper = [r * math.exp(float(p)) * (1 + 1e-9) for p in U.pos_span]
    lower = [r * math.exp(float(q)) * (1 - 1e-9) for q in U.neg_span]
    return upper, lower
