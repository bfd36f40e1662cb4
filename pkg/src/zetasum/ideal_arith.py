"""Integral ideals as Z-modules in column Hermite normal form.

An ideal is stored as an upper-triangular integer matrix with positive
diagonal whose columns, read as integral-basis coordinates, form a Z-basis
of the ideal.  The canonical form makes equality a plain matrix comparison
and the norm the diagonal product.
"""

from __future__ import annotations

from .errors import FieldMismatch, NotIntegral, OrderExceedsBound, ZeroIdeal
from .intmat import hnf_columns, hnf_solve_membership
from .nf_core import FieldElement, NumberField


class Ideal:
    """Nonzero integral ideal of the ring of integers of a totally real field."""

    __slots__ = ("field", "hnf", "norm_cache", "_basis_elements")

    def __init__(self, field: NumberField, hnf):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "hnf", tuple(tuple(int(x) for x in row) for row in hnf))
        n = field.degree
        det = 1
        for i in range(n):
            det *= self.hnf[i][i]
        object.__setattr__(self, "norm_cache", abs(det))
        object.__setattr__(
            self,
            "_basis_elements",
            tuple(field.element([self.hnf[i][j] for i in range(n)]) for j in range(n)),
        )

    def __setattr__(self, *a):
        raise AttributeError("Ideal is immutable")

    @property
    def basis_elements(self):
        return self._basis_elements

    def norm(self) -> int:
        return self.norm_cache

    def contains(self, x: FieldElement) -> bool:
        """Exact membership test via the triangular integer system."""
        if x.field != self.field:
            raise FieldMismatch("element from a different field")
        if not x.is_integral():
            return False
        v = [int(c) for c in x.coords]
        return hnf_solve_membership(self.hnf, v) is not None

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.field == other.field
            and self.hnf == other.hnf
        )

    def __hash__(self):
        return hash(self.hnf)

    def __repr__(self):
        return f"Ideal(norm={self.norm_cache}, hnf={self.hnf})"

    def is_ideal_closed(self) -> bool:
        """Check the module is closed under multiplication by the order basis."""
        n = self.field.degree
        for b in self._basis_elements:
            for j in range(n):
                wj = self.field.element([int(i == j) for i in range(n)])
                if not self.contains(b * wj):
                    return False
        return True


def ideal_from_hnf_basis(field: NumberField, columns) -> Ideal:
    """Ideal from integer columns already known to span an ideal (validated)."""
    H = hnf_columns(columns, field.degree)
    ideal = Ideal(field, H)
    if not ideal.is_ideal_closed():
        raise ValueError("module is not closed under the order action")
    return ideal


def ideal_from_generators(gens) -> Ideal:
    """Ideal generated by field elements (all integral, not all zero)."""
    gens = list(gens)
    if not gens:
        raise ZeroIdeal("no generators")
    field = gens[0].field
    n = field.degree
    cols = []
    for g in gens:
        if g.field != field:
            raise FieldMismatch("generators from different fields")
        if not g.is_integral():
            raise NotIntegral(f"generator {g.coords} is not integral")
        if g.is_zero():
            continue
        for j in range(n):
            wj = field.element([int(i == j) for i in range(n)])
            prod = g * wj
            cols.append([int(c) for c in prod.coords])
    if not cols:
        raise ZeroIdeal("all generators are zero")
    H = hnf_columns(cols, n)
    ideal = Ideal(field, H)
    assert ideal.is_ideal_closed(), "generated module failed the ideal closure test"
    return ideal


def unit_ideal(field: NumberField) -> Ideal:
    return ideal_from_generators([field.one()])


def principal_ideal(x: FieldElement) -> Ideal:
    if x.is_zero():
        raise ZeroIdeal("zero element generates the zero ideal")
    return ideal_from_generators([x])


def ideal_mul(a: Ideal, b: Ideal) -> Ideal:
    if a.field != b.field:
        raise FieldMismatch("ideals over different fields")
    cols = []
    for u in a.basis_elements:
        for v in b.basis_elements:
            prod = u * v
            cols.append([int(c) for c in prod.coords])
    return Ideal(a.field, hnf_columns(cols, a.field.degree))


def ideal_pow(a: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative ideal powers not supported")
    result = unit_ideal(a.field)
    base = a
    while k:
        if k & 1:
            result = ideal_mul(result, base)
        k >>= 1
        if k:
            base = ideal_mul(base, base)
    return result


def ideal_norm(a: Ideal) -> int:
    return a.norm_cache


def ideals_of_norm(field: NumberField, k: int):
    """Brute-force enumeration of all integral ideals of norm k.

    Iterates over every upper-triangular positive-diagonal integer matrix of
    determinant k with reduced off-diagonal entries and keeps the ones whose
    column span is closed under the order action.  Exponential in the degree;
    meant as an independent oracle at small k only.
    """
    n = field.degree

    def diag_factorizations(det, length):
        if length == 1:
            yield [det]
            return
        d = 1
        while d <= det:
            if det % d == 0:
                for rest in diag_factorizations(det // d, length - 1):
                    yield [d] + rest
            d += 1

    out = []
    for diag in diag_factorizations(k, n):
        # entries above the diagonal: H[i][j] in [0, H[i][i]) for j > i
        def fill(j, cols):
            if j == n:
                H = [[0] * n for _ in range(n)]
                for c in range(n):
                    for r in range(c + 1):
                        H[r][c] = cols[c][r]
                ideal = Ideal(field, H)
                if ideal.is_ideal_closed():
                    out.append(ideal)
                return
            ranges = [range(diag[r]) for r in range(j)]

            def rec(r, acc):
                if r == j:
                    fill(j + 1, cols + [acc + [diag[j]]])
                    return
                for v in ranges[r]:
                    rec(r + 1, acc + [v])

            rec(0, [])

        fill(0, [])
    return out


def divides(a: Ideal, b: Ideal) -> bool:
    """True iff a | b, i.e. b is contained in a."""
    return all(a.contains(x) for x in b.basis_elements)


def class_order_with(a: Ideal, h_bound: int, is_principal_test) -> int:
    """Smallest m <= h_bound with a^m principal, given a principality oracle."""
    if h_bound < 1:
        raise ValueError("h_bound must be >= 1")
    power = unit_ideal(a.field)
    for m in range(1, h_bound + 1):
        power = ideal_mul(power, a)
        if is_principal_test(power):
            return m
    raise OrderExceedsBound(f"class order exceeds {h_bound}")
