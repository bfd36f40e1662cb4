"""Totally real number fields with exact arithmetic and certified embeddings.

A field is described by a monic integer minimal polynomial together with an
integral basis written as rational polynomials in the root.  All element
arithmetic runs through the exact multiplication table; norms and traces are
determinants/traces of exact multiplication matrices, never floating point.
Real embeddings are certified rational enclosures obtained from Sturm
isolation plus bisection, so every embedding value carries an interval that
provably contains it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_PRECISION, PrecisionPolicy
from .errors import (
    DiscMismatch,
    FieldMismatch,
    NotAnOrder,
    NotTotallyReal,
    PrecisionExhausted,
    ValidationError,
)
from .intmat import mat_inverse, mat_vec
from .polys import (
    count_real_roots,
    is_squarefree,
    isolate_real_roots,
    poly_eval_interval,
    poly_trim,
    refine_root,
)
from .qintervals import QInterval, qi_dot

SCHEMA = "zetasum-field/1"


def _parse_rational(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise ValidationError(f"not an exact rational: {x!r}")


class NumberField:
    """Totally real number field with a validated order basis."""

    def __init__(self, name, min_poly, integral_basis, declared_disc=None):
        self.name = name
        self.min_poly = poly_trim([Fraction(c) for c in min_poly])
        if any(c.denominator != 1 for c in self.min_poly) or self.min_poly[-1] != 1:
            raise ValidationError("min_poly must be monic with integer coefficients")
        self.degree = len(self.min_poly) - 1
        n = self.degree
        if len(integral_basis) != n or any(len(w) != n for w in integral_basis):
            raise ValidationError("integral_basis must be n vectors of n rational coefficients")
        self.basis_polys = [tuple(_parse_rational(c) for c in w) for w in integral_basis]
        if self.basis_polys[0] != tuple([Fraction(1)] + [Fraction(0)] * (n - 1)):
            raise ValidationError("first basis element must be 1")

        if not is_squarefree(self.min_poly):
            raise NotTotallyReal("min_poly is not squarefree")
        if count_real_roots(self.min_poly) != n:
            raise NotTotallyReal(f"min_poly has fewer than {n} real roots")

        self._build_mult_table()
        self.disc = self._compute_disc()
        if declared_disc is not None and self.disc != declared_disc:
            raise DiscMismatch(f"declared disc {declared_disc}, computed {self.disc}")

        self._root_enclosures = None  # lazy; refined in place, always nested
        self._embedding_cache = {}

    # -- construction helpers ------------------------------------------------

    def _poly_mul_mod(self, p, q):
        """Product of two polynomials in theta, reduced mod min_poly."""
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    if b:
                        prod[i + j] += a * b
        # reduce: theta^n = -(lower coefficients)
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for i in range(n):
                    prod[k - n + i] -= c * self.min_poly[i]
        return prod[:n]

    def _build_mult_table(self):
        n = self.degree
        B = [[self.basis_polys[j][i] for j in range(n)] for i in range(n)]  # columns = basis
        self._basis_matrix = B
        self._basis_matrix_inv = mat_inverse(B)
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = self._poly_mul_mod(self.basis_polys[i], self.basis_polys[j])
                coords = mat_vec(self._basis_matrix_inv, prod)
                if any(c.denominator != 1 for c in coords):
                    raise NotAnOrder(
                        f"basis product w{i + 1}*w{j + 1} has non-integer coordinates {coords}"
                    )
                coords = tuple(int(c) for c in coords)
                table[i][j] = coords
                table[j][i] = coords
        self.mult_table = table

    def _compute_disc(self) -> int:
        n = self.degree
        from .intmat import mat_det

        tr = [[self.trace(self.mult_element(i, j)) for j in range(n)] for i in range(n)]
        d = mat_det(tr)
        if d.denominator != 1 or d == 0:
            raise ValidationError(f"trace form determinant {d} is not a nonzero integer")
        return int(d)

    def mult_element(self, i: int, j: int) -> "FieldElement":
        return FieldElement(self, self.mult_table[i][j])

    # -- elements -------------------------------------------------------------

    def element(self, coords) -> "FieldElement":
        return FieldElement(self, coords)

    def zero(self) -> "FieldElement":
        return FieldElement(self, [0] * self.degree)

    def one(self) -> "FieldElement":
        return FieldElement(self, [1] + [0] * (self.degree - 1))

    def from_integer(self, a) -> "FieldElement":
        return FieldElement(self, [a] + [0] * (self.degree - 1))

    def mult_matrix(self, x: "FieldElement"):
        """Matrix of multiplication by x on the integral basis (exact)."""
        n = self.degree
        cols = []
        for j in range(n):
            col = [Fraction(0)] * n
            for i in range(n):
                ci = x.coords[i]
                if ci:
                    for k, t in enumerate(self.mult_table[i][j]):
                        if t:
                            col[k] += ci * t
            cols.append(col)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self, x: "FieldElement") -> Fraction:
        from .intmat import mat_det

        return mat_det(self.mult_matrix(x))

    def trace(self, x: "FieldElement") -> Fraction:
        n = self.degree
        acc = Fraction(0)
        for i in range(n):
            ci = x.coords[i]
            if ci:
                for j in range(n):
                    acc += ci * self.mult_table[i][j][j]
        return acc

    # -- embeddings -------------------------------------------------------------

    def _roots(self, max_width: Fraction) -> list[QInterval]:
        if self._root_enclosures is None:
            self._root_enclosures = isolate_real_roots(self.min_poly)
        roots = self._root_enclosures
        refined = [
            r if r.width <= max_width else refine_root(self.min_poly, r, max_width) for r in roots
        ]
        self._root_enclosures = refined  # nested refinements are monotone
        return refined

    def embeddings(self, precision: int = 128) -> "EmbeddingSet":
        """Certified real embeddings at the requested bit precision."""
        if precision < 53:
            raise ValueError("precision must be at least 53 bits")
        cached = self._embedding_cache.get(precision)
        if cached is not None:
            return cached
        # width <= 2^(1-precision) * max(1, |midpoint|)
        roots = self._roots(Fraction(1))
        refined = []
        for r in roots:
            scale = max(Fraction(1), abs(r.mid))
            target = Fraction(2) ** (1 - precision) * scale
            refined.append(refine_root(self.min_poly, r, target))
        self._root_enclosures = refined
        images = [
            [poly_eval_interval(w, root) for w in self.basis_polys] for root in refined
        ]
        E = EmbeddingSet(self, precision, refined, images)
        self._embedding_cache[precision] = E
        return E

    def __eq__(self, other):
        return self is other or (
            isinstance(other, NumberField)
            and self.min_poly == other.min_poly
            and self.basis_polys == other.basis_polys
        )

    def __hash__(self):
        return hash((self.min_poly, self.basis_polys))

    def __repr__(self):
        return f"NumberField({self.name!r}, degree={self.degree}, disc={self.disc})"


class FieldElement:
    """Immutable field element: exact rational coordinates on the integral basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        if len(coords) != field.degree:
            raise ValueError("wrong coordinate length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch("elements of different fields")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a * other for a in self.coords])
        self._check(other)
        n = self.field.degree
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        ab = a * b
                        for k, t in enumerate(self.field.mult_table[i][j]):
                            if t:
                                out[k] += ab * t
        return FieldElement(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported on ring elements")
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, FieldElement) and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_rational(self) -> Fraction | None:
        """The rational value if this element lies in Q, else None."""
        if all(c == 0 for c in self.coords[1:]):
            return self.coords[0]
        return None

    def norm(self) -> Fraction:
        return self.field.norm(self)

    def trace(self) -> Fraction:
        return self.field.trace(self)

    def __repr__(self):
        return f"FieldElement{self.coords}"


class EmbeddingSet:
    """Certified enclosures of all real embeddings at a fixed precision."""

    def __init__(self, field, precision, roots, basis_images):
        self.field = field
        self.precision = precision
        self.roots = roots
        self.basis_images = basis_images
        for a, b in zip(roots, roots[1:]):
            if not a.hi < b.lo:
                raise PrecisionExhausted("root enclosures overlap (internal bug)")

    def embed(self, x: FieldElement) -> list[QInterval]:
        """Enclosures of every real embedding of x, in ascending root order."""
        if x.field != self.field:
            raise FieldMismatch("element from a different field")
        return [qi_dot(x.coords, row) for row in self.basis_images]

    def refine(self, precision: int | None = None) -> "EmbeddingSet":
        return self.field.embeddings(precision or self.precision * 2)


def decide_refining(field: NumberField, start: EmbeddingSet, decide,
                    policy: PrecisionPolicy = DEFAULT_PRECISION):
    """Run `decide(E)` on embedding sets of increasing precision until it
    returns a non-None verdict; raise PrecisionExhausted at the cap."""
    E = start
    for bits in policy.ladder():
        if bits > E.precision:
            E = field.embeddings(bits)
        out = decide(E)
        if out is not None:
            return out
    raise PrecisionExhausted(f"could not decide at {policy.cap} bits")


def certified_sign(x: FieldElement, index: int, E: EmbeddingSet,
                   policy: PrecisionPolicy = DEFAULT_PRECISION) -> int:
    """Exact sign of one embedding of x (0 iff x == 0)."""
    if x.is_zero():
        return 0
    Ecur = E
    for bits in policy.ladder():
        if bits > Ecur.precision:
            Ecur = x.field.embeddings(bits)
        s = Ecur.embed(x)[index].sign()
        if s != 0:
            return s
    raise PrecisionExhausted("sign undecided at precision cap")


# -- data files -----------------------------------------------------------------


@dataclass
class FieldData:
    """Parsed field file: the field plus optional declared extras."""

    field: NumberField
    fundamental_units: list[FieldElement] | None
    class_reps: list[tuple[str, list[FieldElement]]]
    declared_regulator: str | None
    notes: str | None


def parse_field(doc) -> FieldData:
    """Validate a zetasum-field/1 document (dict or JSON text)."""
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    if doc.get("schema") != SCHEMA:
        raise ValidationError(f"unsupported schema {doc.get('schema')!r}")
    for key in ("name", "degree", "min_poly", "integral_basis"):
        if key not in doc:
            raise ValidationError(f"missing field {key!r}")
    field = NumberField(
        doc["name"],
        doc["min_poly"],
        doc["integral_basis"],
        declared_disc=doc.get("declared_disc"),
    )
    if field.degree != doc["degree"]:
        raise ValidationError("declared degree does not match min_poly")

    units = None
    if "fundamental_units" in doc:
        units = [field.element([_parse_rational(c) for c in u]) for u in doc["fundamental_units"]]

    reps = []
    for entry in doc.get("class_reps", []):
        gens = [field.element([_parse_rational(c) for c in g]) for g in entry["generators"]]
        reps.append((entry["label"], gens))

    return FieldData(
        field=field,
        fundamental_units=units,
        class_reps=reps,
        declared_regulator=doc.get("declared_regulator"),
        notes=doc.get("notes"),
    )


def load_field_file(path) -> FieldData:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_field(fh.read())
