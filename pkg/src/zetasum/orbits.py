"""Principality testing and class-order probing via unit-orbit search.

An ideal is principal iff it contains an element whose absolute norm equals
the ideal norm, and any such element is automatically a generator.  The
search region is the per-embedding orbit box: every canonical orbit
representative of norm k fits inside certified bounds derived from the unit
log-lattice spans, so scanning that region completely gives a complete
decision procedure.  The region is covered by the exact ellipsoid
Tr(x^2) <= sum_i B_i^2, enumerated with the same exact machinery as box
enumeration.

The cost grows like exp(regulator); `InfeasibleEnumeration` guards against
fields where a fundamental domain cannot fit in any floating box (see the
class-field backend in `biquadratic` for those).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .config import DEFAULT_ENUMERATION, EnumerationConfig
from .errors import InfeasibleEnumeration
from .ideal_arith import Ideal, class_order_with
from .lattice_enum import fincke_pohst, _element_from_ideal_coords, simple_upper
from .nf_core import EmbeddingSet
from .unit_group import UnitSystem, orbit_box_vectors


def elements_of_norm(a: Ideal, units: UnitSystem, E: EmbeddingSet, k: int,
                     config: EnumerationConfig = DEFAULT_ENUMERATION,
                     first_only: bool = True):
    """Elements x in the ideal with |N(x)| = k, complete up to unit orbits.

    Every unit orbit with |N| = k contributes at least one element to the
    output (its canonical representative lies in the searched region); with
    first_only the search stops at the first hit.
    """
    field = a.field
    n = field.degree
    upper, _ = orbit_box_vectors(units, k)
    # ellipsoid Tr(x^2) <= sum B_i^2 covers the box
    bound_f = sum(b * b for b in upper)
    bound = simple_upper(Fraction(bound_f))

    est = (math.pi * float(bound)) ** (n / 2) / math.gamma(n / 2 + 1)
    est /= math.sqrt(float(a.norm() ** 2 * abs(field.disc)))
    if est > config.max_cells:
        raise InfeasibleEnumeration(
            f"orbit search needs ~{est:.2e} candidates (regulator too large)"
        )

    basis = a.basis_elements
    gram = [[(basis[i] * basis[j]).trace() for j in range(n)] for i in range(n)]
    out = []
    for coords in fincke_pohst(gram, bound):
        if all(c == 0 for c in coords):
            continue
        x = _element_from_ideal_coords(a, coords)
        if abs(x.norm()) == k:
            out.append(x)
            if first_only:
                return out
    return out


def is_principal(a: Ideal, units: UnitSystem, E: EmbeddingSet,
                 config: EnumerationConfig = DEFAULT_ENUMERATION):
    """A generator of the ideal, or None when the ideal is not principal.

    Complete decision: an element of the ideal with |N(x)| = N(a) generates
    it (equal norms force equality of (x) and the ideal), and if a generator
    exists its canonical unit-orbit representative lies inside the searched
    region.
    """
    hits = elements_of_norm(a, units, E, a.norm(), config=config, first_only=True)
    return hits[0] if hits else None


def class_order(a: Ideal, units: UnitSystem, E: EmbeddingSet, h_bound: int,
                config: EnumerationConfig = DEFAULT_ENUMERATION) -> int:
    """Smallest m <= h_bound with a^m principal."""
    return class_order_with(a, h_bound, lambda b: is_principal(b, units, E, config) is not None)
