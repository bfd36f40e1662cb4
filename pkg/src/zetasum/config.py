"""Shared numeric policies (precision schedule, enumeration budgets)."""

from dataclasses import dataclass


@dataclass(frozen=True)
class PrecisionPolicy:
    """Working-precision schedule for certified comparisons.

    Comparisons start at `start` bits and double on demand.  Exceeding `cap`
    raises PrecisionExhausted rather than guessing.
    """

    start: int = 128
    cap: int = 4096

    def ladder(self):
        p = self.start
        while p <= self.cap:
            yield p
            p *= 2


@dataclass(frozen=True)
class EnumerationConfig:
    """Budgets for complete lattice enumerations."""

    # hard ceiling on candidate cells visited by one sweep
    max_cells: float = 2.0e9
    # switch to the vectorized bulk path above this many expected candidates
    bulk_threshold: int = 20_000
    # allow the exact algebraic fallback on box-boundary points
    exact_boundary: bool = True


DEFAULT_PRECISION = PrecisionPolicy()
DEFAULT_ENUMERATION = EnumerationConfig()
