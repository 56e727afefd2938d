"""Subset-product coverage and exact subset-product counts mod p.

The central objects: the least y such that subset products of {1..y}
reach every reduced residue class, its prime-only and arithmetic-
progression variants, the exact count vector S_y(b) of subsets of
{1..y} with product congruent to b, and the deviation of S_y(b) from
its average 2^y/(p-1) measured in exact rational arithmetic.

Counts include the empty subset (product 1).  Subsets containing a
multiple of p have product congruent to 0; those land in the residue-0
slot of the count vector, so the full vector always sums to 2^y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .characters import unit_roots
from .modcore import PrimeContext, build_context, primes_up_to


class NotCoprimeError(ValueError):
    """Raised when a coverage element is divisible by p."""


class YOutOfRangeError(ValueError):
    """Raised when y is outside the supported range of an operation."""


class PrecisionRangeError(ValueError):
    """Raised when 2^y would overrun the double-precision cross-check."""


class BadDifferenceError(ValueError):
    """Raised when a progression's common difference is a multiple of p."""


# ---------------------------------------------------------------------------
# Coverage (bitset over indices; multiplying by n rotates by ind(n))


@dataclass(frozen=True)
class CoverageState:
    """Set of residues realizable as subset products of consumed elements.

    The set is stored as a bitset over discrete-log indices, where
    consuming an element is a single rotate-and-or pass.  Residue 1 (bit
    at index 0) is always present: the empty product.  States are
    immutable; consuming returns a new state.
    """

    ctx: PrimeContext
    mask: int
    consumed: int

    @property
    def full_mask(self) -> int:
        return (1 << self.ctx.order) - 1

    @property
    def covered(self) -> bool:
        return self.mask == self.full_mask

    def contains(self, b: int) -> bool:
        r = b % self.ctx.p
        if r == 0:
            return False
        return bool(self.mask >> self.ctx.ind[r] & 1)

    def residues(self) -> list[int]:
        """The reached residues, ascending."""
        p, ind = self.ctx.p, self.ctx.ind
        return [r for r in range(1, p) if self.mask >> ind[r] & 1]


def initial_coverage(ctx: PrimeContext) -> CoverageState:
    """Coverage before any element: only the empty product, residue 1."""
    return CoverageState(ctx=ctx, mask=1, consumed=0)


def coverage_from_residues(ctx: PrimeContext, residues: Iterable[int]) -> CoverageState:
    """Coverage state with a given reached set (residue 1 forced in)."""
    mask = 1
    for b in residues:
        r = b % ctx.p
        if r == 0:
            raise NotCoprimeError(f"residue {b} is divisible by {ctx.p}")
        mask |= 1 << ctx.ind[r]
    return CoverageState(ctx=ctx, mask=mask, consumed=0)


def coverage_consume(state: CoverageState, n: int) -> CoverageState:
    """Extend the reached set with every product reached-element * n."""
    ctx = state.ctx
    r = n % ctx.p
    if r == 0:
        raise NotCoprimeError(f"element {n} is divisible by {ctx.p}")
    s = ctx.ind[r]
    mask = state.mask
    if s:
        m = ctx.order
        full = (1 << m) - 1
        mask |= (mask << s | mask >> (m - s)) & full
    return CoverageState(ctx=ctx, mask=mask, consumed=state.consumed + 1)


def coverage_threshold(ctx: PrimeContext) -> int:
    """Least y such that subset products of {1..y} reach every residue."""
    state = initial_coverage(ctx)
    for n in range(1, ctx.p):
        state = coverage_consume(state, n)
        if state.covered:
            return n
    raise AssertionError(f"coverage did not close below p={ctx.p}")


def y_of_p(p: int) -> int:
    """Least y such that subset products of {1..y} cover all of [1, p-1]."""
    return coverage_threshold(build_context(p))


def prime_coverage_threshold(ctx: PrimeContext) -> int | None:
    """Least y' < p whose primes' subset products cover everything, else None."""
    state = initial_coverage(ctx)
    prime_set = set(primes_up_to(ctx.p - 1))
    for yv in range(1, ctx.p):
        if yv in prime_set:
            state = coverage_consume(state, yv)
        if state.covered:
            return yv
    return None


def y_prime_of_p(p: int) -> int | None:
    """Prime-only coverage threshold; None when even all primes < p fail."""
    return prime_coverage_threshold(build_context(p))


def progression_coverage_threshold(
    ctx: PrimeContext, a: int, d: int, y_max: int
) -> int | None:
    """Least y <= y_max such that subset products of a, a+d, ..., a+(y-1)d
    cover everything; terms divisible by p are skipped.  None if no y works.

    A difference divisible by p collapses the progression to one residue
    and is rejected, except when that residue is 0: then every term is
    skipped and the honest answer is non-coverage.
    """
    if d % ctx.p == 0 and a % ctx.p != 0:
        raise BadDifferenceError(f"difference {d} is a multiple of {ctx.p}")
    state = initial_coverage(ctx)
    for j in range(y_max):
        term = a + j * d
        if term % ctx.p != 0:
            state = coverage_consume(state, term)
        if state.covered:
            return j + 1
    return None


def y_of_progression(p: int, a: int, d: int, y_max: int) -> int | None:
    """Coverage threshold along an arithmetic progression of length <= y_max."""
    return progression_coverage_threshold(build_context(p), a, d, y_max)


# ---------------------------------------------------------------------------
# Exact subset-product counts


@dataclass(frozen=True)
class SubsetProductCounts:
    """Exact counts of subsets of {1..y} by product residue mod p.

    counts[b] for b in [1, p-1] is S_y(b); counts[0] counts the subsets
    whose product is divisible by p (nonzero only when y >= p).  The
    whole vector sums to 2^y.
    """

    p: int
    y: int
    counts: tuple[int, ...]

    def count_of(self, b: int) -> int:
        return self.counts[b % self.p]

    def unit_mass(self) -> int:
        """Number of subsets whose product is coprime to p."""
        return sum(self.counts[1:])

    def reached(self) -> list[int]:
        """Residues b >= 1 with S_y(b) > 0, ascending."""
        return [b for b in range(1, self.p) if self.counts[b] > 0]


def _apply_element(counts: list[int], n: int, p: int) -> list[int]:
    # take-or-skip: every subset either gains n or does not
    r = n % p
    if r == 1:
        return [c + c for c in counts]
    new = list(counts)
    if r == 0:
        # "take" sends every product to 0; "skip" leaves the rest alone
        new[0] += sum(counts)
        return new
    new[0] += counts[0]  # 0 * r stays 0
    rn = 0
    for b in range(1, p):
        rn += r
        if rn >= p:
            rn -= p
        new[rn] += counts[b]
    return new


def subset_product_counts(p: int, y: int) -> SubsetProductCounts:
    """Exact S_y(b) for all b, by take-or-skip dynamic programming.

    Starts from count 1 at residue 1 (the empty subset) and folds in
    n = 1..y; arbitrary-precision integers throughout.
    """
    if y < 1:
        raise YOutOfRangeError(f"y={y} must be >= 1")
    counts = [0] * p
    counts[1 % p] = 1
    for n in range(1, y + 1):
        counts = _apply_element(counts, n, p)
    return SubsetProductCounts(p=p, y=y, counts=tuple(counts))


def enumerate_subset_counts(p: int, y: int) -> tuple[int, ...]:
    """Brute-force oracle: walk all 2^y subsets and tally product residues.

    Independent of the dynamic program (explicit product list, doubled one
    element at a time).  Exponential; intended for y <= ~20.
    """
    if y < 1:
        raise YOutOfRangeError(f"y={y} must be >= 1")
    products = [1]
    for n in range(1, y + 1):
        r = n % p
        products += [v * r % p for v in products]
    counts = [0] * p
    for v in products:
        counts[v] += 1
    return tuple(counts)


@dataclass(frozen=True)
class ProgressionCounts:
    """Subset-product counts over the terms of an arithmetic progression.

    Ground set: the terms of a, a+d, ..., a+(y-1)d that are coprime to p
    (`zero_terms` counts the excluded multiples of p).  The retained
    counts therefore sum to 2^(y - zero_terms); every subset touching a
    skipped term has product divisible by p, and reinstating those terms
    would multiply each count by 2^zero_terms without adding products.
    """

    p: int
    a: int
    d: int
    y: int
    zero_terms: int
    counts: tuple[int, ...]


def progression_subset_counts(p: int, a: int, d: int, y: int) -> ProgressionCounts:
    """Exact subset-product counts along a progression of length y."""
    if y < 1:
        raise YOutOfRangeError(f"y={y} must be >= 1")
    counts = [0] * p
    counts[1 % p] = 1
    zero_terms = 0
    for j in range(y):
        term = a + j * d
        if term % p == 0:
            zero_terms += 1
            continue
        counts = _apply_element(counts, term, p)
    return ProgressionCounts(
        p=p, a=a, d=d, y=y, zero_terms=zero_terms, counts=tuple(counts)
    )


# Above this, 1 ulp of relative drift in the complex products could rival
# the 1e-6-scaled tolerance; the exact DP has no such ceiling.
MAX_CROSSCHECK_Y = 60


def counts_via_characters(ctx: PrimeContext, y: int) -> list[float]:
    """Evaluate the orthogonality form of S_y(b) in double precision.

    Returns a length-p vector (slot 0 unused, 0.0) approximating the exact
    counts: averaging chi(b^{-1}) * prod_{n<=y} (1 + chi(n)) over all
    characters.  Double precision is guaranteed adequate only for
    y <= MAX_CROSSCHECK_Y = 60.  This is the cross-check route; the
    dynamic program is the ground truth.
    """
    if y < 1:
        raise YOutOfRangeError(f"y={y} must be >= 1")
    if y > MAX_CROSSCHECK_Y:
        raise PrecisionRangeError(
            f"y={y} exceeds the double-precision guarantee ({MAX_CROSSCHECK_Y})"
        )
    p, m, ind = ctx.p, ctx.order, ctx.ind
    roots = unit_roots(m)
    prods = []
    for k in range(m):
        acc = 1 + 0j
        for n in range(1, y + 1):
            r = n % p
            if r == 0:
                continue  # factor 1 + chi(n) = 1
            acc *= 1 + roots[k * ind[r] % m]
        prods.append(acc)
    out = [0.0] * p
    for b in range(1, p):
        ib = ind[b]
        acc = 0j
        for k in range(m):
            acc += roots[(m - k * ib % m) % m] * prods[k]
        out[b] = acc.real / m
    return out


@dataclass(frozen=True)
class ErrorReport:
    """Worst-case deviation of S_y(b) from 2^y/(p-1), exactly.

    normalized_ratio is max_b |S_y(b) - 2^y/(p-1)| * p^2 / 2^y, computed
    as an exact rational and converted to float once at the end.
    """

    p: int
    y: int
    main_term: Fraction
    max_abs_error: Fraction
    normalized_ratio: float


def error_report(p: int, y: int) -> ErrorReport:
    """Exact-rational worst-case error of the subset-product counts."""
    if not 1 <= y < p:
        raise YOutOfRangeError(f"need 1 <= y < p, got y={y}, p={p}")
    counts = subset_product_counts(p, y).counts
    two_y = 1 << y
    m = p - 1
    # compare over integers: |S(b) * (p-1) - 2^y|, then scale by 1/(p-1)
    max_scaled = max(abs(counts[b] * m - two_y) for b in range(1, p))
    max_err = Fraction(max_scaled, m)
    ratio = max_err * p * p / two_y
    return ErrorReport(
        p=p,
        y=y,
        main_term=Fraction(two_y, m),
        max_abs_error=max_err,
        normalized_ratio=float(ratio),
    )


def mass_total(p: int, y: int) -> int:
    """Total subset count 2^y, for mass-conservation checks."""
    return 1 << y


def chain_holds(n2: int, big_g: int, g: int, y: int) -> bool:
    """The spectrum chain: n2 <= G <= g and n2 <= G <= y."""
    return n2 <= big_g <= g and big_g <= y


def theorem_y(p: int, exponent: float = 0.6) -> int:
    """Default sweep choice ceil(p^exponent), clamped below p."""
    return min(p - 1, max(1, math.ceil(p**exponent)))
