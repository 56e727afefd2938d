"""Smooth-number machinery: friability tests, exact Psi(t, y) counts, and
constructive bounded-part factorizations.

All exponent comparisons against fractional powers (n versus y^(a/b)) are
decided in exact integer arithmetic: n <= y^(a/b) iff n^b <= y^a.  Floats
never decide a boundary here.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from fractions import Fraction


class NotFriableError(ValueError):
    """Raised when n has a prime factor above the required smoothness bound."""


class BoundViolatedError(ValueError):
    """Raised when n exceeds the size bound that guarantees a k-way split."""


class HypothesisViolatedError(ValueError):
    """Raised when a ranged-factorization hypothesis fails (range, epsilon,
    or a prime factor above the greedy working bound y^(1-epsilon))."""


class InternalContradictionError(AssertionError):
    """The construction produced an invalid result under valid hypotheses.
    Should be unreachable; any occurrence is a bug, and tests treat it so."""


class RangeViolationError(ValueError):
    """Raised when (t, y) falls outside the validity range y <= t <= y^2."""


def largest_prime_factor(n: int) -> int:
    """P(n), with the convention P(1) = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    best = 1
    m = n
    while m % 2 == 0:
        best = 2
        m //= 2
    d = 3
    while d * d <= m:
        while m % d == 0:
            best = d
            m //= d
        d += 2
    return m if m > 1 else best


def prime_factors_desc(n: int) -> list[int]:
    """Prime factors of n with multiplicity, largest first."""
    out = []
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.append(d)
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    out.sort(reverse=True)
    return out


def largest_prime_factor_sieve(limit: int) -> array:
    """Array a with a[n] = P(n) for 0 <= n <= limit (a[0] = 0, a[1] = 1)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    lpf = array("i", [0]) * (limit + 1)
    lpf[1] = 1
    for q in range(2, limit + 1):
        if lpf[q] == 0:  # q prime; overwrite so the final mark is the largest
            for mult in range(q, limit + 1, q):
                lpf[mult] = q
    return lpf


def psi_exact(t: int, y: int) -> int:
    """Number of y-friable integers in [1, t]."""
    if t < 1 or y < 1:
        raise ValueError("t and y must be >= 1")
    if y >= t:
        return t
    lpf = largest_prime_factor_sieve(t)
    return sum(1 for n in range(1, t + 1) if lpf[n] <= y)


def psi_asymptotic(t: int, y: int) -> float:
    """Main term t * (1 - log(log t / log y)), valid for y <= t <= y^2.

    The discrepancy against psi_exact, normalized by t / log t, is the
    quantity sweeps report.
    """
    if y < 2:
        raise ValueError("y must be >= 2")
    if not y <= t <= y * y:
        raise RangeViolationError(f"need y <= t <= y^2, got t={t}, y={y}")
    return t * (1.0 - math.log(math.log(t) / math.log(y)))


def power_le(v: int, base: int, exponent: Fraction) -> bool:
    """Exact test v <= base**exponent for v, base >= 1 and exponent > 0."""
    a, b = exponent.numerator, exponent.denominator
    return v**b <= base**a


def power_lt(v: int, base: int, exponent: Fraction) -> bool:
    """Exact test v < base**exponent."""
    a, b = exponent.numerator, exponent.denominator
    return v**b < base**a


@dataclass(frozen=True)
class FactorizationResult:
    """An ordered bounded-part factorization together with its parameters.

    mode KWAY: exactly k factors, each <= y.
    mode RANGED: ell factors with k/2 < ell <= k, each in (y^epsilon, y].
    mode THREEWAY: exactly 3 factors, each 1 or in (y^epsilon, y].
    `in_hypothesis` is False only for best-effort KWAY runs whose size
    bound failed.
    """

    n: int
    factors: tuple[int, ...]
    y: int
    k: int
    epsilon: Fraction | None
    mode: str
    in_hypothesis: bool = True

    def __post_init__(self) -> None:
        prod = 1
        for f in self.factors:
            prod *= f
        if prod != self.n:
            raise InternalContradictionError(
                f"factors {self.factors} do not multiply to {self.n}"
            )


def _greedy_fill(primes_desc: list[int], buckets_n: int, fits) -> list[int] | None:
    """Assign primes (largest first) each to the first bucket that can take it.

    `fits(value, prime)` decides whether a bucket at `value` absorbs `prime`.
    Returns None if some prime fits nowhere.
    """
    buckets = [1] * buckets_n
    for q in primes_desc:
        for i, v in enumerate(buckets):
            if fits(v, q):
                buckets[i] = v * q
                break
        else:
            return None
    return buckets


def greedy_k_factorization(
    n: int, y: int, k: int, best_effort: bool = False
) -> FactorizationResult:
    """Split a y-friable n <= y^((k+1)/2) into exactly k factors, each <= y.

    Primes go largest-first into the lowest-indexed bucket whose value v
    satisfies v * p <= y.  The size bound guarantees this never gets stuck;
    the bound check n^2 <= y^(k+1) is exact integer arithmetic.  With
    best_effort=True the greedy is attempted even when the bound fails
    (result flagged via in_hypothesis=False); it may then raise
    BoundViolatedError if it does get stuck.
    """
    if n < 1 or y < 2 or k < 1:
        raise ValueError("need n >= 1, y >= 2, k >= 1")
    if largest_prime_factor(n) > y:
        raise NotFriableError(f"n={n} has a prime factor above y={y}")
    in_hyp = n * n <= y ** (k + 1)
    if not in_hyp and not best_effort:
        raise BoundViolatedError(f"n={n} exceeds y^((k+1)/2) for y={y}, k={k}")
    buckets = _greedy_fill(prime_factors_desc(n), k, lambda v, q: v * q <= y)
    if buckets is None:
        raise BoundViolatedError(
            f"greedy assignment stuck for n={n}, y={y}, k={k} (out of hypothesis)"
        )
    return FactorizationResult(
        n=n, factors=tuple(buckets), y=y, k=k, epsilon=None, mode="KWAY",
        in_hypothesis=in_hyp,
    )


def ranged_factorization(n: int, y: int, k: int, epsilon) -> FactorizationResult:
    """Split n into ell factors, k/2 < ell <= k, each in (y^epsilon, y].

    Hypotheses (decided exactly): 0 < epsilon < 1/(k+2) as a rational,
    n y-friable, and y^(k/2+epsilon) < n < y^((k+1)/2).

    Construction: primes above the working bound y^(1-epsilon) become
    singleton factors (each already sits in (y^epsilon, y]); the rest is
    greedy-filled into k - m + 1 buckets against the working bound, the
    two smallest buckets are merged (their product is <= y), unit factors
    are dropped, and every leftover factor <= y^epsilon is paired with a
    partner <= y^(1-epsilon).  The merged factor joins the pairing pool:
    it can itself land at or below y^epsilon (n = 2 * 41^2, y = 100,
    k = 3, epsilon = 19/100 produces merged factor 2), and pairing it is
    safe because any factor above y^(1-epsilon) is unique and never
    selected as a partner.

    When every prime factor is at most y^(1-epsilon) this construction
    provably succeeds, and any failure raises InternalContradictionError
    (a bug).  With a prime factor in (y^(1-epsilon), y] no split need
    exist at all (n = 2 * 503^2, y = 1000, epsilon = 19/100, k = 3 admits
    none), so that regime is best effort: the result is validated and
    HypothesisViolatedError raised if the construction cannot deliver.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, k + 2):
        raise HypothesisViolatedError(
            f"epsilon={eps} outside (0, 1/{k + 2}) for k={k}"
        )
    if n < 1 or y < 2 or k < 1:
        raise ValueError("need n >= 1, y >= 2, k >= 1")
    if largest_prime_factor(n) > y:
        raise NotFriableError(f"n={n} has a prime factor above y={y}")
    a, b = eps.numerator, eps.denominator
    if not (n ** (2 * b) > y ** (k * b + 2 * a) and n * n < y ** (k + 1)):
        raise HypothesisViolatedError(
            f"n={n} outside (y^(k/2+eps), y^((k+1)/2)) for y={y}, k={k}, eps={eps}"
        )

    work_bound = y ** (b - a)  # v <= y^(1-eps)  <=>  v^b <= work_bound
    small_bound = y**a  # v <= y^eps  <=>  v^b <= small_bound
    primes = prime_factors_desc(n)
    bigs = [q for q in primes if q**b > work_bound]
    smalls = [q for q in primes if q**b <= work_bound]
    m = len(bigs)
    guaranteed = m == 0

    def give_up(reason: str) -> Exception:
        if guaranteed:
            return InternalContradictionError(
                f"{reason} for n={n}, y={y}, k={k}, eps={eps}"
            )
        return HypothesisViolatedError(
            f"prime factor {bigs[0]} of n={n} exceeds y^(1-eps) and the "
            f"construction found no valid split ({reason})"
        )

    if m > k:
        raise give_up(f"{m} oversized prime factors exceed k")
    buckets = _greedy_fill(
        smalls, k - m + 1, lambda v, q: (v * q) ** b <= work_bound
    )
    if buckets is None:
        raise give_up("greedy assignment stuck")
    bs = sorted(buckets)
    if len(bs) >= 2:
        merged = bs[0] * bs[1]
        small_side = bs[2:] + [merged]
    else:
        small_side = bs
    parts = [v for v in small_side if v != 1]
    if any(v**b <= small_bound for v in parts):
        pool = sorted(parts)
        g = sum(1 for v in pool if v**b <= small_bound)
        if 2 * g >= len(pool):
            raise give_up(f"too many small factors ({g} of {len(pool)})")
        paired = [pool[i] * pool[g + i] for i in range(g)]
        parts = paired + pool[2 * g :]
    parts = bigs + parts

    ell = len(parts)
    ok = (
        2 * ell > k
        and ell <= k
        and all(v <= y and v**b > small_bound for v in parts)
    )
    if not ok:
        raise give_up(f"invalid split {parts}")
    return FactorizationResult(
        n=n, factors=tuple(parts), y=y, k=k, epsilon=eps, mode="RANGED"
    )


def three_way_factorization(n: int, y: int, epsilon) -> FactorizationResult:
    """Split n with y^(3/2+eps) < n < y^2 into (c1, c2, c3), each factor
    either 1 or in (y^epsilon, y]; requires 0 < epsilon < 1/5."""
    res = ranged_factorization(n, y, 3, epsilon)
    factors = res.factors + (1,) * (3 - len(res.factors))
    return FactorizationResult(
        n=n, factors=factors, y=y, k=3, epsilon=res.epsilon, mode="THREEWAY"
    )


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    out.sort()
    return out


def kway_feasible(n: int, y: int, k: int) -> bool:
    """Exhaustive check: can n be written as a product of k factors <= y?

    Independent of the greedy path (pure divisor search); unit factors
    allowed.  Intended for desk-scale sharpness witnesses.
    """
    if k == 0:
        return n == 1
    divs = [d for d in _divisors(n) if d <= y]

    def rec(m: int, slots: int, lo: int) -> bool:
        if slots == 1:
            return lo <= m <= y
        for d in divs:
            if d < lo:
                continue
            if m % d == 0 and rec(m // d, slots - 1, d):
                return True
        return False

    return rec(n, k, 1)


def ranged_feasible(n: int, y: int, k: int, epsilon) -> bool:
    """Exhaustive check: does any split into ell in (k/2, k] factors, each
    in (y^epsilon, y], exist?  Bounds decided exactly."""
    eps = Fraction(epsilon)
    a, b = eps.numerator, eps.denominator
    small_bound = y**a
    good = [d for d in _divisors(n) if d <= y and d**b > small_bound]

    def rec(m: int, used: int, lo: int) -> bool:
        if m == 1:
            return 2 * used > k and used <= k
        if used == k:
            return False
        for d in good:
            if d < lo or d == 1:
                continue
            if m % d == 0 and rec(m // d, used + 1, d):
                return True
        return False

    return rec(n, 0, 2)
