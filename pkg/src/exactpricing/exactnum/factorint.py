"""Integer factoring for square-free decomposition.

Radicands are factored by trial division first, then Pollard's rho with
Brent cycle detection for any stubborn cofactor.  Primality of cofactors
is certified with the Miller-Rabin test using the base set that is
deterministic below 3.3 * 10^24; integers whose unfactored part exceeds
that bound are rejected with :class:`InstanceTooLarge` rather than
factored probabilistically, so a successful decomposition is always a
proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from gmpy2 import is_square, isqrt, mpz

from ..errors import InstanceTooLarge

# Miller-Rabin with these bases is a deterministic primality test for all
# n < 3,317,044,064,679,887,385,961,981 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class FactorBudget:
    """Knobs bounding how hard factoring is allowed to try.

    Attributes:
        trial_bound: largest prime used for trial division.
        rho_max_steps: total rho iterations allowed per factorization.
    """

    trial_bound: int = 100_000
    rho_max_steps: int = 2_000_000


DEFAULT_BUDGET = FactorBudget()


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n below the certified bound."""
    n = int(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, max_steps: int) -> int:
    """Brent-cycle rho. Returns a nontrivial factor of composite odd n,
    or 0 if the step budget ran out."""
    if n % 2 == 0:
        return 2
    steps = 0
    for c in range(1, 64):
        y, r, q = 2, 1, 1
        g = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                block = min(128, r - k)
                for _ in range(block):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                steps += block
                if steps > max_steps:
                    return 0
                g = gcd(q, n)
                k += block
            r *= 2
        if g == n:
            # Backtrack one step at a time to recover the factor.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                steps += 1
                if steps > max_steps:
                    return 0
        if g != n:
            return g
    return 0


def factorize(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> dict[int, int]:
    """Complete prime factorization of n >= 1 as {prime: exponent}.

    Raises:
        ValueError: n < 1.
        InstanceTooLarge: factoring would exceed the budget, or a cofactor
            is too large for certified primality testing.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    factors: dict[int, int] = {}

    def record(p: int, e: int = 1) -> None:
        factors[p] = factors.get(p, 0) + e

    while n % 2 == 0:
        record(2)
        n //= 2
    p = 3
    while p * p <= n and p <= budget.trial_bound:
        while n % p == 0:
            record(p)
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    remaining_steps = budget.rho_max_steps
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < p * p:
            # No prime factor below p divides m, so m is prime.
            record(m)
            continue
        if is_square(mpz(m)):
            r = int(isqrt(mpz(m)))
            stack.extend((r, r))
            continue
        if m >= _MR_DETERMINISTIC_BOUND:
            raise InstanceTooLarge(
                f"cofactor {m} exceeds the certified primality bound"
            )
        if is_probable_prime(m):
            record(m)
            continue
        d = _pollard_rho(m, remaining_steps)
        if d in (0, 1, m):
            raise InstanceTooLarge(f"factoring budget exhausted on {m}")
        stack.extend((d, m // d))
    return factors


def square_free_decompose(
    n: int, budget: FactorBudget = DEFAULT_BUDGET
) -> tuple[int, int]:
    """Write n >= 0 as s^2 * d with d square-free. Returns (s, d).

    sqrt(n) = s * sqrt(d); d = 1 exactly when n is a perfect square.
    """
    n = int(n)
    if n < 0:
        raise ValueError(f"radicand must be nonnegative, got {n}")
    if n in (0, 1):
        return (n, 1) if n else (0, 1)
    if is_square(mpz(n)):
        return int(isqrt(mpz(n))), 1
    s, d = 1, 1
    for prime, exp in factorize(n, budget).items():
        if exp % 2:
            d *= prime
        s *= prime ** (exp // 2)
    return s, d


__all__ = [
    "FactorBudget",
    "DEFAULT_BUDGET",
    "is_probable_prime",
    "factorize",
    "square_free_decompose",
]
