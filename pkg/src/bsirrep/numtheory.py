"""
Integer number theory: gcd, modular inverses, multiplicative orders, Euler phi,
factorization and divisor enumeration.

Everything works on Python ints, so quantities such as q**dim - p**dim never
overflow. Factorization is trial division by the primes below 10**6, then
Brent's variant of Pollard rho with Miller-Rabin certification of the
cofactors. Two budgets guard against hanging on large inputs; both can be
overridden through the environment:

    BSIRREP_MAX_FACTOR_BITS   largest composite cofactor (in bits) that is
                              still attacked after the rho budget runs out
    BSIRREP_MAX_DIVISORS      largest divisor count `divisors` will enumerate
"""
from __future__ import annotations

import enum
import functools
import math
import os
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import (
    DivisorBudgetExceeded,
    FactorizationBudgetExceeded,
    NotInvertible,
    ZeroParameter,
)

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_MAX_FACTOR_BITS = 128
DEFAULT_MAX_DIVISORS = 10**6
DEFAULT_RHO_ITERATIONS = 2_000_000

# Deterministic for n < 3.3e24; probabilistic (error < 4**-13) above.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def max_factor_bits() -> int:
    return int(os.environ.get("BSIRREP_MAX_FACTOR_BITS", DEFAULT_MAX_FACTOR_BITS))


def max_divisors() -> int:
    return int(os.environ.get("BSIRREP_MAX_DIVISORS", DEFAULT_MAX_DIVISORS))


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_inverse(a: int, m: int) -> int:
    """Return x in [0, m) with a*x = 1 (mod m). By convention mod_inverse(a, 1) = 0."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def solve_s(p: int, q: int, ell: int) -> int:
    """The unique s in [0, ell) with q*s = p (mod ell)."""
    return (p * mod_inverse(q, ell)) % ell


def power_difference(p: int, q: int, k: int) -> int:
    """q**k - p**k."""
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    return q**k - p**k


# -- primes ------------------------------------------------------------------


@functools.lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    n = TRIAL_DIVISION_LIMIT
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first thirteen prime bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, c: int, max_iterations: int | None) -> tuple[int | None, int]:
    """One Brent-rho attempt with f(x) = x^2 + c.

    Returns (proper factor or None, iterations spent).
    """
    rng = random.Random(c)
    y = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    x = ys = y
    iterations = 0
    while g == 1:
        if max_iterations is not None and iterations >= max_iterations:
            return None, iterations
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        iterations += 2 * r
        r *= 2
    if g == n:
        # Batched gcd overshot; backtrack one step at a time.
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), iterations


def _split(n: int, rho_iterations: int, bit_budget: int) -> int:
    """Find a nontrivial factor of the composite n."""
    remaining = rho_iterations
    c = 1
    while remaining > 0:
        d, spent = _brent_rho(n, c, remaining)
        if d is not None:
            return d
        remaining -= spent
        c += 1
    if n.bit_length() > bit_budget:
        raise FactorizationBudgetExceeded(
            f"composite cofactor of {n.bit_length()} bits exceeds the "
            f"{bit_budget}-bit budget after the rho stage"
        )
    while True:
        d, _ = _brent_rho(n, c, None)
        if d is not None:
            return d
        c += 1


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending (prime, exponent) pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(e < 1 for _, e in self.factors):
            raise ValueError(f"malformed factorization {self.factors}")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def divisor_count(self) -> int:
        return math.prod(e + 1 for _, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factorize(
    m: int,
    *,
    bit_budget: int | None = None,
    rho_iterations: int = DEFAULT_RHO_ITERATIONS,
) -> Factorization:
    """Complete prime factorization of m >= 1, primes ascending.

    Raises FactorizationBudgetExceeded when a composite cofactor larger than
    `bit_budget` bits (default from BSIRREP_MAX_FACTOR_BITS) survives the
    rho stage.
    """
    if m < 1:
        raise ValueError(f"factorize needs m >= 1, got {m}")
    if bit_budget is None:
        bit_budget = max_factor_bits()
    return _factorize(m, bit_budget, rho_iterations)


@functools.lru_cache(maxsize=8192)
def _factorize(m: int, bit_budget: int, rho_iterations: int) -> Factorization:
    found: dict[int, int] = {}
    n = m
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        stack = [n]
        while stack:
            c = stack.pop()
            if c < TRIAL_DIVISION_LIMIT**2 or is_probable_prime(c):
                # Below 10**12 every survivor of trial division is prime.
                found[c] = found.get(c, 0) + 1
                continue
            d = _split(c, rho_iterations, bit_budget)
            stack.extend((d, c // d))
    return Factorization(tuple(sorted(found.items())))


def divisors(f: Factorization, *, limit: int | None = None) -> list[int]:
    """All positive divisors of f.value, ascending."""
    if limit is None:
        limit = max_divisors()
    count = f.divisor_count()
    if count > limit:
        raise DivisorBudgetExceeded(f"{count} divisors exceed the budget of {limit}")
    divs = [1]
    for p, e in f:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    out = m
    for p, _ in factorize(m):
        out -= out // p
    return out


def multiplicative_order(s: int, m: int) -> int:
    """Smallest k >= 1 with s**k = 1 (mod m); 1 when m == 1."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 1
    if math.gcd(s, m) != 1:
        raise NotInvertible(f"{s} is not a unit modulo {m}")
    order = euler_phi(m)
    for r, _ in factorize(order):
        while order % r == 0 and pow(s, order // r, m) == 1:
            order //= r
    return order


class HopfianStatus(str, enum.Enum):
    RESIDUALLY_FINITE = "residually_finite"
    HOPFIAN = "hopfian"
    NON_HOPFIAN = "non_hopfian"


def meshed(p: int, q: int) -> bool:
    """p | q, q | p, or p and q have exactly the same prime divisors."""
    p, q = abs(p), abs(q)
    if q % p == 0 or p % q == 0:
        return True
    return factorize(p).primes == factorize(q).primes


def hopfian_status(p: int, q: int) -> HopfianStatus:
    if p == 0 or q == 0:
        raise ZeroParameter("BS(p, q) needs nonzero p and q")
    ap, aq = abs(p), abs(q)
    if ap == aq or ap == 1 or aq == 1:
        return HopfianStatus.RESIDUALLY_FINITE
    if meshed(ap, aq):
        return HopfianStatus.HOPFIAN
    return HopfianStatus.NON_HOPFIAN
