"""Exact integer arithmetic and multiplicative functions.

Everything downstream (character groups, Kloosterman identities, dispersion
main terms) leans on exact factorizations, so this module works with an
explicit `FactoredInt` record rather than bare integers.  Factorization is
trial division against a cached prime table, with Brent's variant of
Pollard rho for 64-bit cofactors.

All functions are pure; modular arithmetic stays in Python ints (arbitrary
precision), so there is no silent wraparound anywhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_TRIAL_LIMIT = 10**6
_MAX_INPUT = 2**63 - 1


class NotInvertibleError(ValueError):
    """Raised when a modular inverse does not exist."""


class CRTError(ValueError):
    """Raised when a simultaneous congruence system is inconsistent."""


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its full prime factorization.

    Invariants: primes strictly increasing, exponents >= 1, and
    prod(p**e) == value.  The unit 1 has an empty factor list.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"positive integer required, got {self.value}")
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"malformed factorization for {self.value}")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(
                f"factorization product {prod} != value {self.value}"
            )

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@lru_cache(maxsize=1)
def _small_primes() -> np.ndarray:
    sieve = np.ones(_TRIAL_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(_TRIAL_LIMIT) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, rng: random.Random) -> int:
    """One nontrivial factor of composite n (Brent's cycle finding)."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
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
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> FactoredInt:
    """Full prime factorization of 1 <= n <= 2**63 - 1."""
    if not 1 <= n <= _MAX_INPUT:
        raise ValueError(f"factorize requires 1 <= n <= 2**63-1, got {n}")
    fac: dict[int, int] = {}
    rem = n
    for p in _small_primes():
        p = int(p)
        if p * p > rem:
            break
        while rem % p == 0:
            fac[p] = fac.get(p, 0) + 1
            rem //= p
    if rem > 1:
        stack = [rem]
        rng = random.Random(n)
        while stack:
            m = stack.pop()
            if is_prime(m):
                fac[m] = fac.get(m, 0) + 1
                continue
            d = _brent_rho(m, rng)
            stack.append(d)
            stack.append(m // d)
    return FactoredInt(n, tuple(sorted(fac.items())))


def _as_factored(f: FactoredInt | int) -> FactoredInt:
    return f if isinstance(f, FactoredInt) else factorize(f)


def euler_phi(f: FactoredInt | int) -> int:
    """phi(n) = prod p^(e-1) (p-1)."""
    f = _as_factored(f)
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def moebius(f: FactoredInt | int) -> int:
    """mu(n): 0 on squarefull part, else (-1)^(number of prime factors)."""
    f = _as_factored(f)
    for _, e in f.factors:
        if e >= 2:
            return 0
    return -1 if len(f.factors) % 2 else 1


def tau_k(f: FactoredInt | int, k: int = 2) -> int:
    """Number of ordered factorizations of n into k positive integers.

    Multiplicative with tau_k(p^e) = C(e+k-1, k-1); tau_2 is the usual
    divisor count.
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    f = _as_factored(f)
    out = 1
    for _, e in f.factors:
        out *= math.comb(e + k - 1, k - 1)
    return out


def von_mangoldt(f: FactoredInt | int) -> float:
    """Lambda(n): log p if n = p^e, else 0."""
    p = von_mangoldt_prime(f)
    return math.log(p) if p else 0.0


def von_mangoldt_prime(f: FactoredInt | int) -> int:
    """Exact companion of `von_mangoldt`: p if n = p^e, else 0.

    Lets callers assemble sums of Lambda symbolically as integer
    coefficients of log p.
    """
    f = _as_factored(f)
    if len(f.factors) == 1:
        return f.factors[0][0]
    return 0


def kernel(f: FactoredInt | int) -> int:
    """Squarefree kernel (radical) prod_{p | n} p."""
    f = _as_factored(f)
    out = 1
    for p, _ in f.factors:
        out *= p
    return out


def squareful_split(f: FactoredInt | int) -> tuple[int, int]:
    """Write n = n' * k with n' squarefree, k squarefull, (n', k) = 1.

    k collects every prime appearing with exponent >= 2, so p | k implies
    p^2 | k.
    """
    f = _as_factored(f)
    nprime = 1
    k = 1
    for p, e in f.factors:
        if e == 1:
            nprime *= p
        else:
            k *= p**e
    return nprime, k


def coprime_power_gcd(b: int, a: int) -> int:
    """(b, a^infinity) = prod_{p^v || b, p | a} p^v."""
    if a < 1 or b < 1:
        raise ValueError("positive integers required")
    coprime = b
    while True:
        g = math.gcd(coprime, a)
        if g == 1:
            break
        coprime //= g
    return b // coprime


def modinv(a: int, m: int) -> int:
    """Inverse of a mod m in [0, m); 0 when m == 1."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if m == 1:
        return 0
    try:
        return pow(a % m, -1, m)
    except ValueError as exc:
        raise NotInvertibleError(f"{a} is not invertible mod {m}") from exc


def crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """Solve x = r1 (mod m1), x = r2 (mod m2); result mod lcm(m1, m2).

    Raises CRTError when the system is inconsistent, i.e. when
    r1 != r2 (mod gcd(m1, m2)).
    """
    if m1 < 1 or m2 < 1:
        raise ValueError("moduli must be >= 1")
    g = math.gcd(m1, m2)
    if (r1 - r2) % g != 0:
        raise CRTError(f"no solution: {r1} mod {m1} vs {r2} mod {m2}")
    l = m1 // g * m2
    t = ((r2 - r1) // g * modinv(m1 // g, m2 // g)) % (m2 // g)
    return (r1 + m1 * t) % l


def divisors(f: FactoredInt | int) -> list[int]:
    """All positive divisors, sorted."""
    f = _as_factored(f)
    out = [1]
    for p, e in f.factors:
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)
