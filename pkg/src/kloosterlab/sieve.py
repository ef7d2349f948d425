"""Segmented sieves for bulk tabulation of arithmetic functions.

The workhorse pattern: for a segment [lo, hi) divide out every prime
p <= sqrt(hi-1) from each index, accumulating the target multiplicative
function; whatever remains after the passes is either 1 or a single prime
exceeding the trial bound.  This tabulates tau_k, Lambda, mu, phi over a
window in O((hi-lo) log log hi) without factoring any single integer.

Chebyshev-type counts psi(x; q, a), psi_q(x), psi(x, chi) are folds over
the Lambda table; they run segment by segment in a fixed order, so float
results are bit-reproducible run to run.

`SieveTable` keeps the per-index factorization data (CSR layout) of one
segment, enough to reconstruct arith.factorize(n) for every n inside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from . import arith

DEFAULT_SEGMENT = 1 << 24
_MAX_HI = 1 << 50


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n, as int64."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


@numba.njit(cache=True)
def _seg_tau_k(lo, hi, primes, binom, out):  # pragma: no cover - jit
    n = hi - lo
    rem = np.empty(n, np.int64)
    for i in range(n):
        rem[i] = lo + i
        out[i] = 1
    for p in primes:
        j = ((lo + p - 1) // p) * p
        while j < hi:
            i = j - lo
            e = 0
            while rem[i] % p == 0:
                rem[i] //= p
                e += 1
            out[i] *= binom[e]
            j += p
    for i in range(n):
        if rem[i] > 1:
            out[i] *= binom[1]


@numba.njit(cache=True)
def _seg_lambda(lo, hi, primes, plogs, out):  # pragma: no cover - jit
    n = hi - lo
    rem = np.empty(n, np.int64)
    omega = np.zeros(n, np.uint8)
    first = np.zeros(n, np.float64)
    for i in range(n):
        rem[i] = lo + i
    for idx in range(len(primes)):
        p = primes[idx]
        j = ((lo + p - 1) // p) * p
        while j < hi:
            i = j - lo
            while rem[i] % p == 0:
                rem[i] //= p
            if omega[i] == 0:
                first[i] = plogs[idx]
            omega[i] += 1
            j += p
    for i in range(n):
        m = lo + i
        if m <= 1:
            out[i] = 0.0
        elif omega[i] == 0:
            out[i] = math.log(m)  # m itself is prime
        elif omega[i] == 1 and rem[i] == 1:
            out[i] = first[i]  # prime power of a sieved prime
        else:
            out[i] = 0.0


@numba.njit(cache=True)
def _seg_mu(lo, hi, primes, out):  # pragma: no cover - jit
    n = hi - lo
    rem = np.empty(n, np.int64)
    for i in range(n):
        rem[i] = lo + i
        out[i] = 1
    for p in primes:
        j = ((lo + p - 1) // p) * p
        while j < hi:
            i = j - lo
            e = 0
            while rem[i] % p == 0:
                rem[i] //= p
                e += 1
            if e >= 2:
                out[i] = 0
            else:
                out[i] = -out[i]
            j += p
    for i in range(n):
        if rem[i] > 1:
            out[i] = -out[i]


@numba.njit(cache=True)
def _seg_phi(lo, hi, primes, out):  # pragma: no cover - jit
    n = hi - lo
    rem = np.empty(n, np.int64)
    for i in range(n):
        rem[i] = lo + i
        out[i] = 1
    for p in primes:
        j = ((lo + p - 1) // p) * p
        while j < hi:
            i = j - lo
            e = 0
            while rem[i] % p == 0:
                rem[i] //= p
                e += 1
            out[i] *= p ** (e - 1) * (p - 1)
            j += p
    for i in range(n):
        if rem[i] > 1:
            out[i] *= rem[i] - 1


@numba.njit(cache=True)
def _seg_count(lo, hi, primes, counts):  # pragma: no cover - jit
    for p in primes:
        j = ((lo + p - 1) // p) * p
        while j < hi:
            counts[j - lo] += 1
            j += p


@numba.njit(cache=True)
def _seg_fill(lo, hi, primes, indptr, pcol, ecol, leftover):  # pragma: no cover
    n = hi - lo
    cursor = indptr[:-1].copy()
    for i in range(n):
        leftover[i] = lo + i
    for idx in range(len(primes)):
        p = primes[idx]
        j = ((lo + p - 1) // p) * p
        while j < hi:
            i = j - lo
            e = 0
            while leftover[i] % p == 0:
                leftover[i] //= p
                e += 1
            pcol[cursor[i]] = idx
            ecol[cursor[i]] = e
            cursor[i] += 1
            j += p


def _binom_table(k: int) -> np.ndarray:
    return np.array([math.comb(e + k - 1, k - 1) for e in range(64)], np.int64)


def _primes_for(hi: int) -> np.ndarray:
    return primes_upto(math.isqrt(max(hi - 1, 1)))


def tau_k_segment(lo: int, hi: int, k: int = 2, primes=None) -> np.ndarray:
    """tau_k(n) for n in [lo, hi), exact int64."""
    if primes is None:
        primes = _primes_for(hi)
    out = np.empty(hi - lo, np.int64)
    _seg_tau_k(lo, hi, primes, _binom_table(k), out)
    return out


def lambda_segment(lo: int, hi: int, primes=None) -> np.ndarray:
    """Lambda(n) for n in [lo, hi), float64 (log taken once per prime)."""
    if primes is None:
        primes = _primes_for(hi)
    out = np.empty(hi - lo, np.float64)
    _seg_lambda(lo, hi, primes, np.log(primes.astype(np.float64)), out)
    return out


def mu_segment(lo: int, hi: int, primes=None) -> np.ndarray:
    if primes is None:
        primes = _primes_for(hi)
    out = np.empty(hi - lo, np.int64)
    _seg_mu(lo, hi, primes, out)
    return out


def phi_segment(lo: int, hi: int, primes=None) -> np.ndarray:
    if primes is None:
        primes = _primes_for(hi)
    out = np.empty(hi - lo, np.int64)
    _seg_phi(lo, hi, primes, out)
    return out


def segments(limit: int, segment_size: int = DEFAULT_SEGMENT):
    """Yield (lo, hi) half-open windows covering [1, limit]."""
    lo = 1
    while lo <= limit:
        hi = min(lo + segment_size, limit + 1)
        yield lo, hi
        lo = hi


@dataclass(frozen=True)
class SieveTable:
    """Factorization data for one segment [lo, hi), CSR layout.

    Entry i describes n = lo + i: the slice pcol/ecol[indptr[i]:indptr[i+1]]
    lists (index into `primes`, exponent) for every prime factor <= the
    trial bound, and leftover[i] is the remaining cofactor (1 or a single
    prime above the bound).
    """

    lo: int
    hi: int
    primes: np.ndarray
    indptr: np.ndarray
    pcol: np.ndarray
    ecol: np.ndarray
    leftover: np.ndarray

    def factorization(self, n: int) -> arith.FactoredInt:
        if not self.lo <= n < self.hi:
            raise IndexError(f"{n} outside segment [{self.lo}, {self.hi})")
        i = n - self.lo
        fac = [
            (int(self.primes[self.pcol[j]]), int(self.ecol[j]))
            for j in range(self.indptr[i], self.indptr[i + 1])
        ]
        left = int(self.leftover[i])
        if left > 1:
            fac.append((left, 1))
        return arith.FactoredInt(n, tuple(sorted(fac)))


def build_segment(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT) -> SieveTable:
    """Sieve the closed range [lo, hi] into a SieveTable."""
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if hi > _MAX_HI:
        raise ValueError(f"hi exceeds supported bound 2**50")
    if hi - lo + 1 > segment_size:
        raise ValueError(
            f"segment length {hi - lo + 1} exceeds limit {segment_size}"
        )
    end = hi + 1
    primes = _primes_for(end)
    counts = np.zeros(end - lo, np.int64)
    _seg_count(lo, end, primes, counts)
    indptr = np.zeros(end - lo + 1, np.int64)
    np.cumsum(counts, out=indptr[1:])
    pcol = np.empty(indptr[-1], np.int32)
    ecol = np.empty(indptr[-1], np.uint8)
    leftover = np.empty(end - lo, np.int64)
    _seg_fill(lo, end, primes, indptr, pcol, ecol, leftover)
    return SieveTable(lo, end, primes, indptr, pcol, ecol, leftover)


def tabulate(table: SieveTable, fn: str, k: int = 2) -> np.ndarray:
    """Pointwise values of fn over the table's range.

    fn is one of "tau_k" (with k), "tau" (= tau_2), "lambda", "mu", "phi";
    values agree with the arith module entry by entry.
    """
    lo, hi = table.lo, table.hi
    if fn in ("tau", "tau_k"):
        kk = 2 if fn == "tau" else k
        return tau_k_segment(lo, hi, kk, table.primes)
    if fn == "lambda":
        return lambda_segment(lo, hi, table.primes)
    if fn == "mu":
        return mu_segment(lo, hi, table.primes)
    if fn == "phi":
        return phi_segment(lo, hi, table.primes)
    raise ValueError(f"unknown function {fn!r}")


def _progression_slice(arr: np.ndarray, lo: int, q: int, a: int):
    """View of arr (indexed by n = lo + i) at n = a (mod q)."""
    start = (a - lo) % q
    return arr[start::q]


def psi(x: int, q: int = 1, a: int = 0, segment_size: int = DEFAULT_SEGMENT) -> float:
    """psi(x; q, a) = sum of Lambda(n) over n <= x, n = a (mod q)."""
    if x < 1:
        return 0.0
    if q < 1 or not 0 <= a < q:
        raise ValueError("need q >= 1 and 0 <= a < q")
    total = 0.0
    primes = _primes_for(x + 1)
    for lo, hi in segments(x, segment_size):
        lam = lambda_segment(lo, hi, primes[primes * primes < hi])
        total += float(_progression_slice(lam, lo, q, a).sum())
    return total


def _prime_power_log_sum(p: int, x: int) -> float:
    """sum of log p over prime powers p^e <= x."""
    count = 0
    pe = p
    while pe <= x:
        count += 1
        pe *= p
    return count * math.log(p)


def psi_coprime(x: int, q: int) -> float:
    """psi_q(x) = sum of Lambda(n) over n <= x with (n, q) = 1.

    Only prime powers p^e with p | q are excluded, so this is
    psi(x) - sum_{p | q} floor(log_p x) log p, evaluated exactly.
    """
    if x < 1:
        return 0.0
    total = psi(x)
    for p, _ in arith.factorize(q).factors:
        total -= _prime_power_log_sum(p, x)
    return total


def psi_chi(x: int, chi, segment_size: int = DEFAULT_SEGMENT) -> complex:
    """psi(x, chi) = sum_{n <= x} Lambda(n) chi(n)."""
    if x < 1:
        return 0j
    q = chi.modulus
    table = chi.value_table()
    total = 0j
    primes = _primes_for(x + 1)
    for lo, hi in segments(x, segment_size):
        lam = lambda_segment(lo, hi, primes[primes * primes < hi])
        residues = (lo + np.arange(hi - lo)) % q
        total += complex(np.sum(lam * table[residues]))
    return total


def divisor_sum_progression(
    x: int, k: int, q: int = 1, a: int = 0, segment_size: int = DEFAULT_SEGMENT
) -> int:
    """Exact sum of tau_k(n) over n <= x, n = a (mod q)."""
    if x < 1:
        return 0
    if k < 1 or q < 1 or not 0 <= a < q:
        raise ValueError("need k >= 1, q >= 1, 0 <= a < q")
    total = 0
    primes = _primes_for(x + 1)
    for lo, hi in segments(x, segment_size):
        tk = tau_k_segment(lo, hi, k, primes[primes * primes < hi])
        total += int(_progression_slice(tk, lo, q, a).sum())
    return total


def short_interval_divisor_ratio(x: int, y: int, q: int, a: int, k: int) -> float:
    """Brun-Titchmarsh-type ratio for divisor sums in short progressions.

    ratio = [sum_{x-y < n <= x, n = a (q)} tau_k(n)]
            / [(y/q) (phi(q)/q * log x)^(k-1)];
    finite by Shiu's theorem for x^(1/2) <= y <= x, q <= y^(3/4).
    """
    lo, hi = x - y + 1, x + 1
    tk = tau_k_segment(lo, hi, k)
    num = float(_progression_slice(tk, lo, q, a % q).sum())
    phi_q = arith.euler_phi(q)
    den = (y / q) * (phi_q / q * math.log(x)) ** (k - 1)
    return num / den
