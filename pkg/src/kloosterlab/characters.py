"""Dirichlet characters mod q as exponent vectors over (Z/qZ)*.

The unit group is decomposed into cyclic components (odd prime powers are
cyclic; 2^e for e >= 3 splits as <-1> x <3>), and a character is the tuple
of its exponents against the component generators.  Character values are
carried as exact rational multiples of a full turn (`Fraction` angles) and
converted to complex only at the boundary, so identity checks downstream
can compare sums term by term with no floating error.

Conductors are computed structurally per prime component; an exhaustive
brute-force oracle lives in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from . import arith

_DLOG_TABLE_LIMIT = 10**6


def _primitive_root_mod_pk(p: int, e: int) -> int:
    """Smallest generator of (Z/p^e)* for odd prime p."""
    fac = [q for q, _ in arith.factorize(p - 1).factors]
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            break
        g += 1
    if e == 1:
        return g
    # g lifts to p^e unless g^(p-1) = 1 mod p^2
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass(frozen=True)
class _Component:
    """One cyclic factor of (Z/qZ)*, attached to the prime power pk."""

    p: int
    pk: int
    generator: int
    order: int
    # dlog map residue -> exponent; sign table only for the 2-power pair
    dlog: np.ndarray = field(repr=False, compare=False)


def _dlog_table(pk: int, g: int, order: int) -> np.ndarray:
    table = np.full(pk, -1, dtype=np.int64)
    x = 1
    for j in range(order):
        table[x] = j
        x = x * g % pk
    return table


def _two_power_tables(e: int) -> tuple[np.ndarray, np.ndarray]:
    """dlog of +-3^k mod 2^e: returns (sign, k) per odd residue."""
    pk = 1 << e
    sgn = np.full(pk, -1, dtype=np.int8)
    kk = np.full(pk, -1, dtype=np.int64)
    x = 1
    for k in range(1 << (e - 2)):
        sgn[x], kk[x] = 0, k
        sgn[pk - x], kk[pk - x] = 1, k
        x = x * 3 % pk
    return sgn, kk


class UnitGroup:
    """Cyclic decomposition of (Z/qZ)* with discrete-log tables."""

    def __init__(self, q: int):
        if q < 1:
            raise ValueError("modulus must be >= 1")
        if q > _DLOG_TABLE_LIMIT:
            raise ValueError(f"dlog tables limited to moduli <= {_DLOG_TABLE_LIMIT}")
        self.q = q
        self.components: list[_Component] = []
        fac = arith.factorize(q).factors
        for p, e in fac:
            pk = p**e
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    self.components.append(
                        _Component(2, 4, 3, 2, _dlog_table(4, 3, 2))
                    )
                else:
                    sgn, kk = _two_power_tables(e)
                    self.components.append(
                        _Component(2, pk, pk - 1, 2, sgn.astype(np.int64))
                    )
                    self.components.append(_Component(2, pk, 3, 1 << (e - 2), kk))
            else:
                g = _primitive_root_mod_pk(p, e)
                order = pk // p * (p - 1)
                self.components.append(_Component(p, pk, g, order, _dlog_table(pk, g, order)))
        self.orders = tuple(c.order for c in self.components)
        self.phi = math.prod(self.orders)

    def exponents(self, n: int) -> tuple[int, ...] | None:
        """Exponent vector of n, or None when gcd(n, q) > 1."""
        if math.gcd(n, self.q) != 1:
            return None
        out = []
        for c in self.components:
            v = int(c.dlog[n % c.pk])
            if v < 0:
                return None
            out.append(v)
        return tuple(out)

    def exponent_matrix(self) -> np.ndarray:
        """Exponent vectors for residues 0..q-1; -1 rows mark non-units."""
        q = self.q
        mat = np.full((max(q, 1), max(len(self.components), 1)), -1, dtype=np.int64)
        res = np.arange(q, dtype=np.int64)
        unit = np.gcd(res, q) == 1 if q > 1 else np.ones(1, dtype=bool)
        for j, c in enumerate(self.components):
            mat[unit, j] = c.dlog[res[unit] % c.pk]
        return mat


@lru_cache(maxsize=4096)
def unit_group(q: int) -> UnitGroup:
    return UnitGroup(q)


@dataclass(frozen=True)
class DirichletCharacter:
    """chi mod q, stored as exponents against the unit-group generators."""

    q: int
    exps: tuple[int, ...]

    def __post_init__(self):
        grp = unit_group(self.q)
        if len(self.exps) != len(grp.components):
            raise ValueError("exponent vector has wrong length")
        for a, m in zip(self.exps, grp.orders):
            if not 0 <= a < m:
                raise ValueError("exponents must be reduced mod component orders")

    @property
    def modulus(self) -> int:
        return self.q

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.q)

    def angle(self, n: int) -> Fraction | None:
        """chi(n) as an exact fraction of a full turn; None when chi(n)=0."""
        if self.q == 1:
            return Fraction(0)
        ks = self.group.exponents(n % self.q)
        if ks is None:
            return None
        total = Fraction(0)
        for a, k, m in zip(self.exps, ks, self.group.orders):
            total += Fraction(a * k, m)
        return total % 1

    def __call__(self, n: int) -> complex:
        ang = self.angle(n)
        if ang is None:
            return 0j
        return cmath.exp(2j * math.pi * float(ang))

    def value_table(self) -> np.ndarray:
        """chi(n) for n = 0..q-1 as complex128 (exact-angle based)."""
        q = self.q
        if q == 1:
            return np.ones(1, dtype=np.complex128)
        mat = self.group.exponent_matrix()
        angles = np.zeros(q, dtype=np.float64)
        for j, (a, m) in enumerate(zip(self.exps, self.group.orders)):
            angles += (a / m) * mat[:, j]
        out = np.exp(2j * np.pi * angles)
        unit = np.gcd(np.arange(q), q) == 1
        out[~unit] = 0
        return out

    @property
    def is_principal(self) -> bool:
        return all(a == 0 for a in self.exps)

    @property
    def order(self) -> int:
        out = 1
        for a, m in zip(self.exps, self.group.orders):
            out = math.lcm(out, m // math.gcd(a, m))
        return out

    @property
    def kappa(self) -> int:
        """Parity bit: chi(-1) = (-1)^kappa."""
        if self.q <= 2:
            return 0
        return 0 if self.angle(self.q - 1) == 0 else 1

    def conjugate(self) -> "DirichletCharacter":
        exps = tuple(
            (-a) % m for a, m in zip(self.exps, self.group.orders)
        )
        return DirichletCharacter(self.q, exps)


def all_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, ordered by exponent vector."""
    grp = unit_group(q)
    return [
        DirichletCharacter(q, exps)
        for exps in product(*(range(m) for m in grp.orders))
    ]


def principal_character(q: int) -> DirichletCharacter:
    grp = unit_group(q)
    return DirichletCharacter(q, tuple(0 for _ in grp.orders))


def _conductor_part_odd(p: int, e: int, a: int, order: int) -> int:
    if a == 0:
        return 1
    t = order // math.gcd(a, order)
    alpha = 0
    while t % p == 0:
        t //= p
        alpha += 1
    return p ** (alpha + 1)


def _conductor_part_two(e: int, a_sign: int, a3: int) -> int:
    if a_sign == 0 and a3 == 0:
        return 1
    if e == 2:
        return 4
    # j = 2: factors through (Z/4)*; kernel gens are (s,k)=(1,1) and (0,2)
    half = 1 << (e - 3)
    if a3 % half == 0 and (a_sign * half + a3) % (half * 2) == 0:
        return 4
    for j in range(3, e + 1):
        if a3 % (1 << (e - j)) == 0:
            return 1 << j
    raise AssertionError("unreachable: j = e always valid")


def conductor(chi: DirichletCharacter) -> int:
    """Least f | q such that chi factors through (Z/fZ)*."""
    grp = chi.group
    cond = 1
    i = 0
    comps = grp.components
    while i < len(comps):
        c = comps[i]
        if c.p == 2 and c.pk >= 8:
            cond *= _conductor_part_two(
                c.pk.bit_length() - 1, chi.exps[i], chi.exps[i + 1]
            )
            i += 2
        elif c.p == 2:
            cond *= _conductor_part_two(2, 0, chi.exps[i])
            i += 1
        else:
            e = 0
            pk = c.pk
            while pk > 1:
                pk //= c.p
                e += 1
            cond *= _conductor_part_odd(c.p, e, chi.exps[i], c.order)
            i += 1
    return cond


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.q


def _character_from_values(q: int, value_angle) -> DirichletCharacter:
    """Build the character mod q whose angle at each group generator is given."""
    grp = unit_group(q)
    exps = []
    for c in grp.components:
        # CRT lift: = generator mod its prime power, = 1 elsewhere, so its
        # exponent vector is the corresponding basis vector
        rest = q // c.pk
        lift = arith.crt(c.generator % c.pk, c.pk, 1 % rest, rest)
        ang = value_angle(lift)
        a = ang * c.order
        if a.denominator != 1:
            raise ValueError("values do not define a character mod q")
        exps.append(int(a) % c.order)
    return DirichletCharacter(q, tuple(exps))


def induce(chi: DirichletCharacter, q: int) -> DirichletCharacter:
    """The character mod q induced by chi (requires modulus(chi) | q)."""
    if q % chi.q != 0:
        raise ValueError(f"{chi.q} does not divide {q}")
    return _character_from_values(q, lambda g: chi.angle(g))


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character inducing chi."""
    f = conductor(chi)
    q = chi.q

    def angle_at(g: int) -> Fraction:
        # lift g to a residue mod q coprime to q, congruent to g mod f
        x = g
        while math.gcd(x, q) != 1:
            x += f
        return chi.angle(x)

    return _character_from_values(f, angle_at)


def chars_with_conductor_at_most(q: int, r: int) -> list[DirichletCharacter]:
    """The family X_q(R): characters mod q of conductor <= R."""
    if r < 1:
        raise ValueError("R >= 1 required")
    return [chi for chi in all_characters(q) if conductor(chi) <= r]


def factor_character(
    chi: DirichletCharacter, q1: int, q2: int
) -> tuple[DirichletCharacter, DirichletCharacter]:
    """Split chi mod q1*q2 = q into chi1 mod q1 times chi2 mod q2 via CRT.

    Requires q = q1*q2 with (q1, q2) = 1; chi1(a) = chi(x) for the CRT lift
    x = a (mod q1), x = 1 (mod q2), and symmetrically for chi2.
    """
    if q1 * q2 != chi.q or math.gcd(q1, q2) != 1:
        raise ValueError("need q = q1*q2 with (q1, q2) = 1")
    chi1 = _character_from_values(
        q1, lambda g: chi.angle(arith.crt(g, q1, 1, q2))
    )
    chi2 = _character_from_values(
        q2, lambda g: chi.angle(arith.crt(1, q1, g, q2))
    )
    return chi1, chi2


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{a mod q} chi(a) e(a/q)."""
    q = chi.q
    table = chi.value_table()
    return complex(np.sum(table * np.exp(2j * np.pi * np.arange(q) / q))) if q > 1 else 1 + 0j


def incomplete_char_sum(chi: DirichletCharacter, m: int, n: int) -> complex:
    """sum of chi over the window m < t <= m + n."""
    if n < 0:
        raise ValueError("window length must be >= 0")
    if n == 0:
        return 0j
    q = chi.q
    table = chi.value_table()
    csum = np.concatenate([[0j], np.cumsum(table)])  # csum[j] = sum_{t < j}
    period = csum[q]

    def prefix(x: int) -> complex:  # sum over 1 <= t <= x
        if x <= 0:
            return 0j
        full, rest = divmod(x, q)
        return full * period + csum[rest + 1] - csum[1]

    return complex(prefix(m + n) - prefix(m))


def incomplete_sum_bound_ratio(chi: DirichletCharacter, m: int, n: int) -> float:
    """Polya-Vinogradov-type ratio |sum| / (tau(q/r) sqrt(r) log r).

    Defined for characters of conductor r != 1; the max of this ratio over
    a grid is pinned by a committed calibration constant.
    """
    r = conductor(chi)
    if r == 1:
        raise ValueError("ratio defined for non-principal conductors only")
    s = abs(incomplete_char_sum(chi, m, n))
    return s / (arith.tau_k(chi.q // r, 2) * math.sqrt(r) * max(math.log(r), math.log(2)))
