import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from kloosterlab import arith
from kloosterlab.characters import (
    DirichletCharacter,
    all_characters,
    chars_with_conductor_at_most,
    conductor,
    factor_character,
    gauss_sum,
    incomplete_char_sum,
    induce,
    is_primitive,
    primitive_part,
    principal_character,
    unit_group,
)


def brute_conductor(chi):
    """Smallest f | q with chi constant on unit classes mod f."""
    q = chi.q
    for f in arith.divisors(q):
        ok = True
        for a in range(1, q + 1):
            if math.gcd(a, q) != 1:
                continue
            b = a + f
            while math.gcd(b, q) != 1:
                b += f
            if chi.angle(a) != chi.angle(b % q if q > 1 else 1):
                ok = False
                break
        if ok:
            return f
    raise AssertionError("no conductor found")


def test_unit_group_structure():
    assert unit_group(1).phi == 1
    g12 = unit_group(12)
    assert sorted(g12.orders) == [2, 2] and g12.phi == 4
    assert sorted(unit_group(8).orders) == [2, 2]
    assert unit_group(5).orders == (4,)


@pytest.mark.parametrize("q", list(range(1, 101)) + [256, 343, 500])
def test_unit_group_bijection(q):
    grp = unit_group(q)
    seen = set()
    for n in range(q if q > 1 else 1, 0, -1):
        pass
    units = [n for n in range(max(q, 1)) if math.gcd(n, q) == 1] or [0]
    for n in units:
        v = grp.exponents(n if q > 1 else 1)
        assert v is not None
        seen.add(v)
    assert len(seen) == grp.phi


def test_all_characters_counts_and_orders():
    assert len(all_characters(1)) == 1
    chars5 = all_characters(5)
    assert sorted(c.order for c in chars5) == [1, 2, 4, 4]
    assert len(all_characters(12)) == 4


def test_eval_basics():
    chi0 = principal_character(7)
    for n in range(1, 7):
        assert chi0(n) == pytest.approx(1)
    chi6 = [c for c in all_characters(6) if not c.is_principal][0]
    assert chi6(5) == pytest.approx(-1)
    assert chi6(4) == 0
    for q in (5, 12, 36):
        for chi in all_characters(q):
            for n in range(q):
                v = chi(n)
                assert abs(v) == pytest.approx(1, abs=1e-12) or v == 0


def test_multiplicativity_of_values():
    for q in (9, 16, 24, 35):
        for chi in all_characters(q):
            for a in range(1, q):
                for b in range(1, q):
                    if math.gcd(a * b, q) == 1:
                        assert chi(a * b) == pytest.approx(
                            chi(a) * chi(b), abs=1e-10
                        )


def test_conductor_examples():
    assert conductor(principal_character(12)) == 1
    chi6 = [c for c in all_characters(6) if not c.is_principal][0]
    assert conductor(chi6) == 3
    for p in (3, 5, 7, 11):
        quad = [c for c in all_characters(p) if c.order == 2][0]
        assert conductor(quad) == p


@pytest.mark.parametrize("q", range(1, 101))
def test_conductor_matches_bruteforce(q):
    for chi in all_characters(q):
        assert conductor(chi) == brute_conductor(chi)


def test_conductor_matches_bruteforce_larger():
    for q in (104, 120, 128, 144, 168, 180, 189, 200):
        for chi in all_characters(q):
            assert conductor(chi) == brute_conductor(chi)


def test_primitive_count_mod_12():
    prim = [c for c in all_characters(12) if is_primitive(c)]
    # inclusion-exclusion: sum_{d | 12} mu(d) phi(12/d)
    expected = sum(
        arith.moebius(d) * arith.euler_phi(12 // d) for d in arith.divisors(12)
    )
    assert len(prim) == expected == 1


def test_induce_roundtrip():
    for chi in all_characters(5):
        lifted = induce(chi, 15)
        assert primitive_part(lifted).q == conductor(chi)
        if is_primitive(chi):
            assert primitive_part(lifted) == chi
        for n in range(15):
            if math.gcd(n, 15) == 1:
                assert lifted(n) == pytest.approx(chi(n), abs=1e-12)
    assert primitive_part(principal_character(12)) == principal_character(1)
    with pytest.raises(ValueError):
        induce(all_characters(5)[1], 12)


def test_chars_with_conductor_at_most():
    assert len(chars_with_conductor_at_most(12, 12)) == 4
    assert len(chars_with_conductor_at_most(12, 3)) == 2
    assert chars_with_conductor_at_most(12, 1) == [principal_character(12)]


def test_orthogonality():
    for q in (2, 3, 4, 12, 36, 90):
        chars = all_characters(q)
        for n in range(q):
            s = sum(chi(n) for chi in chars)
            expected = arith.euler_phi(q) if (n % q == 1 % q and math.gcd(n, q) == 1) else 0
            assert s == pytest.approx(expected, abs=1e-9)


def test_parity():
    for q in (3, 4, 5, 7, 8, 12, 15):
        for chi in all_characters(q):
            assert chi(q - 1) == pytest.approx((-1) ** chi.kappa, abs=1e-12)


def test_gauss_sum():
    assert gauss_sum(principal_character(1)) == pytest.approx(1)
    for q in (3, 4, 5, 7, 8, 9, 11, 12, 13, 16, 25):
        for chi in all_characters(q):
            if is_primitive(chi):
                assert abs(gauss_sum(chi)) == pytest.approx(
                    math.sqrt(q), abs=1e-9
                )
    # imprimitive example: modulus 6, conductor 3
    chi6 = [c for c in all_characters(6) if not c.is_principal][0]
    assert abs(gauss_sum(chi6)) != pytest.approx(math.sqrt(6), abs=0.3)


def test_incomplete_sums():
    for q in (5, 12, 21):
        for chi in all_characters(q):
            if chi.is_principal:
                continue
            assert incomplete_char_sum(chi, 3, 7 * q) == pytest.approx(0, abs=1e-9)
    chi12 = [
        c for c in all_characters(12) if conductor(c) == 3
    ][0]
    direct = sum(chi12(n) for n in range(1, 8))
    assert incomplete_char_sum(chi12, 0, 7) == pytest.approx(direct, abs=1e-12)
    assert incomplete_char_sum(chi12, 5, 0) == 0


def test_factor_character():
    for chi in all_characters(45):
        chi1, chi2 = factor_character(chi, 9, 5)
        for n in range(45):
            if math.gcd(n, 45) == 1:
                assert chi(n) == pytest.approx(
                    chi1(n % 9) * chi2(n % 5), abs=1e-10
                )
