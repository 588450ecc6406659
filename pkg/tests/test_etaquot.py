import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from tcore_congruences.etaquot import (
    EtaQuotient,
    build_B,
    build_B_density,
    build_D,
    certify_holomorphic,
    character,
    character_factorwise,
    check_conditions_24,
    cusp_order,
    divisors,
    expand,
    factorize,
    kronecker,
    minimal_level,
    weight,
)
from tcore_congruences.qseries import dilate, euler_function
from tcore_congruences.tcore import tcore_series


# -- Kronecker symbol ------------------------------------------------------

def kronecker_by_definition(a, n):
    """Multiply out over the factorisation of n, using Euler's criterion at odd primes."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    value = 1
    if n < 0:
        n = -n
        value = -1 if a < 0 else 1
    for q, e in sympy.factorint(n).items():
        if q == 2:
            sym = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        else:
            r = pow(a % q, (q - 1) // 2, q)
            sym = 0 if r == 0 else (1 if r == 1 else -1)
        value *= sym**e
    return value


def test_kronecker_examples():
    assert kronecker(2, 7) == 1
    assert all(kronecker(a, 1) == 1 for a in range(-10, 11))
    assert kronecker(5, 3) == -1 and kronecker(3, 5) == -1
    assert kronecker(5, 3) * kronecker(3, 5) == kronecker(3, 5) * kronecker(5, 3)


def test_kronecker_edge_conventions():
    assert kronecker(1, 0) == 1 and kronecker(-1, 0) == 1 and kronecker(2, 0) == 0
    assert kronecker(-3, -1) == -1 and kronecker(3, -1) == 1
    assert [kronecker(a, 2) for a in (1, 3, 5, 7, 2)] == [1, -1, -1, 1, 0]


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_kronecker_against_definition(a, n):
    assert kronecker(a, n) == kronecker_by_definition(a, n)


@given(st.integers(-300, 300), st.integers(1, 199).map(lambda x: 2 * x + 1))
def test_kronecker_is_jacobi_for_odd_n(a, n):
    assert kronecker(a, n) == sympy.jacobi_symbol(a, n)


# -- parsing ---------------------------------------------------------------

def test_parse_grammar():
    e = EtaQuotient.parse("N=192;24:4,48:-2")
    assert e.level == 192 and e.exponents == {24: 4, 48: -2}
    assert EtaQuotient.parse("  N = 192 ; 24 : 4 , 48 : -2 ") == e
    assert EtaQuotient.parse(e.to_spec()) == e


@pytest.mark.parametrize("bad", ["N=192;24:4,24:1", "192;24:4", "N=10;3:1", "N=12;4:x"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        EtaQuotient.parse(bad)


# -- weight, conditions, levels --------------------------------------------

def test_weight_examples():
    B011, _ = build_B(0, 1, 1)
    assert weight(B011) == 1
    assert weight(EtaQuotient(1, {1: 1})) == Fraction(1, 2)
    assert weight(build_B(1, 5, 2)[0]) == 9


def test_conditions_examples():
    assert check_conditions_24(build_B(0, 1, 1)[0]) == (True, True)
    assert check_conditions_24(EtaQuotient(1, {1: 1})) == (False, False)
    D, _ = build_D(1, 1, 1)
    assert D.level == 2**3 * 3**3
    assert check_conditions_24(D) == (True, True)


def brute_minimal_multiplier(e, base):
    M = 1
    while not all(check_conditions_24(e.with_level(base * M))):
        M += 1
    return M


SWEEP_B = [(a, m, j) for a in range(3) for m in (1, 5, 7, 11) for j in (1, 2)]
SWEEP_T = [5, 7, 25, 35]


@pytest.mark.parametrize("alpha,m,j", SWEEP_B)
def test_minimal_level_B_and_D(alpha, m, j):
    B, _ = build_B(alpha, m, j)
    base = 16 * 3 ** (alpha + 1) * m
    M = minimal_level(B.with_level(base)) // base
    assert M == brute_minimal_multiplier(B, base)
    # the closed form 3 * 2^j * M = 0 (mod 24): M = 4 at j = 1, M = 2 at j = 2
    assert M == 24 // math.gcd(24, 3 * 2**j)
    assert B.level == base * 4 and all(check_conditions_24(B))

    D, _ = build_D(alpha, m, j)
    base_d = 8 * 3 ** (alpha + 2) * m
    assert minimal_level(D.with_level(base_d)) == base_d
    assert D.level == base_d


@pytest.mark.parametrize("t", SWEEP_T)
def test_minimal_level_B_density(t):
    for p in factorize(t):
        e, _ = build_B_density(t, p, 1)
        base = 24 * t
        M = minimal_level(e.with_level(base)) // base
        assert M == brute_minimal_multiplier(e, base) == 1
        # the builder's level 2^6 3^2 t = base * 24 is admissible as well
        assert e.level == base * 24 and all(check_conditions_24(e))


def test_minimal_level_rejects_unfixable_exponents():
    with pytest.raises(ValueError):
        minimal_level(EtaQuotient(2, {1: 1, 2: -1}))


# -- cusp orders -----------------------------------------------------------

def test_cusp_order_examples():
    B, _ = build_B(0, 1, 1)
    assert cusp_order(B, 1) > 0
    assert cusp_order(B, 16) == 0
    assert cusp_order(EtaQuotient(1, {1: 24}), 1) == 1
    with pytest.raises(ValueError):
        cusp_order(B, 5)


def case_L_for_B(alpha, m, j, d):
    """Holomorphy quantity from the case analysis of the B family."""
    G1 = Fraction(math.gcd(d, 8 * 3 ** (alpha + 1) * m) ** 2, math.gcd(d, 16 * 3 ** (alpha + 1) * m) ** 2)
    G2 = Fraction(math.gcd(d, 24) ** 2, math.gcd(d, 16 * 3 ** (alpha + 1) * m) ** 2)
    t = 3**alpha * m
    return 2 * (t + 2 ** (j + 1)) * G1 - 2 * t * G2 - 2**j


def case_L_for_D(alpha, m, j, d):
    G1 = Fraction(math.gcd(d, 8 * 3 ** (alpha + 1) * m) ** 2, math.gcd(d, 8 * 3 ** (alpha + 2) * m) ** 2)
    G2 = Fraction(math.gcd(d, 24) ** 2, math.gcd(d, 8 * 3 ** (alpha + 2) * m) ** 2)
    return (3 ** (alpha + 1) * m + 3 ** (j + 2)) * G1 - 3 ** (alpha + 1) * m * G2 - 3**j


def sign(x):
    return (x > 0) - (x < 0)


@pytest.mark.parametrize("alpha,m,j", SWEEP_B)
def test_cusp_orders_agree_in_sign_with_case_analysis(alpha, m, j):
    B, _ = build_B(alpha, m, j)
    orders = certify_holomorphic(B).cusp_orders
    for d, v in orders.items():
        assert sign(v) == sign(case_L_for_B(alpha, m, j, d))
    # Case 2 (2^4 | d) reaches the boundary value exactly
    assert any(v == 0 for d, v in orders.items() if d % 16 == 0)

    D, _ = build_D(alpha, m, j)
    for d, v in certify_holomorphic(D).cusp_orders.items():
        assert sign(v) == sign(case_L_for_D(alpha, m, j, d))


# -- certification ---------------------------------------------------------

@pytest.mark.parametrize("alpha,m,j", SWEEP_B)
def test_B_and_D_families_certify(alpha, m, j):
    B, shift = build_B(alpha, m, j)
    rep = certify_holomorphic(B)
    assert rep.holomorphic
    assert rep.weight == Fraction(3**alpha * m - 1, 2) + 2 ** (j - 1)
    assert shift == 9**alpha * m * m - 1 == B.prefactor

    D, shift = build_D(alpha, m, j)
    rep = certify_holomorphic(D)
    assert rep.holomorphic
    assert rep.weight == Fraction(3**alpha * m - 1, 2) + 3**j
    assert shift == D.prefactor


@pytest.mark.parametrize("t", SWEEP_T)
@pytest.mark.parametrize("j", [1, 2])
def test_B_density_family_certifies(t, j):
    for p, a in factorize(t).items():
        e, shift = build_B_density(t, p, j)
        rep = certify_holomorphic(e)
        assert rep.holomorphic
        assert rep.weight == Fraction(t + p**j * (p**a - 1) - 1, 2)
        assert e.level == 2**6 * 3**2 * t
        assert shift == t * t - 1 == e.prefactor


def test_build_examples():
    B, shift = build_B(0, 1, 1)
    assert (B.exponents, B.level, shift) == ({24: 4, 48: -2}, 192, 0)
    B, shift = build_B(1, 1, 1)
    assert (B.exponents, shift) == ({72: 7, 24: -1, 144: -2}, 8)
    assert weight(build_B(0, 5, 1)[0]) == 3
    D, _ = build_D(0, 1, 1)
    assert weight(D) == 3 and D.level == 72
    assert certify_holomorphic(build_D(0, 5, 1)[0]).holomorphic
    e, _ = build_B_density(5, 5, 1)
    # 24*5^1 = 24t, so the exponents t and -p^j cancel there
    assert e.exponents == {24: 24} and e.level == 2880
    assert weight(e) == 12


def test_build_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_B(0, 3, 1)
    with pytest.raises(ValueError):
        build_D(0, 2, 1)
    with pytest.raises(ValueError):
        build_B_density(15, 5, 1)
    with pytest.raises(ValueError):
        build_B_density(35, 11, 1)


def test_non_holomorphic_example():
    rep = certify_holomorphic(EtaQuotient(2, {1: 1, 2: -1}))
    assert not rep.holomorphic
    assert min(rep.cusp_orders.values()) < 0


def test_half_integral_weight_is_flagged():
    rep = certify_holomorphic(EtaQuotient(1, {1: 1}))
    assert rep.weight == Fraction(1, 2)
    assert not rep.integral_weight and not rep.holomorphic


# -- character -------------------------------------------------------------

def test_character_examples():
    B, _ = build_B(0, 1, 1)
    assert character(B, 1) == 1
    assert character(B, 5) == character_factorwise(B, 5)
    with pytest.raises(ValueError):
        character(EtaQuotient(1, {1: 1}), 5)
    with pytest.raises(ValueError):
        character(B, 3)


def _coprime_samples(N, limit=400):
    return [d for d in range(1, limit) if math.gcd(d, N) == 1]


@pytest.mark.parametrize("builder,args", [
    (build_B, (0, 1, 1)), (build_B, (1, 5, 2)), (build_D, (1, 1, 1)),
    (build_D, (0, 7, 1)), (build_B_density, (35, 7, 1)),
])
def test_character_is_quadratic_and_multiplicative(builder, args):
    e, _ = builder(*args)
    ds = _coprime_samples(e.level, 120)
    for d in ds:
        chi = character(e, d)
        assert chi == character_factorwise(e, d)
        assert chi * chi == 1
    for d1 in ds[:15]:
        for d2 in ds[:15]:
            assert character(e, d1 * d2) == character(e, d1) * character(e, d2)


# -- expansions ------------------------------------------------------------

def test_expand_singleton():
    e = EtaQuotient(24, {24: 1})
    got = expand(e, 1, 100)
    want = dilate(euler_function(5), 24, 99).shift(1, 100)
    assert got == want


def test_expand_shift_must_match_prefactor():
    e, shift = build_B(0, 1, 1)
    with pytest.raises(ValueError):
        expand(e, shift + 1, 50)
    with pytest.raises(ValueError):
        expand(EtaQuotient(1, {1: 1}), 0, 10)


def test_expand_B111_mod4_gives_a3():
    e, shift = build_B(1, 1, 1)
    s = expand(e, shift, 200, 4)
    a3 = tcore_series(3, 9, 4)
    assert all(s.coeff(24 * n + 8) == a3.coeff(n) for n in range(8))
    assert all(s.coeff(k) == 0 for k in range(200) if k % 24 != 8)


def test_expand_D111_mod9_gives_a3():
    e, shift = build_D(1, 1, 1)
    s = expand(e, shift, 200, 9)
    a3 = tcore_series(3, 9, 9)
    assert all(s.coeff(24 * n + 8) == a3.coeff(n) for n in range(8))


def test_divisors():
    assert divisors(30) == [1, 2, 3, 5, 6, 10, 15, 30]
    assert divisors(1) == [1]


def closed_form_B(alpha, m, j):
    k = (3**alpha * m - 1) // 2 + 2 ** (j - 1)
    return ((-1) ** k * 2 ** (3 ** (alpha + 1) * m + 2 ** (j + 1) - 3)
            * 3 ** ((alpha + 1) * (3**alpha * m + 2**j) - 1) * m ** (3**alpha * m + 2**j))


def closed_form_D(alpha, m, j):
    k = (3**alpha * m - 1) // 2 + 3**j
    return ((-1) ** k * 2 ** (3 ** (alpha + 1) * m + 2 * 3 ** (j + 1) - 3)
            * 3 ** ((alpha + 1) * 3**alpha * m + (2 * alpha + 1) * 3**j - 1)
            * m ** (3**alpha * m + 2 * 3**j))


@pytest.mark.parametrize("alpha,m,j", SWEEP_B)
def test_character_matches_closed_forms(alpha, m, j):
    for builder, closed in [(build_B, closed_form_B), (build_D, closed_form_D)]:
        e, _ = builder(alpha, m, j)
        num = closed(alpha, m, j)
        for d in _coprime_samples(e.level, 300):
            assert character(e, d) == kronecker(num, d)


@pytest.mark.parametrize("t", SWEEP_T)
def test_density_character_matches_closed_form(t):
    for p, a in factorize(t).items():
        e, _ = build_B_density(t, p, 1)
        k = int(weight(e))
        # the negative exponent -p^j has the same parity as p^j
        num = (-1) ** k * (24 * t) ** t * 24 ** (p ** (a + 1) - 1) * (24 * p**a) ** p
        for d in _coprime_samples(e.level, 300):
            assert character(e, d) == kronecker(num, d)
