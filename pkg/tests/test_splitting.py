import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from selgrowth.groups import GroupError, make_dihedral, make_elem_abelian
from selgrowth.splitting import (
    AmbiguousSplittingError,
    FieldSpec,
    LocalClass,
    RamifiedPrimeError,
    biquadratic_defining_polynomial,
    factor_degree_pattern,
    frobenius_class,
    multiquadratic_local_class,
    quadratic_symbol,
    third_discriminant,
)

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def brute_force_symbol(d, v):
    """Oracle: exhaustive residue search for odd v."""
    if d % v == 0:
        return "ramified"
    return "split" if any(x * x % v == d % v for x in range(1, v)) else "inert"


# -- quadratic symbols ------------------------------------------------------------


def test_symbol_examples():
    assert quadratic_symbol(3, 13) == "split"  # 4^2 = 3 mod 13
    assert quadratic_symbol(5, 5) == "ramified"
    assert quadratic_symbol(5, 13) == "inert"


def test_symbol_at_two():
    assert quadratic_symbol(-1, 2) == "ramified"  # -1 = 3 mod 4
    assert quadratic_symbol(2, 2) == "ramified"
    assert quadratic_symbol(17, 2) == "split"  # 1 mod 8
    assert quadratic_symbol(5, 2) == "inert"  # 5 mod 8
    assert quadratic_symbol(-7, 2) == "split"  # 1 mod 8


def test_symbol_rejects_bad_d():
    for d in (0, 1, 12, -18):
        with pytest.raises(ValueError):
            quadratic_symbol(d, 5)


@given(st.integers(-60, 60), st.sampled_from(SMALL_PRIMES))
@settings(max_examples=200, deadline=None)
def test_symbol_matches_brute_force(d, v):
    assume(d not in (0, 1))
    try:
        sym = quadratic_symbol(d, v)
    except ValueError:
        assume(False)
    assert sym == brute_force_symbol(d, v)


# -- multiquadratic local classes ---------------------------------------------------


def test_third_discriminant():
    assert third_discriminant(3, 5) == 15
    assert third_discriminant(6, 10) == 15
    assert third_discriminant(-3, 5) == -15


def test_mq_local_class_examples():
    # (3, 5): 13 splits in Q(sqrt 3) only; 5 ramifies except in Q(sqrt 3); 7 splits in Q(sqrt 15)
    lc = multiquadratic_local_class(3, 5, 13)
    assert lc.names() == ("C2a", "1")
    lc = multiquadratic_local_class(3, 5, 5)
    assert lc.names() == ("G", "C2a")
    lc = multiquadratic_local_class(3, 5, 7)
    assert lc.names() == ("C2c", "1")


def test_mq_local_class_at_two():
    # 3 and 15 ramify at 2; 5 is inert at 2, so I fixes Q(sqrt 5) and D = G
    lc = multiquadratic_local_class(3, 5, 2)
    assert lc.names() == ("G", "C2b")
    # -1, 2, -2: all three subfields ramified, total ramification
    lc = multiquadratic_local_class(-1, 2, 2)
    assert lc.names() == ("G", "G")


def test_mq_counting_invariant():
    for v in (2, 3, 5, 7, 11, 13, 97):
        lc = multiquadratic_local_class(3, 5, v)
        assert lc.e * lc.f * lc.num_primes_in_field() == 4


def test_mq_rejects_square_product():
    with pytest.raises(ValueError):
        multiquadratic_local_class(3, 3, 7)
    with pytest.raises(ValueError):
        multiquadratic_local_class(4, 5, 7)


@given(
    st.sampled_from([(3, 5), (2, 3), (-1, 7), (-2, -5)]),
    st.sampled_from(SMALL_PRIMES + [53, 59, 61, 67, 71]),
)
@settings(max_examples=120, deadline=None)
def test_mq_unramified_primes_have_cyclic_frobenius(ds, v):
    d1, d2 = ds
    assume(v != 2 and d1 % v != 0 and d2 % v != 0 and third_discriminant(d1, d2) % v != 0)
    lc = multiquadratic_local_class(d1, d2, v)
    assert lc.e == 1
    G = lc.group
    assert G.is_cyclic_subgroup(lc.decomposition)


# -- degree patterns -----------------------------------------------------------------


def test_pattern_quadratic():
    assert factor_degree_pattern((1, 0, 1), 5) == (1, 1)  # x^2 + 1, 5 = 1 mod 4
    assert factor_degree_pattern((1, 0, 1), 7) == (2,)


def test_pattern_biquadratic_23():
    # x^4 - 10x^2 + 1 defines Q(sqrt 2, sqrt 3); 2, 3, 6 are all squares mod 23
    assert factor_degree_pattern((1, 0, -10, 0, 1), 23) == (1, 1, 1, 1)
    lc = multiquadratic_local_class(2, 3, 23)
    assert len(lc.decomposition) == 1


def test_pattern_rejects_ramified():
    with pytest.raises(RamifiedPrimeError):
        factor_degree_pattern((1, 0, -10, 0, 1), 2)


@given(
    st.lists(st.integers(-9, 9), min_size=2, max_size=8),
    st.sampled_from(SMALL_PRIMES),
)
@settings(max_examples=200, deadline=None)
def test_pattern_matches_sympy_factorization(tail, v):
    """Oracle: sympy's factorization over GF(v) gives the same degree multiset."""
    import sympy

    coeffs = (1, *tail)
    try:
        pattern = factor_degree_pattern(coeffs, v)
    except RamifiedPrimeError:
        assume(False)
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(coeffs), x, modulus=v, symmetric=False)
    _, factors = poly.factor_list()
    expected = sorted(f.degree() for f, mult in factors for _ in range(mult))
    assert list(pattern) == expected


@given(
    st.sampled_from([(2, 3), (3, 5), (2, 5), (5, 7), (-1, 3), (2, -3), (-2, -5)]),
    st.sampled_from([v for v in SMALL_PRIMES if v < 500] + [53, 97, 211, 499]),
)
@settings(max_examples=200, deadline=None)
def test_mq_consistent_with_degree_pattern(ds, v):
    d1, d2 = ds
    poly = biquadratic_defining_polynomial(d1, d2)
    try:
        pattern = factor_degree_pattern(poly, v)
    except RamifiedPrimeError:
        assume(False)
    lc = multiquadratic_local_class(d1, d2, v)
    assume(lc.e == 1)  # pattern logic applies to unramified primes only
    assert set(pattern) == {len(lc.decomposition)}
    assert len(pattern) == 4 // len(lc.decomposition)


# -- frobenius classes ----------------------------------------------------------------


def test_frobenius_dihedral():
    G = make_dihedral(5)
    lc = frobenius_class(G, (5, 5))
    assert len(lc.decomposition) == 5 and len(lc.inertia) == 1
    lc = frobenius_class(make_dihedral(3), (1,) * 6)
    assert len(lc.decomposition) == 1


def test_frobenius_ambiguous_cases():
    K = make_elem_abelian(2)
    with pytest.raises(AmbiguousSplittingError):
        frobenius_class(K, (2, 2))
    with pytest.raises(AmbiguousSplittingError):
        frobenius_class(make_elem_abelian(3), (3, 3, 3))


def test_frobenius_rejects_non_galois_pattern():
    with pytest.raises(ValueError):
        frobenius_class(make_dihedral(3), (1, 2, 3))


# -- field specs -----------------------------------------------------------------------


def test_field_spec_polynomial_validation():
    G = make_elem_abelian(2)
    FieldSpec.polynomial((1, 0, -10, 0, 1), G)
    with pytest.raises(ValueError):
        FieldSpec.polynomial((2, 0, -10, 0, 1), G)  # not monic
    with pytest.raises(ValueError):
        FieldSpec.polynomial((1, 0, 1), G)  # wrong degree
    with pytest.raises(ValueError):
        FieldSpec.polynomial((1, 0, -5, 0, 4), G)  # reducible


def test_local_class_validation():
    G = make_dihedral(3)
    C2 = next(c.representative for c in G.subgroup_classes if c.order == 2)
    with pytest.raises(GroupError):
        LocalClass(G, G.full_subgroup, C2)  # C2 not normal in G
