import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossbeurling.errors import NoInverse, NotAssociative, NotMultiplicative, NotSubmultiplicative, ValidationError
from crossbeurling.groups import (
    cyclic_group,
    dihedral_group,
    group_from_name,
    make_group,
    opposite_group,
    symmetric_group,
    trivial_weight,
    validate_character,
    validate_weight,
    weight_unit_bound,
)


def brute_force_group_axioms(mult):
    """Oracle: check all axioms by direct triple loops."""
    n = len(mult)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                    return False
    identities = [e for e in range(n) if all(mult[e][x] == x and mult[x][e] == x for x in range(n))]
    if len(identities) != 1:
        return False
    e = identities[0]
    return all(any(mult[x][y] == e and mult[y][x] == e for y in range(n)) for x in range(n))


def test_trivial_group():
    g = make_group([[0]])
    assert g.order == 1 and g.identity == 0 and g.inv(0) == 0


def test_z2_table():
    g = make_group([[0, 1], [1, 0]])
    assert g.identity == 0
    assert g.inv(1) == 1


def test_s3_brute_force_axioms():
    g = symmetric_group(3)
    assert brute_force_group_axioms(g.mult.tolist())
    assert not g.is_abelian()
    # a transposition is its own inverse; lexicographic index 1 is (0,2,1)
    assert g.inv(1) == 1


def test_rejects_non_groups():
    with pytest.raises(NotAssociative):
        # left-zero semigroup of order 2 with a twist breaking associativity
        make_group([[0, 1], [0, 0]])
    with pytest.raises(NoInverse):
        make_group([[0, 1], [1, 1]])
    with pytest.raises(ValidationError):
        make_group([[0, 2], [2, 0]])


def test_opposite_group_involution():
    g = symmetric_group(3)
    op = opposite_group(g)
    assert np.array_equal(opposite_group(op).mult, g.mult)
    for s in g.elements():
        for t in g.elements():
            assert op.mul(s, t) == g.mul(t, s)
    assert op.identity == g.identity
    assert np.array_equal(op.inverse, g.inverse)


def test_abelian_self_opposite():
    g = cyclic_group(5)
    assert opposite_group(g).same_table(g)


def test_dihedral_and_names():
    d4 = dihedral_group(4)
    assert d4.order == 8 and brute_force_group_axioms(d4.mult.tolist())
    assert group_from_name("Z_3").order == 3
    assert group_from_name("S3").order == 6
    assert group_from_name("D_5").order == 10
    with pytest.raises(ValidationError):
        group_from_name("Q_8")


def test_weight_validation():
    z2 = cyclic_group(2)
    w = validate_weight(z2, [1.0, 2.0])   # w(g^2) = 1 <= 4
    assert w[1] == 2.0
    with pytest.raises(NotSubmultiplicative):
        validate_weight(z2, [1.0, 0.5])    # w(e) = 1 > 0.25 = w(g)^2
    with pytest.raises(ValidationError):
        validate_weight(z2, [1.0, -1.0])
    assert weight_unit_bound(z2, w) == 1.0


def test_weight_identity_value_forced():
    # w(e) >= 1 is implied by submultiplicativity; the validator enforces it
    z2 = cyclic_group(2)
    with pytest.raises(NotSubmultiplicative):
        validate_weight(z2, [0.5, 10.0])


def test_character_validation():
    z4 = cyclic_group(4)
    chi = validate_character(z4, [1, 1j, -1, -1j])
    assert chi[1] == 1j
    with pytest.raises(NotMultiplicative):
        validate_character(z4, [1, 2, -1, -1j])
    with pytest.raises(ValidationError):
        validate_character(z4, [1, 0, 1, 0])


def test_modular_function_is_one():
    g = symmetric_group(3)
    assert np.all(g.modular == 1.0)
    # counting measure is left and right invariant: sums over translates agree
    values = np.arange(1.0, 7.0)
    for r in g.elements():
        left = sum(values[g.mul(r, s)] for s in g.elements())
        right = sum(values[g.mul(s, r)] for s in g.elements())
        assert left == right == values.sum()


@settings(max_examples=20, deadline=None)
@given(n=st.integers(min_value=1, max_value=8))
def test_cyclic_groups_validate(n):
    g = cyclic_group(n)
    assert g.order == n
    assert brute_force_group_axioms(g.mult.tolist())


@settings(max_examples=20, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=5),
    base=st.floats(min_value=1.0, max_value=4.0),
)
def test_power_weights_are_submultiplicative(n, base):
    """w(g^k) = base^min(k, n-k) is a weight on Z_n (word-length power weight)."""
    g = cyclic_group(n)
    values = [base ** min(k, n - k) for k in range(n)]
    w = validate_weight(g, values)
    assert w[g.identity] == 1.0


def test_trivial_weight_and_character(f5):
    assert np.all(trivial_weight(f5.group).values == 1.0)
    assert f5.character is not None and f5.character[1] == 1j
