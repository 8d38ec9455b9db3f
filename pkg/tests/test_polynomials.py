"""Polynomial calculus: bases, translation, derivatives, restriction."""

import itertools
from fractions import Fraction
from math import comb

import pytest

from nilharmonic.errors import ValidationError
from nilharmonic.groups import (
    ball,
    basis_element,
    element,
    heisenberg,
    identity,
    lattice,
    mul,
    standard_generators,
    unitriangular,
)
from nilharmonic.polynomials import (
    Monomial,
    Polynomial,
    dim_pk,
    left_derivative,
    pk_basis,
    restrict_to_sublattice,
    right_derivative,
    translate_left,
    translate_right,
)

H3 = heisenberg(1)
Z1 = lattice(1)
Z2 = lattice(2)
UT4 = unitriangular(4)


def mono(schema, *exps):
    return Polynomial.from_monomial(schema, Monomial(tuple(exps)))


X, Y, Z = (Polynomial.coordinate(H3, i) for i in (1, 2, 3))


# -- basis enumeration ---------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("k", range(7))
def test_lattice_basis_count_is_binomial(d, k):
    assert dim_pk(lattice(d), k) == comb(d + k, d)


def test_heisenberg_degree2_basis():
    basis = pk_basis(H3, 2)
    assert [m.exponents for m in basis] == [
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (2, 0, 0),
        (1, 1, 0),
        (0, 2, 0),
        (0, 0, 1),
    ]
    assert dim_pk(H3, 2) == 7


@pytest.mark.parametrize("k", range(9))
def test_heisenberg_dims_match_two_step_closed_form(k):
    d1, d2 = 2, 1
    expected = sum(
        comb(d2 - 1 + y, d2 - 1) * comb(d1 + k - 2 * y, d1) for y in range(k // 2 + 1)
    )
    assert dim_pk(H3, k) == expected


def test_dim_examples():
    assert dim_pk(lattice(3), 2) == 10
    assert dim_pk(H3, 3) == 13
    assert dim_pk(UT4, 2) == 12


def test_negative_degree_basis_is_empty():
    assert pk_basis(H3, -1) == []
    assert dim_pk(Z2, -3) == 0


def test_basis_is_graded_and_deterministic():
    basis = pk_basis(UT4, 3)
    degs = [m.weighted_degree(UT4) for m in basis]
    assert degs == sorted(degs)
    assert basis == pk_basis(UT4, 3)


# -- evaluation ----------------------------------------------------------------

def test_evaluate_examples():
    assert Z.evaluate(element(H3, (1, 1, 1))) == 1
    p = mono(Z2, 2, 0) - mono(Z2, 0, 2)
    assert p.evaluate(element(Z2, (3, 2))) == 5
    assert Polynomial.zero(H3).evaluate(element(H3, (4, -1, 9))) == 0


def test_evaluate_schema_mismatch():
    with pytest.raises(ValidationError):
        Z.evaluate(element(Z2, (1, 2)))


def test_degree_conventions():
    assert Polynomial.zero(H3).degree is None
    assert Polynomial.constant(H3, 5).degree == 0
    assert Z.degree == 2
    assert (X * X * Z).degree == 4


# -- translation ---------------------------------------------------------------

def test_translate_shift_on_line():
    x = Polynomial.coordinate(Z1, 1)
    shifted = translate_left(x * x, element(Z1, (1,)))
    assert shifted == x * x + 2 * x + Polynomial.constant(Z1, 1)


def test_translate_left_central_coordinate():
    assert translate_left(Z, element(H3, (1, 0, 0))) == Z + Y


def test_translate_right_central_coordinate():
    assert translate_right(Z, element(H3, (0, 1, 0))) == Z + X


def test_translate_by_identity_is_identity_map():
    for p in (X * Y, Z, X * X - Y * Y + Z):
        assert translate_left(p, identity(H3)) == p
        assert translate_right(p, identity(H3)) == p


def test_translate_right_lattice_example():
    x1, x2 = (Polynomial.coordinate(Z2, i) for i in (1, 2))
    assert translate_right(x1 * x2, element(Z2, (1, 0))) == x1 * x2 + x2


def test_translate_of_zero_and_constants():
    u = element(H3, (3, -1, 2))
    assert translate_left(Polynomial.zero(H3), u).is_zero
    assert translate_left(Polynomial.constant(H3, Fraction(7, 3)), u) == Polynomial.constant(
        H3, Fraction(7, 3)
    )


@pytest.mark.parametrize("schema", [Z2, H3, UT4])
def test_interpolation_soundness_on_balls(schema):
    gens = standard_generators(schema)
    b2 = ball(schema, gens, 2)
    b3 = ball(schema, gens, 3)
    for m in pk_basis(schema, 2):
        p = Polynomial.from_monomial(schema, m)
        for u in b2:
            q = translate_left(p, u)
            assert all(q.evaluate(g) == p.evaluate(mul(schema, u, g)) for g in b3)


def test_translate_right_matches_pointwise():
    gens = standard_generators(H3)
    b2 = ball(H3, gens, 2)
    p = X * X * Y + Z * X
    for u in b2:
        q = translate_right(p, u)
        assert all(q.evaluate(g) == p.evaluate(mul(H3, g, u)) for g in b2)


# -- derivatives ---------------------------------------------------------------

def test_derivative_examples():
    assert left_derivative(Z, basis_element(H3, 1)) == Y
    assert left_derivative(Z, basis_element(H3, 3)) == Polynomial.constant(H3, 1)
    assert left_derivative(Polynomial.constant(H3, 9), element(H3, (1, 2, 3))).is_zero


def test_right_derivative_example():
    assert right_derivative(Z, basis_element(H3, 2)) == X


@pytest.mark.parametrize("schema", [Z2, lattice(3), H3, heisenberg(2), unitriangular(3), UT4])
def test_degree_reduction(schema):
    for m in pk_basis(schema, 4):
        p = Polynomial.from_monomial(schema, m)
        d = p.degree
        for i in range(1, schema.n_coords + 1):
            for power in (1, -1):
                dp = left_derivative(p, basis_element(schema, i, power))
                if not dp.is_zero:
                    assert dp.degree <= d - schema.weight(i)


@pytest.mark.parametrize("schema", [Z2, H3])
def test_cocycle_identity(schema):
    b1 = ball(schema, standard_generators(schema), 1)
    fs = [Polynomial.from_monomial(schema, m) for m in pk_basis(schema, 2)]
    for f in fs:
        for x, y in itertools.product(b1, repeat=2):
            lhs = left_derivative(f, mul(schema, x, y))
            rhs = translate_left(left_derivative(f, x), y) + left_derivative(f, y)
            assert lhs == rhs


@pytest.mark.parametrize("schema", [Z2, H3])
def test_product_rule(schema):
    b1 = ball(schema, standard_generators(schema), 1)
    coords = [Polynomial.coordinate(schema, i) for i in range(1, schema.n_coords + 1)]
    for f, h in itertools.product(coords, repeat=2):
        for x in b1:
            lhs = left_derivative(f * h, x)
            rhs = translate_left(f, x) * left_derivative(h, x) + left_derivative(f, x) * h
            assert lhs == rhs


def test_multilinearity_of_top_derivative():
    # f of degree exactly 2: (u1, u2) -> (d_u1 d_u2 f)(1) is additive per slot
    f = X * Y
    e = identity(H3)
    b1 = ball(H3, standard_generators(H3), 1)

    def phi(u1, u2):
        return left_derivative(left_derivative(f, u2), u1).evaluate(e)

    for u, v, y in itertools.product(b1, repeat=3):
        assert phi(mul(H3, u, v), y) == phi(u, y) + phi(v, y)
        assert phi(y, mul(H3, u, v)) == phi(y, u) + phi(y, v)


def test_central_translation_fixes_low_degree():
    # degree <= 1 functions are blind to the commutator subgroup
    f = X + 2 * Y + Polynomial.constant(H3, 3)
    for m in (1, -3):
        assert translate_left(f, basis_element(H3, 3, m)) == f
    assert translate_left(Z, basis_element(H3, 3, 1)) != Z


def test_left_right_equivalence_on_monomials():
    # degree-w monomials: (w+1)-fold right derivatives vanish, some w-fold does not
    b1 = ball(H3, standard_generators(H3), 1)
    for m in pk_basis(H3, 2):
        p = Polynomial.from_monomial(H3, m)
        w = p.degree
        for tup in itertools.islice(itertools.product(b1, repeat=w + 1), 60):
            q = p
            for u in tup:
                q = right_derivative(q, u)
            assert q.is_zero
        if w >= 1:
            found = False
            for tup in itertools.product(b1, repeat=w):
                q = p
                for u in tup:
                    q = left_derivative(q, u)
                if not q.is_zero:
                    found = True
                    break
            assert found


# -- products ------------------------------------------------------------------

def test_product_examples():
    assert (X * Y).degree == 2
    assert (Z * X).degree == 3
    assert (Z * Polynomial.zero(H3)).is_zero
    assert X * Y == Y * X


def test_product_degree_additivity():
    ps = [X + Y, Z - X * X, Polynomial.constant(H3, 2) + X]
    for p, q in itertools.product(ps, repeat=2):
        assert (p * q).degree == p.degree + q.degree


# -- sublattice restriction ------------------------------------------------------

def test_restrict_examples():
    x1 = Polynomial.coordinate(Z2, 1)
    assert restrict_to_sublattice(x1 * x1, [[2, 0], [0, 1]]) == 4 * x1 * x1
    p = x1 * x1 - 3 * Polynomial.coordinate(Z2, 2)
    assert restrict_to_sublattice(p, [[1, 0], [0, 1]]) == p


def test_restrict_pointwise_agreement():
    m = [[1, 1], [0, 2]]
    p = mono(Z2, 2, 1) - 2 * mono(Z2, 0, 1)
    q = restrict_to_sublattice(p, m)
    for u1 in range(-2, 3):
        for u2 in range(-2, 3):
            image = element(Z2, (m[0][0] * u1 + m[0][1] * u2, m[1][0] * u1 + m[1][1] * u2))
            assert q.evaluate(element(Z2, (u1, u2))) == p.evaluate(image)


def test_restrict_rejects_singular_and_non_lattice():
    with pytest.raises(ValidationError):
        restrict_to_sublattice(mono(Z2, 1, 0), [[1, 1], [1, 1]])
    with pytest.raises(ValidationError):
        restrict_to_sublattice(Z, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


# -- term bookkeeping ------------------------------------------------------------

def test_no_zero_coefficients_stored():
    p = X - X
    assert p.terms == {} and p.is_zero
    q = X + Y - X
    assert list(q.terms) == [Monomial((0, 1, 0))]


def test_schema_mismatch_in_arithmetic():
    with pytest.raises(ValidationError):
        X + Polynomial.coordinate(Z2, 1)


def test_rendering():
    p = X * X - Y * Y
    assert str(p) == "x^2 - y^2"
    assert str(Fraction(3, 2) * X * Y + Z - Polynomial.constant(H3, 1)) == "3/2*x*y + z - 1"
    assert str(Polynomial.zero(H3)) == "0"
