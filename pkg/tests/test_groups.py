"""Group coordinate arithmetic: multiplication laws, balls, normal forms."""

import itertools

import pytest

from nilharmonic.errors import ValidationError
from nilharmonic.groups import (
    GroupElement,
    ball,
    basis_element,
    check_coordinate_order,
    decomposition_order,
    element,
    heisenberg,
    identity,
    inv,
    lattice,
    mul,
    reaches_all_generators,
    standard_generators,
    unitriangular,
)

H3 = heisenberg(1)
Z1 = lattice(1)
Z2 = lattice(2)
UT3 = unitriangular(3)
UT4 = unitriangular(4)

ALL_SCHEMAS = [Z1, Z2, lattice(3), H3, heisenberg(2), UT3, UT4]


def test_schema_fields():
    assert H3.n_coords == 3
    assert H3.weights == (1, 1, 2)
    assert H3.layer_ranks == (2, 1)
    assert H3.step == 2
    assert H3.coord_names == ("x", "y", "z")
    h2 = heisenberg(2)
    assert h2.n_coords == 5
    assert h2.weights == (1, 1, 1, 1, 2)
    assert UT4.n_coords == 6
    assert UT4.weights == (1, 1, 1, 2, 2, 3)
    assert UT4.layer_ranks == (3, 2, 1)
    assert UT4.step == 3
    assert UT4.coord_names == ("a_12", "a_23", "a_34", "a_13", "a_24", "a_14")
    assert lattice(3).rank == 3 and H3.rank == 3 and UT4.rank == 6


@pytest.mark.parametrize("bad", [lambda: lattice(0), lambda: heisenberg(0),
                                 lambda: unitriangular(1), lambda: unitriangular(10)])
def test_invalid_schema_parameters(bad):
    with pytest.raises(ValidationError):
        bad()


def test_heisenberg_product_example():
    g = mul(H3, element(H3, (1, 0, 0)), element(H3, (0, 1, 0)))
    assert g.coords == (1, 1, 1)


def test_lattice_product_example():
    assert mul(Z2, element(Z2, (2, 3)), element(Z2, (-1, 1))).coords == (1, 4)


def test_unitriangular_product_fillin():
    # e_12 * e_23 picks up the (1,3) entry
    g = mul(UT4, basis_element(UT4, 1), basis_element(UT4, 2))
    assert g.coords == (1, 1, 0, 1, 0, 0)


@pytest.mark.parametrize("schema", ALL_SCHEMAS)
def test_identity_is_all_zeros(schema):
    assert identity(schema).coords == (0,) * schema.n_coords


def test_inverse_examples():
    assert inv(Z2, element(Z2, (2, 3))).coords == (-2, -3)
    assert inv(H3, element(H3, (1, 1, 1))).coords == (-1, -1, 0)
    assert inv(H3, identity(H3)) == identity(H3)


@pytest.mark.parametrize("schema", ALL_SCHEMAS)
def test_inverse_law_on_ball(schema):
    e = identity(schema)
    for g in ball(schema, standard_generators(schema), 2):
        assert mul(schema, g, inv(schema, g)) == e
        assert mul(schema, inv(schema, g), g) == e
        assert mul(schema, g, e) == g
        assert mul(schema, e, g) == g


def test_basis_element_examples():
    assert basis_element(H3, 3, 5).coords == (0, 0, 5)
    assert basis_element(Z2, 1, -1).coords == (-1, 0)
    a = mul(H3, basis_element(H3, 2, 4), basis_element(H3, 2, -7))
    assert a == basis_element(H3, 2, -3)


def test_basis_element_out_of_range():
    with pytest.raises(ValidationError):
        basis_element(H3, 4)
    with pytest.raises(ValidationError):
        basis_element(H3, 0)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValidationError):
        mul(H3, element(H3, (0, 0, 0)), GroupElement((1, 2)))
    with pytest.raises(ValidationError):
        inv(Z2, GroupElement((1, 2, 3)))


@pytest.mark.parametrize("schema", [Z2, H3, UT3, UT4])
def test_associativity_on_ball(schema):
    b2 = ball(schema, standard_generators(schema), 2)
    for a, b, c in itertools.product(b2, repeat=3):
        assert mul(schema, mul(schema, a, b), c) == mul(schema, a, mul(schema, b, c))


def test_ball_examples():
    line = ball(Z1, [element(Z1, (1,)), element(Z1, (-1,))], 2)
    assert [g.coords[0] for g in line] == [-2, -1, 0, 1, 2]
    assert ball(H3, standard_generators(H3), 0) == [identity(H3)]
    assert len(ball(H3, standard_generators(H3), 1)) == 5


def test_ball_requires_symmetric_support():
    with pytest.raises(ValidationError):
        ball(Z1, [element(Z1, (1,))], 2)


@pytest.mark.parametrize("schema", [Z2, H3, UT4])
def test_ball_growth_bounds(schema):
    gens = standard_generators(schema)
    sizes = [len(ball(schema, gens, r)) for r in range(5)]
    assert all(a <= b for a, b in zip(sizes, sizes[1:]))
    assert all(sizes[r] <= len(gens) ** r + 1 for r in range(1, 5))


def test_ball_is_sorted_and_deterministic():
    b = ball(H3, standard_generators(H3), 3)
    assert [g.coords for g in b] == sorted(g.coords for g in b)
    assert b == ball(H3, standard_generators(H3), 3)


def test_coordinate_order_example():
    rep = check_coordinate_order(H3, element(H3, (2, 3, 4)), element(H3, (0, 1, 7)))
    assert rep.first_nonzero == 2
    assert rep.prefix_ok == (True,)
    assert rep.additive_ok and rep.passed
    # the product itself: (2, 3+1, 4+7+2*1)
    assert mul(H3, element(H3, (2, 3, 4)), element(H3, (0, 1, 7))).coords == (2, 4, 13)


def test_coordinate_order_identity_vacuous():
    rep = check_coordinate_order(H3, element(H3, (5, -2, 9)), identity(H3))
    assert rep.first_nonzero is None and rep.passed


@pytest.mark.parametrize("schema", ALL_SCHEMAS)
def test_coordinate_order_on_ball(schema):
    b2 = ball(schema, standard_generators(schema), 2)
    for g, u in itertools.product(b2, repeat=2):
        assert check_coordinate_order(schema, g, u).passed
        # same leading-coordinate behaviour for u*g
        j = next((t for t, c in enumerate(u.coords) if c), None)
        if j is not None:
            prod = mul(schema, u, g).coords
            assert prod[:j] == g.coords[:j]
            assert prod[j] == g.coords[j] + u.coords[j]


@pytest.mark.parametrize("schema", ALL_SCHEMAS)
def test_basis_decomposition_on_ball(schema):
    order = decomposition_order(schema)
    assert sorted(order) == list(range(1, schema.n_coords + 1))
    for g in ball(schema, standard_generators(schema), 3):
        acc = identity(schema)
        for i in order:
            acc = mul(schema, acc, basis_element(schema, i, g.coords[i - 1]))
        assert acc == g


def test_heisenberg_decomposition_order_is_y_x_z():
    assert decomposition_order(H3) == (2, 1, 3)


def test_unitriangular5_normal_form_invariants():
    # larger family member: the chart invariants back its validity
    u5 = unitriangular(5)
    assert u5.n_coords == 10
    assert u5.weights == (1, 1, 1, 1, 2, 2, 2, 3, 3, 4)
    gens = standard_generators(u5)
    order = decomposition_order(u5)
    for g in ball(u5, gens, 2):
        acc = identity(u5)
        for i in order:
            acc = mul(u5, acc, basis_element(u5, i, g.coords[i - 1]))
        assert acc == g
        for u in (basis_element(u5, 5, 3), basis_element(u5, 10, -2)):
            assert check_coordinate_order(u5, g, u).passed


def test_generator_reachability():
    gens = standard_generators(UT4)
    ok, missing = reaches_all_generators(UT4, gens, 8)
    assert ok and missing is None
    ok, missing = reaches_all_generators(UT4, gens, 7)
    assert not ok
    assert missing.coords == (0, 0, 0, 0, 0, 1)
    ok, _ = reaches_all_generators(H3, standard_generators(H3), 4)
    assert ok
