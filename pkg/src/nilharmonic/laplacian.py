"""Symmetric probability measures and the associated group Laplacian.

The Laplacian of f at x is f(x) - sum_s mu(s) f(xs).  On polynomials of
degree <= k it lands in degree <= k-2, is surjective onto that space, and
its kernel is the space of degree-<= k harmonic functions; those facts are
what the matrix builders and solvers here rely on, and every one of them
is cross-checked by the verifier oracles and the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import InternalInconsistency, InvariantFailure, ValidationError
from .groups import (
    GroupElement,
    GroupSchema,
    identity,
    inv,
    inv_coords,
    reaches_all_generators,
    standard_generators,
)
from .linalg import Inconsistent, RationalMatrix
from .polynomials import (
    Polynomial,
    dim_pk,
    pk_basis,
    translate_left,
    translate_right,
)

DEFAULT_ADAPTEDNESS_RADIUS = 4


class Measure:
    """Finitely supported symmetric probability measure with rational weights.

    Validated on construction: weights positive, total mass exactly 1,
    weight(g) = weight(g^-1) for every atom, and the support must reach
    every coordinate generator e_i^{+-1} within ``adaptedness_radius``
    word-metric steps (so that it generates the group).
    """

    __slots__ = ("schema", "atoms", "adaptedness_radius")

    def __init__(
        self,
        schema: GroupSchema,
        atoms: Mapping[GroupElement, Fraction | int] | Iterable[tuple[GroupElement, Fraction | int]],
        *,
        adaptedness_radius: int = DEFAULT_ADAPTEDNESS_RADIUS,
    ):
        items = atoms.items() if isinstance(atoms, Mapping) else list(atoms)
        clean: dict[GroupElement, Fraction] = {}
        for g, w in items:
            if len(g.coords) != schema.n_coords:
                raise ValidationError(f"atom {g.coords} does not match schema {schema.name()}")
            w = w if isinstance(w, Fraction) else Fraction(w)
            if w <= 0:
                raise ValidationError(f"atom {g.coords} has non-positive weight {w}")
            if g in clean:
                raise ValidationError(f"duplicate atom {g.coords}")
            clean[g] = w

        for g, w in clean.items():
            gi = GroupElement(inv_coords(schema, g.coords))
            if clean.get(gi) != w:
                raise ValidationError(
                    f"measure is not symmetric: atom {g.coords} has weight {w} "
                    f"but its inverse {gi.coords} has weight {clean.get(gi, 0)}"
                )
        mass = sum(clean.values(), Fraction(0))
        if mass != 1:
            raise ValidationError(f"total mass must be exactly 1, got {mass}")

        support = [g for g in clean if any(g.coords)]
        ok, missing = reaches_all_generators(schema, support, adaptedness_radius)
        if not ok:
            raise ValidationError(
                f"measure is not adapted: generator {missing.coords} is not reached "
                f"within radius {adaptedness_radius}"
            )

        self.schema = schema
        self.atoms = MappingProxyType(
            {g: clean[g] for g in sorted(clean, key=lambda e: e.coords)}
        )
        self.adaptedness_radius = adaptedness_radius

    def support(self) -> list[GroupElement]:
        """Non-identity atoms, sorted by coordinates."""
        return [g for g in self.atoms if any(g.coords)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Measure)
            and self.schema == other.schema
            and self.atoms == other.atoms
        )

    def __repr__(self) -> str:
        return f"Measure({self.schema.name()}, {len(self.atoms)} atoms)"


def uniform_measure(
    schema: GroupSchema,
    elements: Sequence[GroupElement],
    *,
    adaptedness_radius: int = DEFAULT_ADAPTEDNESS_RADIUS,
) -> Measure:
    """Uniform measure on a symmetric set of elements."""
    if not elements:
        raise ValidationError("cannot build a measure on an empty set")
    w = Fraction(1, len(elements))
    return Measure(schema, [(g, w) for g in elements], adaptedness_radius=adaptedness_radius)


def generator_walk(
    schema: GroupSchema, *, adaptedness_radius: int = DEFAULT_ADAPTEDNESS_RADIUS
) -> Measure:
    """Uniform measure on {e_i^{+-1}} over the weight-1 coordinates.

    For lattices this is the simple random walk; for the Heisenberg and
    unitriangular families it is the walk on the elementary generators.
    """
    return uniform_measure(
        schema, standard_generators(schema), adaptedness_radius=adaptedness_radius
    )


def lazy_generator_walk(
    schema: GroupSchema,
    hold: Fraction = Fraction(1, 2),
    *,
    adaptedness_radius: int = DEFAULT_ADAPTEDNESS_RADIUS,
) -> Measure:
    """Generator walk with probability ``hold`` of staying put."""
    if not 0 < hold < 1:
        raise ValidationError("holding probability must be strictly between 0 and 1")
    gens = standard_generators(schema)
    w = (1 - hold) / len(gens)
    atoms = [(identity(schema), hold)] + [(g, w) for g in gens]
    return Measure(schema, atoms, adaptedness_radius=adaptedness_radius)


# -- the Laplacian -------------------------------------------------------------

def apply_laplacian(measure: Measure, p: Polynomial) -> Polynomial:
    """Delta p = p - sum_s mu(s) (x -> p(xs)); drops weighted degree by >= 2."""
    if p.schema != measure.schema:
        raise ValidationError("polynomial and measure belong to different schemas")
    expected = Polynomial.zero(p.schema)
    for s, w in measure.atoms.items():
        expected = expected + translate_right(p, s) * w
    result = p - expected
    k = p.degree
    kr = result.degree
    if k is not None and kr is not None and kr > k - 2:
        raise InternalInconsistency(
            f"Laplacian image has degree {kr}, expected <= {k - 2}"
        )
    return result


def laplacian_matrix(schema: GroupSchema, measure: Measure, k: int) -> RationalMatrix:
    """Matrix of the Laplacian from the degree-k basis to the degree-(k-2) basis.

    Columns follow pk_basis(schema, k), rows pk_basis(schema, k-2), both in
    graded order.  For k <= 1 the codomain is trivial and the matrix has
    zero rows.
    """
    if k < 0:
        raise ValidationError("k must be non-negative")
    if schema != measure.schema:
        raise ValidationError("schema and measure do not match")
    domain = pk_basis(schema, k)
    codomain = pk_basis(schema, k - 2)
    index = {m: i for i, m in enumerate(codomain)}
    data = [[Fraction(0)] * len(domain) for _ in codomain]
    for j, mono in enumerate(domain):
        image = apply_laplacian(measure, Polynomial.from_monomial(schema, mono))
        for m2, c in image.terms.items():
            if m2 not in index:
                raise InternalInconsistency(
                    f"Laplacian image of {mono.exponents} contains out-of-range "
                    f"monomial {m2.exponents}"
                )
            data[index[m2]][j] = c
    return RationalMatrix(len(codomain), len(domain), data)


@dataclass(frozen=True)
class HarmonicBasisReport:
    """Kernel basis of the Laplacian on degree-<= k polynomials."""

    schema: GroupSchema
    measure: Measure
    k: int
    basis: tuple[Polynomial, ...]
    dim: int
    predicted_dim: int


def dim_hk(schema: GroupSchema, k: int) -> int:
    """dim of the degree-<= k harmonic space: dim P^k - dim P^{k-2}."""
    if k < 0:
        raise ValidationError("k must be non-negative")
    return dim_pk(schema, k) - dim_pk(schema, k - 2)


def harmonic_basis(schema: GroupSchema, measure: Measure, k: int) -> HarmonicBasisReport:
    """Basis of harmonic polynomials of degree <= k, in the canonical
    kernel parameterization of the Laplacian matrix."""
    matrix = laplacian_matrix(schema, measure, k)
    domain = pk_basis(schema, k)
    kernel = matrix.kernel_basis()
    basis = tuple(
        Polynomial(schema, {domain[i]: c for i, c in enumerate(vec) if c})
        for vec in kernel
    )
    predicted = dim_hk(schema, k)
    if len(basis) != predicted:
        raise InvariantFailure(
            f"harmonic dimension {len(basis)} != predicted {predicted} "
            f"for {schema.name()}, k={k}"
        )
    return HarmonicBasisReport(schema, measure, k, basis, len(basis), predicted)


def solve_preimage(schema: GroupSchema, measure: Measure, q: Polynomial) -> Polynomial:
    """A polynomial p of degree <= deg q + 2 with Delta p = q, exactly.

    Surjectivity of the Laplacian guarantees a solution; failure to find
    one is reported as an internal inconsistency, not as a normal outcome.
    """
    if q.schema != schema:
        raise ValidationError("polynomial does not match the schema")
    if q.is_zero:
        return Polynomial.zero(schema)
    k = q.degree + 2
    matrix = laplacian_matrix(schema, measure, k)
    rhs = q.coefficient_vector(pk_basis(schema, k - 2))
    sol = matrix.solve(rhs)
    if isinstance(sol, Inconsistent):
        raise InternalInconsistency(
            f"no Laplacian preimage found for degree-{q.degree} input; "
            f"inconsistent at reduced row {sol.row}"
        )
    domain = pk_basis(schema, k)
    p_hat = Polynomial(schema, {domain[i]: c for i, c in enumerate(sol) if c})
    if apply_laplacian(measure, p_hat) != q:
        raise InternalInconsistency("preimage verification failed")
    return p_hat


def action_is_trivial(
    schema: GroupSchema, measure: Measure, k: int, g: GroupElement
) -> bool:
    """Whether left translation by g fixes every degree-<= k harmonic function."""
    report = harmonic_basis(schema, measure, k)
    gi = inv(schema, g)
    return all(translate_left(f, gi) == f for f in report.basis)


@dataclass(frozen=True)
class GrowthRow:
    k: int
    dim: int
    ratio: Fraction | None


def growth_exponent_table(
    schema: GroupSchema, measure: Measure, k_max: int
) -> list[GrowthRow]:
    """Harmonic dimensions for k = 0..k_max with the ratios dim / k^(d-1),
    d the rank of the group.

    Dimensions come from the kernel-dimension identity
    dim H^k = dim P^k - dim P^{k-2}; the identity itself is verified against
    explicit kernels elsewhere, which keeps large k cheap here.
    """
    if k_max < 2:
        raise ValidationError("k_max must be at least 2")
    if schema != measure.schema:
        raise ValidationError("schema and measure do not match")
    d = schema.rank
    rows = []
    for k in range(k_max + 1):
        dim = dim_hk(schema, k)
        ratio = Fraction(dim, k ** (d - 1)) if k >= 1 else None
        rows.append(GrowthRow(k, dim, ratio))
    return rows
