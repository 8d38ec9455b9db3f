"""Coordinate polynomials with exact rational coefficients.

A polynomial is a finite rational combination of coordinate monomials;
the degree of a monomial weights each exponent by the weight of its
coordinate.  The space of polynomials of degree at most k has the
monomials of weighted degree <= k as a basis, listed here in graded
order (degree first, ties by descending exponent lexicographic order).

Translations x -> p(u x) and x -> p(x u) are computed by evaluating the
translated function on a small integer grid and recovering coefficients
with tensor Newton forward differences.  One mechanism serves every group
family, and exact rational arithmetic makes it lossless.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .errors import InterpolationError, ValidationError
from .groups import (
    HEISENBERG,
    LATTICE,
    GroupElement,
    GroupSchema,
    mul_coords,
)
from .linalg import RationalMatrix


@dataclass(frozen=True, order=True)
class Monomial:
    """A product of coordinate powers, stored as its exponent vector."""

    exponents: tuple[int, ...]

    def weighted_degree(self, schema: GroupSchema) -> int:
        return sum(w * e for w, e in zip(schema.weights, self.exponents))


def monomial_sort_key(schema: GroupSchema, m: Monomial) -> tuple:
    """Graded order: weighted degree, then exponent-lexicographic descending."""
    return (m.weighted_degree(schema), tuple(-e for e in m.exponents))


@lru_cache(maxsize=None)
def _pk_basis_cached(schema: GroupSchema, k: int) -> tuple[Monomial, ...]:
    if k < 0:
        return ()
    n = schema.n_coords
    weights = schema.weights
    out: list[tuple[int, ...]] = []
    exps = [0] * n

    def rec(i: int, budget: int) -> None:
        if i == n:
            out.append(tuple(exps))
            return
        w = weights[i]
        for e in range(budget // w + 1):
            exps[i] = e
            rec(i + 1, budget - e * w)
        exps[i] = 0

    rec(0, k)
    monos = [Monomial(t) for t in out]
    monos.sort(key=lambda m: monomial_sort_key(schema, m))
    return tuple(monos)


def pk_basis(schema: GroupSchema, k: int) -> list[Monomial]:
    """All monomials of weighted degree <= k, in graded order; empty for k < 0."""
    return list(_pk_basis_cached(schema, k))


def dim_pk(schema: GroupSchema, k: int) -> int:
    """Dimension of the space of polynomials of degree <= k."""
    return len(_pk_basis_cached(schema, k))


class Polynomial:
    """Sparse exact-rational combination of coordinate monomials."""

    __slots__ = ("schema", "terms")

    def __init__(
        self,
        schema: GroupSchema,
        terms: Mapping[Monomial, Fraction | int] | None = None,
    ):
        self.schema = schema
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono.exponents) != schema.n_coords:
                    raise ValidationError("monomial does not match schema coordinate count")
                if any(e < 0 for e in mono.exponents):
                    raise ValidationError("monomial exponents must be non-negative")
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c:
                    clean[mono] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, schema: GroupSchema) -> "Polynomial":
        return cls(schema)

    @classmethod
    def constant(cls, schema: GroupSchema, value: Fraction | int) -> "Polynomial":
        return cls(schema, {Monomial((0,) * schema.n_coords): value})

    @classmethod
    def coordinate(cls, schema: GroupSchema, i: int) -> "Polynomial":
        """The coordinate function x_i (1-based index)."""
        if not 1 <= i <= schema.n_coords:
            raise ValidationError(f"coordinate index {i} out of range 1..{schema.n_coords}")
        exps = [0] * schema.n_coords
        exps[i - 1] = 1
        return cls(schema, {Monomial(tuple(exps)): 1})

    @classmethod
    def from_monomial(
        cls, schema: GroupSchema, mono: Monomial, coeff: Fraction | int = 1
    ) -> "Polynomial":
        return cls(schema, {mono: coeff})

    # -- basic queries --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(m.weighted_degree(self.schema) for m in self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def evaluate(self, g: GroupElement) -> Fraction:
        if len(g.coords) != self.schema.n_coords:
            raise ValidationError("element does not match the polynomial's schema")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            v = 1
            for c, e in zip(g.coords, mono.exponents):
                if e:
                    v *= c**e
            total += coeff * v
        return total

    def coefficient_vector(self, basis: Sequence[Monomial]) -> list[Fraction]:
        """Coefficients in the given monomial basis; all terms must be covered."""
        index = {m: i for i, m in enumerate(basis)}
        vec = [Fraction(0)] * len(basis)
        for mono, coeff in self.terms.items():
            if mono not in index:
                raise ValidationError(f"monomial {mono.exponents} not in the given basis")
            vec[index[mono]] = coeff
        return vec

    # -- arithmetic -----------------------------------------------------------

    def _require_same_schema(self, other: "Polynomial") -> None:
        if self.schema != other.schema:
            raise ValidationError("polynomials belong to different schemas")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_schema(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono, Fraction(0)) + coeff
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)
        return Polynomial(self.schema, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.schema, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.schema, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_schema(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = Monomial(tuple(a + b for a, b in zip(m1.exponents, m2.exponents)))
                acc = terms.get(mono, Fraction(0)) + c1 * c2
                if acc:
                    terms[mono] = acc
                else:
                    terms.pop(mono, None)
        return Polynomial(self.schema, terms)

    def __rmul__(self, other: "Fraction | int") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.schema == other.schema
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # leading terms first; ties follow the graded basis order
        ordered = sorted(
            self.terms.items(),
            key=lambda mc: (
                -mc[0].weighted_degree(self.schema),
                tuple(-e for e in mc[0].exponents),
            ),
        )
        pieces: list[str] = []
        for mono, coeff in ordered:
            factors = []
            for name, e in zip(self.schema.coord_names, mono.exponents):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self.schema.name()}: {self})"


def product(p: Polynomial, q: Polynomial) -> Polynomial:
    """Pointwise product; degrees add for non-zero factors."""
    return p * q


# -- translation by interpolation ---------------------------------------------

@lru_cache(maxsize=None)
def _dependencies(schema: GroupSchema, side: str) -> tuple[tuple[int, ...], ...]:
    """For each coordinate t of u*x (side left) or x*u (side right), the
    0-based x-coordinates it can involve.  The product laws are affine in x,
    so these sets bound both the variables and the per-variable degrees of a
    translated polynomial."""
    n = schema.n_coords
    if schema.family == LATTICE:
        return tuple((t,) for t in range(n))
    if schema.family == HEISENBERG:
        m = schema.size
        deps = [(t,) for t in range(2 * m)]
        if side == "left":
            deps.append(tuple(range(m, 2 * m)) + (2 * m,))
        else:
            deps.append(tuple(range(m)) + (2 * m,))
        return tuple(deps)
    index = {pos: t for t, pos in enumerate(schema.positions)}
    deps = []
    for i, j in schema.positions:
        if side == "left":
            vars_ = [index[(k, j)] for k in range(i + 1, j)]
        else:
            vars_ = [index[(i, k)] for k in range(i + 1, j)]
        vars_.append(index[(i, j)])
        deps.append(tuple(sorted(vars_)))
    return tuple(deps)


@lru_cache(maxsize=None)
def _falling_factorial_coeffs(t: int) -> tuple[int, ...]:
    """Coefficients of x(x-1)...(x-t+1) by power of x."""
    coeffs = [1]
    for s in range(t):
        nxt = [0] * (len(coeffs) + 1)
        for pw, c in enumerate(coeffs):
            nxt[pw + 1] += c
            nxt[pw] -= c * s
        coeffs = nxt
    return tuple(coeffs)


def _forward_differences(values: list, shape: Sequence[int]) -> None:
    """In-place mixed forward differences on a row-major tensor grid."""
    n = len(values)
    stride = 1
    for ax in range(len(shape) - 1, -1, -1):
        size = shape[ax]
        if size > 1:
            block = stride * size
            for start in range(0, n, block):
                for off in range(start, start + stride):
                    for t in range(1, size):
                        for j in range(size - 1, t - 1, -1):
                            idx = off + j * stride
                            values[idx] -= values[idx - stride]
        stride *= size


def _translate(p: Polynomial, u: GroupElement, side: str) -> Polynomial:
    schema = p.schema
    if len(u.coords) != schema.n_coords:
        raise ValidationError("translation element does not match the schema")
    k = p.degree
    if k is None or k == 0:
        return Polynomial(schema, p.terms)

    deps = _dependencies(schema, side)
    bounds = [0] * schema.n_coords
    for mono in p.terms:
        acc: dict[int, int] = {}
        for t, e in enumerate(mono.exponents):
            if e:
                for v in deps[t]:
                    acc[v] = acc.get(v, 0) + e
        for v, tot in acc.items():
            if tot > bounds[v]:
                bounds[v] = tot

    grid_vars = [
        v for v in range(schema.n_coords) if bounds[v] and schema.weights[v] <= k
    ]
    degs = [min(bounds[v], k // schema.weights[v]) for v in grid_vars]

    u_coords = u.coords
    term_list = [
        (
            [(t, e) for t, e in enumerate(mono.exponents) if e],
            coeff.numerator if coeff.denominator == 1 else coeff,
        )
        for mono, coeff in p.terms.items()
    ]

    def value_at(point_coords: tuple[int, ...]):
        if side == "left":
            w = mul_coords(schema, u_coords, point_coords)
        else:
            w = mul_coords(schema, point_coords, u_coords)
        total = 0
        for powers, coeff in term_list:
            v = coeff
            for t, e in powers:
                v *= w[t] ** e
            total += v
        return total

    if not grid_vars:
        return Polynomial.constant(schema, Fraction(value_at((0,) * schema.n_coords)))

    point = [0] * schema.n_coords
    values = []
    for combo in itertools.product(*(range(d + 1) for d in degs)):
        for v, a in zip(grid_vars, combo):
            point[v] = a
        values.append(value_at(tuple(point)))
    for v in grid_vars:
        point[v] = 0

    shape = [d + 1 for d in degs]
    _forward_differences(values, shape)

    terms: dict[Monomial, Fraction] = {}
    for flat, combo in enumerate(itertools.product(*(range(d + 1) for d in degs))):
        c = values[flat]
        if not c:
            continue
        wdeg = sum(schema.weights[v] * a for v, a in zip(grid_vars, combo))
        if wdeg > k:
            raise InterpolationError(
                f"translate produced weighted degree {wdeg} > {k}; "
                "the function is not a polynomial of the claimed degree"
            )
        denom = 1
        expansion: dict[tuple[int, ...], Fraction | int] = {(0,) * schema.n_coords: c}
        for v, a in zip(grid_vars, combo):
            if a == 0:
                continue
            denom *= factorial(a)
            fc = _falling_factorial_coeffs(a)
            nxt: dict[tuple[int, ...], Fraction | int] = {}
            for exp, cc in expansion.items():
                for s, st in enumerate(fc):
                    if st:
                        new_exp = list(exp)
                        new_exp[v] = s
                        nxt[tuple(new_exp)] = cc * st
            expansion = nxt
        for exp, cc in expansion.items():
            coeff = Fraction(cc, denom) if isinstance(cc, int) else cc / denom
            mono = Monomial(exp)
            acc = terms.get(mono, Fraction(0)) + coeff
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)

    result = Polynomial(schema, terms)

    # off-grid probe: catches per-variable degrees beyond the grid bounds
    for v, d in zip(grid_vars, degs):
        point[v] = d + 1
    probe = tuple(point)
    if result.evaluate(GroupElement(probe)) != Fraction(value_at(probe)):
        raise InterpolationError(
            "translate failed its off-grid consistency probe; "
            "the function is not a polynomial of the claimed degree"
        )
    return result


def translate_left(p: Polynomial, u: GroupElement) -> Polynomial:
    """The polynomial x -> p(u x)."""
    return _translate(p, u, "left")


def translate_right(p: Polynomial, u: GroupElement) -> Polynomial:
    """The polynomial x -> p(x u)."""
    return _translate(p, u, "right")


def left_derivative(p: Polynomial, u: GroupElement) -> Polynomial:
    """x -> p(u x) - p(x); strictly degree-decreasing on non-constants."""
    return translate_left(p, u) - p


def right_derivative(p: Polynomial, u: GroupElement) -> Polynomial:
    """x -> p(x u) - p(x); strictly degree-decreasing on non-constants."""
    return translate_right(p, u) - p


# -- lattice restriction --------------------------------------------------------

def restrict_to_sublattice(p: Polynomial, matrix: Sequence[Sequence[int]]) -> Polynomial:
    """Rewrite a lattice polynomial in the coordinates of the sublattice M Z^d.

    Returns u -> p(M u).  The matrix must be square, integral and
    non-singular, so that M Z^d has finite index and the induced map on
    degree-<= k polynomials is a linear bijection.
    """
    schema = p.schema
    if schema.family != LATTICE:
        raise ValidationError("sublattice restriction is defined for lattice schemas only")
    d = schema.n_coords
    rows = [list(row) for row in matrix]
    if len(rows) != d or any(len(row) != d for row in rows):
        raise ValidationError(f"matrix must be {d}x{d}")
    if any(int(x) != x for row in rows for x in row):
        raise ValidationError("matrix entries must be integers")
    if RationalMatrix.from_rows(rows, cols=d).rank != d:
        raise ValidationError("matrix is singular; the sublattice has infinite index")

    # x_i = sum_j M[i][j] u_j
    forms = []
    for i in range(d):
        terms: dict[Monomial, Fraction] = {}
        for j in range(d):
            if rows[i][j]:
                exps = [0] * d
                exps[j] = 1
                terms[Monomial(tuple(exps))] = Fraction(rows[i][j])
        forms.append(Polynomial(schema, terms))

    powers: list[list[Polynomial]] = [[Polynomial.constant(schema, 1)] for _ in range(d)]
    result = Polynomial.zero(schema)
    for mono, coeff in p.terms.items():
        part = Polynomial.constant(schema, coeff)
        for i, e in enumerate(mono.exponents):
            while len(powers[i]) <= e:
                powers[i].append(powers[i][-1] * forms[i])
            if e:
                part = part * powers[i][e]
        result = result + part
    return result
