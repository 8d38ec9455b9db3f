"""Coordinate models of finitely generated torsion-free nilpotent groups.

Three closed-form families are supported:

* ``lattice(d)``       -- the free abelian group Z^d,
* ``heisenberg(n)``    -- the discrete Heisenberg group H_{2n+1}(Z) with
  coordinates (x_1..x_n, y_1..y_n, z) read off the unipotent matrix model,
* ``unitriangular(n)`` -- upper unitriangular n x n integer matrices with
  the strict upper-triangular entries as coordinates.

An element is an integer coordinate vector; every integer vector names
exactly one element.  Each coordinate carries a weight (its depth in the
lower central series), and coordinates are ordered by weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ValidationError

LATTICE = "lattice"
HEISENBERG = "heisenberg"
UNITRIANGULAR = "unitriangular"


@dataclass(frozen=True)
class GroupSchema:
    """Static description of one group: family, coordinate count, weights.

    ``weights[i]`` is the weight of coordinate ``i`` (0-based internally;
    the public operations below use 1-based coordinate indices, matching
    the coordinate names).  ``layer_ranks[j]`` is the number of coordinates
    of weight ``j + 1``.  For ``unitriangular`` schemas, ``positions[i]``
    is the matrix entry (row, col) holding coordinate ``i``.
    """

    family: str
    size: int
    n_coords: int
    weights: tuple[int, ...]
    layer_ranks: tuple[int, ...]
    step: int
    coord_names: tuple[str, ...]
    positions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n_coords < 1:
            raise ValidationError("schema needs at least one coordinate")
        if len(self.weights) != self.n_coords or len(self.coord_names) != self.n_coords:
            raise ValidationError("weights/names length must equal n_coords")
        if self.weights[0] != 1:
            raise ValidationError("the first coordinate must have weight 1")
        if any(w2 < w1 for w1, w2 in zip(self.weights, self.weights[1:])):
            raise ValidationError("weights must be non-decreasing")
        if any(w < 1 or w > self.step for w in self.weights):
            raise ValidationError("weights must lie in 1..step")
        if sum(self.layer_ranks) != self.n_coords:
            raise ValidationError("layer ranks must sum to the coordinate count")
        for j, rank in enumerate(self.layer_ranks, start=1):
            if sum(1 for w in self.weights if w == j) != rank:
                raise ValidationError(f"layer rank mismatch at weight {j}")

    def weight(self, i: int) -> int:
        """Weight of coordinate ``i`` (1-based)."""
        return self.weights[i - 1]

    @property
    def rank(self) -> int:
        return sum(self.layer_ranks)

    def name(self) -> str:
        return f"{self.family}({self.size})"

    def __str__(self) -> str:
        return self.name()


@dataclass(frozen=True, order=True)
class GroupElement:
    """A group element, identified by its integer coordinate vector."""

    coords: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def lattice(d: int) -> GroupSchema:
    """The free abelian group Z^d with coordinates x1..xd."""
    if d < 1:
        raise ValidationError("lattice dimension must be >= 1")
    return GroupSchema(
        family=LATTICE,
        size=d,
        n_coords=d,
        weights=(1,) * d,
        layer_ranks=(d,),
        step=1,
        coord_names=tuple(f"x{i}" for i in range(1, d + 1)),
    )


def heisenberg(n: int) -> GroupSchema:
    """The discrete Heisenberg group H_{2n+1}(Z).

    Coordinates are (x_1..x_n, y_1..y_n, z) with product
    (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x.y').
    For n = 1 the names are simply x, y, z.
    """
    if n < 1:
        raise ValidationError("heisenberg parameter must be >= 1")
    if n == 1:
        names: tuple[str, ...] = ("x", "y", "z")
    else:
        names = tuple(
            [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)] + ["z"]
        )
    return GroupSchema(
        family=HEISENBERG,
        size=n,
        n_coords=2 * n + 1,
        weights=(1,) * (2 * n) + (2,),
        layer_ranks=(2 * n, 1),
        step=2,
        coord_names=names,
    )


def unitriangular(n: int) -> GroupSchema:
    """Upper unitriangular n x n integer matrices.

    Coordinate t holds entry (i, j); entries are ordered by weight j - i,
    then row-major.  n is capped at 9 so entry names a_ij stay unambiguous.
    """
    if not 2 <= n <= 9:
        raise ValidationError("unitriangular size must be in 2..9")
    positions = [(i, i + w) for w in range(1, n) for i in range(1, n - w + 1)]
    return GroupSchema(
        family=UNITRIANGULAR,
        size=n,
        n_coords=len(positions),
        weights=tuple(j - i for i, j in positions),
        layer_ranks=tuple(n - w for w in range(1, n)),
        step=n - 1,
        coord_names=tuple(f"a_{i}{j}" for i, j in positions),
        positions=tuple(positions),
    )


@lru_cache(maxsize=None)
def _ut_index(positions: tuple[tuple[int, int], ...]) -> dict[tuple[int, int], int]:
    return {pos: t for t, pos in enumerate(positions)}


# -- coordinate arithmetic on raw tuples (hot paths) -------------------------

def mul_coords(schema: GroupSchema, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if schema.family == LATTICE:
        return tuple(u + v for u, v in zip(a, b))
    if schema.family == HEISENBERG:
        n = schema.size
        z = a[2 * n] + b[2 * n] + sum(a[i] * b[n + i] for i in range(n))
        return tuple(u + v for u, v in zip(a[: 2 * n], b[: 2 * n])) + (z,)
    idx = _ut_index(schema.positions)
    out = []
    for i, j in schema.positions:
        v = a[idx[(i, j)]] + b[idx[(i, j)]]
        for k in range(i + 1, j):
            v += a[idx[(i, k)]] * b[idx[(k, j)]]
        out.append(v)
    return tuple(out)


def inv_coords(schema: GroupSchema, a: tuple[int, ...]) -> tuple[int, ...]:
    if schema.family == LATTICE:
        return tuple(-u for u in a)
    if schema.family == HEISENBERG:
        n = schema.size
        z = -a[2 * n] + sum(a[i] * a[n + i] for i in range(n))
        return tuple(-u for u in a[: 2 * n]) + (z,)
    # solve A * X = I entry by entry, in order of increasing weight
    idx = _ut_index(schema.positions)
    out: dict[tuple[int, int], int] = {}
    for i, j in schema.positions:
        v = -a[idx[(i, j)]]
        for k in range(i + 1, j):
            v -= a[idx[(i, k)]] * out[(k, j)]
        out[(i, j)] = v
    return tuple(out[pos] for pos in schema.positions)


def _require_conforming(schema: GroupSchema, g: GroupElement) -> None:
    if len(g.coords) != schema.n_coords:
        raise ValidationError(
            f"element has {len(g.coords)} coordinates, schema {schema.name()} "
            f"expects {schema.n_coords}"
        )


# -- public element operations ------------------------------------------------

def identity(schema: GroupSchema) -> GroupElement:
    return GroupElement((0,) * schema.n_coords)


def element(schema: GroupSchema, coords: Iterable[int]) -> GroupElement:
    g = GroupElement(tuple(int(c) for c in coords))
    _require_conforming(schema, g)
    return g


def basis_element(schema: GroupSchema, i: int, power: int = 1) -> GroupElement:
    """The element e_i^power: ``power`` in slot ``i`` (1-based), zeros elsewhere."""
    if not 1 <= i <= schema.n_coords:
        raise ValidationError(f"coordinate index {i} out of range 1..{schema.n_coords}")
    coords = [0] * schema.n_coords
    coords[i - 1] = int(power)
    return GroupElement(tuple(coords))


def mul(schema: GroupSchema, g: GroupElement, h: GroupElement) -> GroupElement:
    _require_conforming(schema, g)
    _require_conforming(schema, h)
    return GroupElement(mul_coords(schema, g.coords, h.coords))


def inv(schema: GroupSchema, g: GroupElement) -> GroupElement:
    _require_conforming(schema, g)
    return GroupElement(inv_coords(schema, g.coords))


def standard_generators(schema: GroupSchema) -> list[GroupElement]:
    """The symmetric set {e_i^{+-1}} over the weight-1 coordinates."""
    gens = []
    for i in range(1, schema.n_coords + 1):
        if schema.weight(i) == 1:
            gens.append(basis_element(schema, i, 1))
            gens.append(basis_element(schema, i, -1))
    return gens


def decomposition_order(schema: GroupSchema) -> tuple[int, ...]:
    """Coordinate order (1-based) in which basis powers rebuild an element.

    Multiplying e_{o_1}^{g_{o_1}} ... e_{o_n}^{g_{o_n}} in this order
    reproduces the element with coordinates g, which is what makes the
    coordinate vector a faithful normal form for each family.
    """
    if schema.family == LATTICE:
        return tuple(range(1, schema.n_coords + 1))
    if schema.family == HEISENBERG:
        n = schema.size
        return tuple(range(n + 1, 2 * n + 1)) + tuple(range(1, n + 1)) + (2 * n + 1,)
    # unitriangular: by source row descending, then column ascending
    order = sorted(
        range(schema.n_coords),
        key=lambda t: (-schema.positions[t][0], schema.positions[t][1]),
    )
    return tuple(t + 1 for t in order)


def _check_symmetric(schema: GroupSchema, support: Sequence[GroupElement]) -> list[tuple[int, ...]]:
    coords = []
    seen = set()
    for g in support:
        _require_conforming(schema, g)
        if g.coords not in seen:
            seen.add(g.coords)
            coords.append(g.coords)
    for c in coords:
        if inv_coords(schema, c) not in seen:
            raise ValidationError(f"support is not symmetric: missing inverse of {c}")
    return coords


def ball_levels(
    schema: GroupSchema, support: Sequence[GroupElement], radius: int
) -> list[list[tuple[int, ...]]]:
    """BFS spheres: ``levels[r]`` holds the coordinates at word distance r.

    Each level is sorted lexicographically.  The support must be symmetric.
    """
    if radius < 0:
        raise ValidationError("radius must be non-negative")
    gens = _check_symmetric(schema, support)
    origin = (0,) * schema.n_coords
    seen = {origin}
    levels = [[origin]]
    frontier = [origin]
    for _ in range(radius):
        nxt = set()
        for g in frontier:
            for s in gens:
                h = mul_coords(schema, g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.add(h)
        frontier = sorted(nxt)
        levels.append(frontier)
    return levels


def ball(schema: GroupSchema, support: Sequence[GroupElement], radius: int) -> list[GroupElement]:
    """All products of at most ``radius`` support elements, sorted by coordinates."""
    levels = ball_levels(schema, support, radius)
    all_coords = sorted(c for level in levels for c in level)
    return [GroupElement(c) for c in all_coords]


@dataclass(frozen=True)
class CoordinateOrderReport:
    """Result of the leading-coordinate check for a product g*u.

    ``first_nonzero`` is the first index j (1-based) where u is non-zero,
    or None when u is the identity (vacuous pass).  ``prefix_ok[t]`` records
    whether coordinate t+1 of g*u equals that of g, for t+1 < j, and
    ``additive_ok`` whether coordinate j of g*u equals g_j + u_j.
    """

    first_nonzero: int | None
    prefix_ok: tuple[bool, ...]
    additive_ok: bool | None
    passed: bool


def check_coordinate_order(
    schema: GroupSchema, g: GroupElement, u: GroupElement
) -> CoordinateOrderReport:
    _require_conforming(schema, g)
    _require_conforming(schema, u)
    j = next((t + 1 for t, c in enumerate(u.coords) if c != 0), None)
    if j is None:
        return CoordinateOrderReport(None, (), None, True)
    prod = mul_coords(schema, g.coords, u.coords)
    prefix = tuple(prod[t] == g.coords[t] for t in range(j - 1))
    additive = prod[j - 1] == g.coords[j - 1] + u.coords[j - 1]
    return CoordinateOrderReport(j, prefix, additive, all(prefix) and additive)


def reaches_all_generators(
    schema: GroupSchema, support: Sequence[GroupElement], radius: int
) -> tuple[bool, GroupElement | None]:
    """Whether every e_i^{+-1} lies in the radius-``radius`` ball of ``support``.

    Uses a meet-in-the-middle search through the half-radius ball, so the
    full ball is never materialised.  Returns (ok, first unreachable target).
    """
    half = (radius + 1) // 2
    levels = ball_levels(schema, support, half)
    reach = {c for level in levels for c in level}
    # distance of each reached point, to respect the exact radius bound
    dist = {}
    for r, level in enumerate(levels):
        for c in level:
            dist[c] = r
    for i in range(1, schema.n_coords + 1):
        for sign in (1, -1):
            target = basis_element(schema, i, sign)
            if target.coords in dist and dist[target.coords] <= radius:
                continue
            found = False
            for a in reach:
                rest = mul_coords(schema, inv_coords(schema, a), target.coords)
                if rest in dist and dist[a] + dist[rest] <= radius:
                    found = True
                    break
            if not found:
                return False, target
    return True, None
