"""Config files, JSON report payloads and the polynomial text syntax.

Rationals serialize as reduced strings like "3/2" (plain "3" for
integers).  Polynomials serialize as exponent/coefficient pairs in graded
order, so emitted JSON is canonical and byte-reproducible.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import ValidationError
from .groups import GroupElement, GroupSchema, heisenberg, lattice, unitriangular
from .laplacian import Measure
from .polynomials import Monomial, Polynomial, monomial_sort_key

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


def fraction_to_str(x: Fraction) -> str:
    return str(x)


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not _FRACTION_RE.match(text):
        raise ValidationError(f"invalid rational {text!r}; expected 'p' or 'p/q'")
    return Fraction(text)


# -- group configs --------------------------------------------------------------

def schema_to_config(schema: GroupSchema) -> dict[str, Any]:
    if schema.family == "lattice":
        return {"family": "lattice", "d": schema.size}
    return {"family": schema.family, "n": schema.size}


def schema_from_config(cfg: Mapping[str, Any]) -> GroupSchema:
    if not isinstance(cfg, Mapping):
        raise ValidationError("group config must be a JSON object")
    family = cfg.get("family")
    if family == "lattice":
        if "d" not in cfg:
            raise ValidationError("lattice config needs a dimension field 'd'")
        return lattice(int(cfg["d"]))
    if family == "heisenberg":
        if "n" not in cfg:
            raise ValidationError("heisenberg config needs a size field 'n'")
        return heisenberg(int(cfg["n"]))
    if family == "unitriangular":
        if "n" not in cfg:
            raise ValidationError("unitriangular config needs a size field 'n'")
        return unitriangular(int(cfg["n"]))
    raise ValidationError(
        f"unknown family {family!r}; expected lattice, heisenberg or unitriangular"
    )


def element_from_list(schema: GroupSchema, coords: Sequence[int]) -> GroupElement:
    if len(coords) != schema.n_coords:
        raise ValidationError(
            f"element has {len(coords)} coordinates, schema expects {schema.n_coords}"
        )
    return GroupElement(tuple(int(c) for c in coords))


# -- measure configs -------------------------------------------------------------

def measure_to_config(measure: Measure) -> dict[str, Any]:
    return {
        "atoms": [
            {"coords": list(g.coords), "weight": fraction_to_str(w)}
            for g, w in measure.atoms.items()
        ],
        "adaptedness_radius": measure.adaptedness_radius,
    }


def measure_from_config(
    schema: GroupSchema, cfg: Mapping[str, Any], *, adaptedness_radius: int | None = None
) -> Measure:
    if not isinstance(cfg, Mapping) or "atoms" not in cfg:
        raise ValidationError("measure config must be an object with an 'atoms' list")
    atoms = []
    for entry in cfg["atoms"]:
        if "coords" not in entry or "weight" not in entry:
            raise ValidationError("each atom needs 'coords' and 'weight'")
        g = element_from_list(schema, entry["coords"])
        atoms.append((g, parse_fraction(str(entry["weight"]))))
    radius = cfg.get("adaptedness_radius", 4)
    if adaptedness_radius is not None:
        radius = adaptedness_radius
    return Measure(schema, atoms, adaptedness_radius=int(radius))


# -- polynomial JSON -------------------------------------------------------------

def polynomial_to_obj(p: Polynomial) -> dict[str, Any]:
    ordered = sorted(p.terms.items(), key=lambda mc: monomial_sort_key(p.schema, mc[0]))
    return {
        "terms": [
            {"exponents": list(m.exponents), "coeff": fraction_to_str(c)}
            for m, c in ordered
        ],
        "text": str(p),
    }


def polynomial_from_obj(schema: GroupSchema, obj: Mapping[str, Any]) -> Polynomial:
    if not isinstance(obj, Mapping) or "terms" not in obj:
        raise ValidationError("polynomial object must contain a 'terms' list")
    terms: dict[Monomial, Fraction] = {}
    for entry in obj["terms"]:
        exps = entry.get("exponents")
        if exps is None or len(exps) != schema.n_coords:
            raise ValidationError("term exponents must match the schema coordinate count")
        mono = Monomial(tuple(int(e) for e in exps))
        coeff = parse_fraction(str(entry.get("coeff")))
        if mono in terms:
            raise ValidationError(f"duplicate term {exps}")
        terms[mono] = coeff
    return Polynomial(schema, terms)


# -- polynomial text syntax -------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    text = text.strip()
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValidationError(f"cannot read polynomial at ...{text[pos:pos + 12]!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return tokens


def parse_polynomial(schema: GroupSchema, text: str) -> Polynomial:
    """Parse caret-and-star syntax like ``x^2 - y^2 + 3/2*x*y - 1``.

    Coordinate names are the ones declared by the schema (x, y, z for the
    three-dimensional Heisenberg group; x1..xd for lattices; a_ij for
    unitriangular groups).
    """
    if not text.strip():
        raise ValidationError("empty polynomial input")
    tokens = _tokenize(text)
    name_index = {name: i for i, name in enumerate(schema.coord_names)}
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ValidationError("unexpected end of polynomial")
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_number() -> Fraction:
        tok = take()
        if not tok.isdigit():
            raise ValidationError(f"expected a number, found {tok!r}")
        value = Fraction(int(tok))
        if peek() == "/":
            take()
            den = take()
            if not den.isdigit() or int(den) == 0:
                raise ValidationError("invalid denominator in coefficient")
            value /= int(den)
        return value

    def parse_term() -> tuple[Fraction, tuple[int, ...]]:
        coeff = Fraction(1)
        exps = [0] * schema.n_coords
        while True:
            tok = peek()
            if tok is None:
                raise ValidationError("unexpected end of polynomial")
            if tok.isdigit():
                coeff *= parse_number()
            elif tok in name_index or tok[0].isalpha():
                name = take()
                if name not in name_index:
                    raise ValidationError(
                        f"unknown coordinate {name!r}; valid names: "
                        + ", ".join(schema.coord_names)
                    )
                e = 1
                if peek() == "^":
                    take()
                    etok = take()
                    if not etok.isdigit():
                        raise ValidationError("exponent must be a non-negative integer")
                    e = int(etok)
                exps[name_index[name]] += e
            else:
                raise ValidationError(f"unexpected token {tok!r} in term")
            if peek() == "*":
                take()
                continue
            break
        return coeff, tuple(exps)

    terms: dict[Monomial, Fraction] = {}
    sign = Fraction(1)
    first = True
    while pos < len(tokens):
        tok = peek()
        if tok == "+":
            take()
            sign = Fraction(1)
        elif tok == "-":
            take()
            sign = Fraction(-1)
        elif not first:
            raise ValidationError(f"expected '+' or '-' before {tok!r}")
        coeff, exps = parse_term()
        mono = Monomial(exps)
        acc = terms.get(mono, Fraction(0)) + sign * coeff
        if acc:
            terms[mono] = acc
        else:
            terms.pop(mono, None)
        sign = Fraction(1)
        first = False
    return Polynomial(schema, terms)
