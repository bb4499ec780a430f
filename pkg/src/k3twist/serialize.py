"""JSON reading and writing with exact numbers.

Integers whose magnitude exceeds ``2**53`` are written as decimal strings so
that readers using binary64 numbers do not round them. Rationals are always
strings ``"p/q"`` (or ``"p"`` when integral). Floats are rejected on input
and never produced.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Mapping, Sequence

import jsonschema

from .errors import InvalidInputError, ParityError
from .intmat import IntMatrix
from .lattice import FiniteAbelianGroup, Lattice, LatticeVector, Sublattice
from .mukai import K3Surface, MukaiVector
from .cech import Cochain, Nerve

__all__ = [
    "SAFE_INT",
    "INPUT_SCHEMA",
    "REPORT_SCHEMA",
    "to_json_value",
    "dumps",
    "loads",
    "validate",
    "parse_int",
    "parse_rational",
    "parse_int_vector",
    "parse_rational_vector",
    "parse_int_matrix",
    "parse_surface_spec",
    "parse_mukai_vector",
    "parse_lattice",
    "parse_nerve",
    "parse_cochain",
]

SAFE_INT = 2**53
INPUT_SCHEMA = "k3twist/input/v1"
REPORT_SCHEMA = "k3twist/report/v1"


# ----------------------------------------------------------------------
# output


def to_json_value(x: Any) -> Any:
    """Convert library values into plain JSON data."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x if abs(x) <= SAFE_INT else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        raise TypeError("floating-point values are not allowed in reports")
    if isinstance(x, IntMatrix):
        return [to_json_value(r) for r in x.rows]
    if isinstance(x, FiniteAbelianGroup):
        return {"invariant_factors": to_json_value(x.invariant_factors), "order": to_json_value(x.order), "text": str(x)}
    if isinstance(x, LatticeVector):
        return to_json_value(x.coords)
    if isinstance(x, Mapping):
        return {str(k): to_json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json_value(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc: Any) -> str:
    return json.dumps(to_json_value(doc), indent=2, ensure_ascii=True) + "\n"


def _reject_float(s: str):
    raise InvalidInputError(f"floating-point number {s} in input; use integers or 'p/q' strings")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from None


@lru_cache(maxsize=None)
def _schema(name: str) -> dict:
    text = resources.files(__package__).joinpath("schemas", name).read_text()
    return json.loads(text)


def validate(doc: Any, command: str) -> None:
    """Validate an input document against the shipped schema for ``command``."""
    try:
        jsonschema.validate(doc, _schema(f"{command}.schema.json"))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InvalidInputError(f"input does not match schema at {where}: {exc.message}") from None


# ----------------------------------------------------------------------
# scalar and array parsing


def parse_int(x: Any, what: str = "value") -> int:
    if isinstance(x, bool):
        raise InvalidInputError(f"{what}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InvalidInputError(f"{what}: expected an integer, got {x!r}")


def parse_rational(x: Any, what: str = "value") -> Fraction:
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInputError(f"{what}: cannot read {x!r} as a rational") from None
    return Fraction(parse_int(x, what))


def _sequence(x: Any, what: str, length: int | None) -> Sequence:
    if not isinstance(x, list):
        raise InvalidInputError(f"{what}: expected a list")
    if length is not None and len(x) != length:
        raise InvalidInputError(f"{what}: expected {length} entries, got {len(x)}")
    return x


def parse_int_vector(x: Any, length: int | None = None, what: str = "vector") -> tuple[int, ...]:
    return tuple(parse_int(v, what) for v in _sequence(x, what, length))


def parse_rational_vector(x: Any, length: int | None = None, what: str = "vector") -> tuple[Fraction, ...]:
    return tuple(parse_rational(v, what) for v in _sequence(x, what, length))


def parse_int_matrix(x: Any, what: str = "matrix") -> IntMatrix:
    rows = [parse_int_vector(r, what=what) for r in _sequence(x, what, None)]
    if not rows:
        raise InvalidInputError(f"{what}: empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise InvalidInputError(f"{what}: rows have different lengths")
    return IntMatrix(rows)


# ----------------------------------------------------------------------
# domain objects


def parse_surface_spec(doc: Any) -> K3Surface:
    """``{"picard_rank_one": 2k}`` or ``{"ns_gram": G, "embedding": E}`` (``E`` is 22 x rho).

    Either form takes an optional ``"label"``. JSON text is accepted too.
    """
    if isinstance(doc, str):
        doc = loads(doc)
    if not isinstance(doc, dict):
        raise InvalidInputError("surface must be an object")
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise InvalidInputError("surface label must be a string")
    if "picard_rank_one" in doc:
        if "ns_gram" in doc or "embedding" in doc:
            raise InvalidInputError("give either picard_rank_one or ns_gram/embedding, not both")
        return K3Surface.rank_one(parse_int(doc["picard_rank_one"], "picard_rank_one"), label)
    if "ns_gram" not in doc or "embedding" not in doc:
        raise InvalidInputError("surface needs picard_rank_one, or both ns_gram and embedding")
    gram = parse_int_matrix(doc["ns_gram"], "ns_gram")
    if not gram.is_symmetric():
        raise InvalidInputError("ns_gram is not symmetric")
    if any(gram[i, i] % 2 for i in range(gram.nrows)):
        raise ParityError("ns_gram is not even")
    emb = parse_int_matrix(doc["embedding"], "embedding")
    if emb.ncols != gram.nrows:
        raise InvalidInputError("embedding must have one column per NS basis vector")
    return K3Surface.from_embedding(gram, emb, label)


def parse_mukai_vector(doc: Any, X: K3Surface | None = None) -> MukaiVector:
    """Accepts ``{"coords": [24]}``, ``{"r", "l", "s"}`` or ``{"r", "ns", "s"}``.

    ``ns`` gives the H^2 part in the Neron-Severi basis of ``X``.
    """
    if isinstance(doc, list):
        return MukaiVector.from_coords(parse_int_vector(doc, 24, "v"))
    if not isinstance(doc, dict):
        raise InvalidInputError("Mukai vector must be an object or a list of 24 integers")
    if "coords" in doc:
        return MukaiVector.from_coords(parse_int_vector(doc["coords"], 24, "v.coords"))
    r = parse_int(doc.get("r"), "v.r")
    s = parse_int(doc.get("s"), "v.s")
    if ("l" in doc) == ("ns" in doc):
        raise InvalidInputError("Mukai vector needs exactly one of 'l' and 'ns'")
    if "l" in doc:
        return MukaiVector(r, parse_int_vector(doc["l"], 22, "v.l"), s)
    if X is None:
        raise InvalidInputError("'ns' coordinates need a surface")
    c = parse_int_vector(doc["ns"], X.picard_rank, "v.ns")
    return MukaiVector(r, X.ns_embedding(c), s)


def parse_lattice(doc: Any) -> Sublattice:
    """``{"gram": G}``: the whole lattice with that Gram matrix."""
    if not isinstance(doc, dict) or "gram" not in doc:
        raise InvalidInputError("lattice must be an object with a 'gram' entry")
    L = Lattice(parse_int_matrix(doc["gram"], "gram"), name=str(doc.get("label", "")))
    return Sublattice.whole(L)


def parse_nerve(doc: Any) -> Nerve:
    """``{"vertices": n, "simplices": [[...], ...]}``; faces are added automatically."""
    if not isinstance(doc, dict):
        raise InvalidInputError("nerve must be an object")
    nv = parse_int(doc.get("vertices"), "nerve.vertices")
    simplices = [parse_int_vector(s, what="nerve.simplices") for s in _sequence(doc.get("simplices"), "nerve.simplices", None)]
    return Nerve.from_maximal(nv, simplices)


def parse_cochain(doc: Any, nerve: Nerve, degree: int, modulus: int) -> Cochain:
    """A list of ``[simplex, value]`` pairs; unlisted simplices get 0."""
    values = {}
    for item in _sequence(doc, "cochain", None):
        if not isinstance(item, list) or len(item) != 2:
            raise InvalidInputError("cochain entries must be [simplex, value] pairs")
        s = tuple(sorted(parse_int_vector(item[0], degree + 1, "cochain simplex")))
        if not nerve.has_simplex(s):
            raise InvalidInputError(f"{list(s)} is not a {degree}-simplex of the nerve")
        values[s] = parse_rational(item[1], "cochain value") if modulus == 0 else parse_int(item[1], "cochain value")
    return Cochain.from_dict(nerve, degree, modulus, values)
