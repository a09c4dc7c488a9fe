"""Text documents for every domain value.

A document is a JSON object with a ``"type"`` tag.  Field elements are
little-endian coefficient lists over F_p of full absolute length, matrices are
row-major, polynomials are lists of ``[exponents, coefficients]`` pairs.
Printing uses sorted keys and fixed separators so that
``loads(dumps(v)) == v`` and ``dumps(loads(s)) == s`` for canonical ``s``.
"""
from __future__ import annotations

import json
from typing import Any

from .cocycle import LaurentUnit
from .descent import EquivariantModule, FinAlgebra, GradedIdealTrunc
from .field import DEFAULT_DEGREE_CAP, EmbeddingMap, Field, FieldElement, embedding, get_field
from .linalg import MatrixF
from .poly import PolynomialF
from .semilinear import DualMatrix, SemilinearEndo


class MalformedDocument(ValueError):
    pass


# largest absolute degree a parsed field may have; the CLI overrides it per call
degree_cap = DEFAULT_DEGREE_CAP


def dumps(value: Any) -> str:
    return json.dumps(to_doc(value), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Any:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from None
    return from_doc(doc)


# -- encoding -----------------------------------------------------------------------

def field_doc(F: Field) -> dict:
    return {"p": F.p, "q_exponent": F.k, "m": F.m, "modulus": list(F.modulus)}


def _el(F: Field, code: int) -> list[int]:
    return F.coords(code)


def _mat(M: MatrixF) -> dict:
    return {"rows": M.rows, "cols": M.cols,
            "entries": [[_el(M.field, c) for c in row] for row in M.codes]}


def _poly_terms(f: PolynomialF) -> list:
    return [[list(e), _el(f.field, c)] for e, c in f.terms.items()]


def _algebra(A: FinAlgebra) -> dict:
    Fq = A.base
    return {"base": field_doc(Fq), "dim": A.dim, "name": A.name,
            "constants": [[[_el(Fq, c) for c in ck] for ck in cj] for cj in A.constants],
            "unit": [_el(Fq, c) for c in A.unit]}


def to_doc(value: Any) -> Any:
    if isinstance(value, Field):
        return {"type": "field", **field_doc(value)}
    if isinstance(value, FieldElement):
        return {"type": "element", "field": field_doc(value.field), "coeffs": value.coords}
    if isinstance(value, MatrixF):
        return {"type": "matrix", "field": field_doc(value.field), **_mat(value)}
    if isinstance(value, DualMatrix):
        return {"type": "dual_matrix", "field": field_doc(value.field),
                "a0": _mat(value.a0), "a1": _mat(value.a1)}
    if isinstance(value, PolynomialF):
        return {"type": "polynomial", "field": field_doc(value.field), "nvars": value.nvars,
                "terms": _poly_terms(value)}
    if isinstance(value, SemilinearEndo):
        return {"type": "semilinear", "field": field_doc(value.field), "matrix": _mat(value.A),
                "twist": value.twist}
    if isinstance(value, FinAlgebra):
        return {"type": "algebra", **_algebra(value)}
    if isinstance(value, EquivariantModule):
        return {"type": "module", "field": field_doc(value.field), "algebra": _algebra(value.algebra),
                "action": [_mat(a) for a in value.action], "sigma": _mat(value.sigma.A)}
    if isinstance(value, GradedIdealTrunc):
        return {"type": "ideal", "field": field_doc(value.field), "nvars": value.nvars,
                "D": value.D,
                "pieces": {str(d): [_poly_terms(f) for f in fs] for d, fs in value.pieces.items()}}
    if isinstance(value, LaurentUnit):
        return {"type": "laurent_unit", "field": field_doc(value.lam.field),
                "lambda": value.lam.coords, "t": value.t}
    if isinstance(value, EmbeddingMap):
        return {"type": "embedding", "source": field_doc(value.source),
                "target": field_doc(value.target),
                "image_of_generator": value.image_of_generator.coords}
    if isinstance(value, (list, tuple)):
        if value and all(isinstance(x, FieldElement) for x in value):
            F = value[0].field
            return {"type": "vector", "field": field_doc(F), "entries": [x.coords for x in value]}
        return [to_doc(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_doc(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, int, str)):
        return value
    raise TypeError(f"cannot serialize {type(value).__name__}")


# -- decoding -----------------------------------------------------------------------

def _require(doc: dict, *keys):
    if not isinstance(doc, dict):
        raise MalformedDocument("expected an object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise MalformedDocument(f"missing keys {missing}")


def _int(x) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise MalformedDocument(f"expected an integer, got {x!r}")
    return x


def parse_field(doc: dict) -> Field:
    _require(doc, "p", "q_exponent", "m")
    try:
        F = get_field(_int(doc["p"]), _int(doc["q_exponent"]), _int(doc["m"]), degree_cap)
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from None
    if "modulus" in doc and list(doc["modulus"]) != list(F.modulus):
        raise MalformedDocument("modulus does not match the canonical defining polynomial")
    return F


def _code(F: Field, coeffs) -> int:
    if not isinstance(coeffs, list) or len(coeffs) != F.degree:
        raise MalformedDocument(f"element must have {F.degree} coefficients")
    for c in coeffs:
        if not 0 <= _int(c) < F.p:
            raise MalformedDocument("coefficient out of range")
    code = 0
    for c in reversed(coeffs):
        code = code * F.p + c
    return code


def _parse_mat(F: Field, doc: dict) -> MatrixF:
    _require(doc, "rows", "cols", "entries")
    rows, cols = _int(doc["rows"]), _int(doc["cols"])
    entries = doc["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise MalformedDocument("matrix entries do not match its shape")
    return MatrixF.from_codes(F, [[_code(F, c) for c in row] for row in entries], cols)


def _parse_poly(F: Field, nvars: int, terms) -> PolynomialF:
    out = {}
    for pair in terms:
        if not isinstance(pair, list) or len(pair) != 2 or len(pair[0]) != nvars:
            raise MalformedDocument("polynomial term must be [exponents, coefficients]")
        exp = tuple(_int(e) for e in pair[0])
        if any(e < 0 for e in exp):
            raise MalformedDocument("negative exponent")
        out[exp] = _code(F, pair[1])
    return PolynomialF._raw(F, nvars, out)


def _parse_algebra(doc: dict) -> FinAlgebra:
    _require(doc, "base", "constants", "unit")
    Fq = parse_field(doc["base"])
    try:
        return FinAlgebra(Fq, [[[_code(Fq, c) for c in ck] for ck in cj] for cj in doc["constants"]],
                          [_code(Fq, c) for c in doc["unit"]], doc.get("name", ""))
    except (TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad algebra: {exc}") from None


def from_doc(doc: Any) -> Any:
    if isinstance(doc, list):
        return [from_doc(d) for d in doc]
    if not isinstance(doc, dict):
        return doc
    kind = doc.get("type")
    if kind is None:
        return {k: from_doc(v) for k, v in doc.items()}
    try:
        return _PARSERS[kind](doc)
    except KeyError as exc:
        if kind not in _PARSERS:
            raise MalformedDocument(f"unknown document type {kind!r}") from None
        raise MalformedDocument(f"missing key {exc}") from None
    except (TypeError, IndexError, AttributeError) as exc:
        raise MalformedDocument(f"bad {kind} document: {exc}") from None


def _p_element(doc):
    F = parse_field(doc["field"])
    return FieldElement(F, _code(F, doc["coeffs"]))


def _p_vector(doc):
    F = parse_field(doc["field"])
    return [FieldElement(F, _code(F, c)) for c in doc["entries"]]


def _p_matrix(doc):
    return _parse_mat(parse_field(doc["field"]), doc)


def _p_dual(doc):
    F = parse_field(doc["field"])
    return DualMatrix(_parse_mat(F, doc["a0"]), _parse_mat(F, doc["a1"]))


def _p_poly(doc):
    return _parse_poly(parse_field(doc["field"]), _int(doc["nvars"]), doc["terms"])


def _p_semilinear(doc):
    F = parse_field(doc["field"])
    return SemilinearEndo(F, _parse_mat(F, doc["matrix"]), _int(doc.get("twist", 1)))


def _p_module(doc):
    F = parse_field(doc["field"])
    alg = _parse_algebra(doc["algebra"])
    try:
        return EquivariantModule(alg, F, [_parse_mat(F, a) for a in doc["action"]],
                                 SemilinearEndo(F, _parse_mat(F, doc["sigma"])))
    except ValueError as exc:
        raise MalformedDocument(f"bad module: {exc}") from None


def _p_ideal(doc):
    F = parse_field(doc["field"])
    nvars, D = _int(doc["nvars"]), _int(doc["D"])
    pieces = {int(d): [_parse_poly(F, nvars, t) for t in fs] for d, fs in doc["pieces"].items()}
    try:
        return GradedIdealTrunc(F, nvars, D, pieces)
    except ValueError as exc:
        raise MalformedDocument(f"bad ideal: {exc}") from None


def _p_unit(doc):
    F = parse_field(doc["field"])
    try:
        return LaurentUnit(FieldElement(F, _code(F, doc["lambda"])), _int(doc["t"]))
    except ValueError as exc:
        raise MalformedDocument(str(exc)) from None


def _p_embedding(doc):
    S, T = parse_field(doc["source"]), parse_field(doc["target"])
    emb = embedding(S, T)
    if "image_of_generator" in doc and doc["image_of_generator"] != emb.image_of_generator.coords:
        raise MalformedDocument("embedding does not match the canonical one")
    return emb


def _p_error(doc):
    # CLI error reports decode to plain dicts with a decoded payload
    return {"type": "error", "error": doc["error"], "message": doc["message"],
            "payload": from_doc(doc.get("payload", {}))}


_PARSERS = {
    "error": _p_error,
    "field": parse_field,
    "element": _p_element,
    "vector": _p_vector,
    "matrix": _p_matrix,
    "dual_matrix": _p_dual,
    "polynomial": _p_poly,
    "semilinear": _p_semilinear,
    "algebra": _parse_algebra,
    "module": _p_module,
    "ideal": _p_ideal,
    "laurent_unit": _p_unit,
    "embedding": _p_embedding,
}
