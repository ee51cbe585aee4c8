"""Canonical JSON serialization and the catalog fallback loader.

Every document carries ``"schema": "taurec/1"`` and serializes through
:func:`canonical_dumps` (sorted keys, fixed separators), so equal inputs
produce byte-identical output.  Scalars follow the field convention of the
algebra layer: plain ints over a prime field, ``[numerator, denominator]``
pairs over the rationals.

A catalog written by :func:`catalog_to_json` can be read back by
:func:`catalog_from_json` without re-knitting: modules are rebuilt from
their stored action matrices and the τ-table is trusted as recorded.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from taurec.algebra import FdAlgebra
from taurec.catalog import ARQuiver, IndCatalog
from taurec.errors import DefinitionError
from taurec.linalg import Matrix
from taurec.modules import Module

SCHEMA = "taurec/1"

__all__ = [
    "SCHEMA",
    "canonical_dumps",
    "digest",
    "matrix_to_json",
    "matrix_from_json",
    "algebra_from_dict",
    "module_to_json",
    "catalog_to_json",
    "catalog_from_json",
    "result_document",
]


# --------------------------------------------------------------------------
# canonical dumps and digests


def canonical_dumps(doc) -> str:
    """Deterministic JSON text: sorted keys, no whitespace surprises."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True) + "\n"


def digest(doc) -> str:
    """Short sha256 of the canonical serialization."""
    return hashlib.sha256(canonical_dumps(doc).encode()).hexdigest()[:12]


# --------------------------------------------------------------------------
# scalars and matrices


def _enc_scalar(c, p: int):
    if p:
        return int(c)
    c = Fraction(c)
    return [c.numerator, c.denominator]


def _dec_scalar(data, p: int):
    if p:
        return int(data) % p
    num, den = data
    return Fraction(num, den)


def matrix_to_json(m: Matrix) -> dict:
    return {
        "shape": [m.rows, m.cols],
        "entries": [[_enc_scalar(m[i, j], m.p) for j in range(m.cols)]
                    for i in range(m.rows)],
    }


def matrix_from_json(data: dict, p: int) -> Matrix:
    rows, cols = data["shape"]
    if rows == 0 or cols == 0:
        return Matrix.zero(rows, cols, p)
    return Matrix.from_rows(
        [[_dec_scalar(c, p) for c in row] for row in data["entries"]], p)


# --------------------------------------------------------------------------
# algebras


def algebra_from_dict(data: dict) -> FdAlgebra:
    """Inverse of ``FdAlgebra.to_dict``.

    The result has no path metadata, which is all a catalog needs.
    """
    p = data["field"]["p"]
    try:
        return FdAlgebra(
            data["basis"],
            [[[_dec_scalar(c, p) for c in vec] for vec in row]
             for row in data["mult"]],
            [[_dec_scalar(c, p) for c in vec] for vec in data["idempotents"]],
            data["vertices"],
            p=p,
            name=data.get("name", ""),
        )
    except KeyError as exc:
        raise DefinitionError(f"algebra record is missing {exc}") from None


# --------------------------------------------------------------------------
# modules and catalogs


def module_to_json(m: Module, *, with_action: bool = False) -> dict:
    out = {
        "label": m.label,
        "dim": m.dim,
        "dims": list(m.dim_vector()),
    }
    if with_action:
        out["action"] = [matrix_to_json(a) for a in m.action]
    return out


def catalog_to_json(cat: IndCatalog, quiver: ARQuiver | None = None) -> dict:
    """The whole catalog, self-contained: algebra, actions, τ-table."""
    doc = {
        "schema": SCHEMA,
        "kind": "catalog",
        "algebra": cat.algebra.to_dict(),
        "algebra_digest": cat.algebra.digest(),
        "modules": [module_to_json(m, with_action=True) for m in cat.modules],
        "tau": [t for t in cat.tau_table],
    }
    if quiver is not None:
        doc["arrows"] = [[s, t, mult]
                         for (s, t), mult in sorted(quiver.arrows.items())]
    return doc


def catalog_from_json(data: dict):
    """Rebuild ``(IndCatalog, ARQuiver | None)`` from a catalog document.

    Modules are reconstructed from their stored adapted actions with
    validation skipped; the recorded τ-table is reused, so nothing is
    re-knitted.  Refuses documents with the wrong schema tag.
    """
    if data.get("schema") != SCHEMA:
        raise DefinitionError(
            f"unsupported schema {data.get('schema')!r}; expected {SCHEMA!r}")
    if data.get("kind") != "catalog":
        raise DefinitionError(f"not a catalog document: {data.get('kind')!r}")
    alg = algebra_from_dict(data["algebra"])
    if alg.digest() != data["algebra_digest"]:
        raise DefinitionError("algebra digest does not match its record")
    modules = []
    for rec in data["modules"]:
        action = [matrix_from_json(a, alg.p) for a in rec["action"]]
        m = Module(alg, action, validate=False, label=rec.get("label", ""))
        if list(m.dim_vector()) != rec["dims"]:
            raise DefinitionError(
                f"module {rec.get('label')!r}: stored dimension vector "
                "does not match its action")
        modules.append(m)
    cat = IndCatalog(alg, modules, tau_table=list(data["tau"]))
    quiver = None
    if "arrows" in data:
        quiver = ARQuiver(cat, {(s, t): mult for s, t, mult in data["arrows"]})
    return cat, quiver


# --------------------------------------------------------------------------
# result documents


def result_document(command: str, **sections) -> dict:
    """A CLI result payload with the schema tag and the invoked command."""
    doc = {"schema": SCHEMA, "command": command}
    for key, value in sections.items():
        doc[key] = value
    return doc
