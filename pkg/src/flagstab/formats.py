"""JSON documents for algebras, modules, subalgebras, flags, set families and chains.

Every scalar is a rational string ``p`` or ``p/q``.  Loading errors carry the
file name and, where it can be found, the line of the offending value.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .directedsys import AlgebraChain
from .errors import FlagstabError
from .exactlinalg import Matrix, Subspace, format_rational, parse_rational, span
from .flags import Flag
from .liealg import LieAlgebra, Representation, Subalgebra
from .ultra import GroundSet, SetFamily, Ultrafilter, UltraFlagSystem, bits


class InputError(FlagstabError):
    """A document failed to parse or validate."""


class Document:
    """Parsed JSON plus the raw text, for locating bad values by line."""

    def __init__(self, text: str, source: str = "<input>"):
        self.text = text
        self.source = source
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{source}:{exc.lineno}: {exc.msg}") from None

    @classmethod
    def load(cls, path: str | Path) -> Document:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from None
        return cls(text, str(path))

    def error(self, message: str, token: Any = None) -> InputError:
        line = None
        if token is not None:
            pattern = re.escape(json.dumps(token)) if isinstance(token, str) else re.escape(str(token))
            for i, text_line in enumerate(self.text.splitlines(), 1):
                if re.search(pattern, text_line):
                    line = i
                    break
        where = f"{self.source}:{line}" if line else self.source
        return InputError(f"{where}: {message}")

    def field(self, obj: dict, key: str, kind: type | tuple = object):
        if not isinstance(obj, dict) or key not in obj:
            raise self.error(f"missing field {key!r}", key)
        value = obj[key]
        if not isinstance(value, kind):
            raise self.error(f"field {key!r} has the wrong type", key)
        return value

    def rational(self, value) -> Fraction:
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        if not isinstance(value, str):
            raise self.error(f"expected a rational string, got {value!r}", value)
        try:
            return parse_rational(value)
        except ValueError:
            raise self.error(f"bad rational literal {value!r}", value) from None

    def vector(self, value, length: int | None = None) -> tuple:
        if not isinstance(value, list):
            raise self.error(f"expected a vector, got {value!r}")
        v = tuple(self.rational(a) for a in value)
        if length is not None and len(v) != length:
            raise self.error(f"vector {value} should have length {length}", value[0] if value else None)
        return v

    def matrix(self, value, rows: int | None = None, cols: int | None = None) -> Matrix:
        if not isinstance(value, list):
            raise self.error("expected a matrix (list of rows)")
        data = tuple(self.vector(r, cols) for r in value)
        if rows is not None and len(data) != rows:
            raise self.error(f"matrix should have {rows} rows")
        width = cols if cols is not None else (len(data[0]) if data else 0)
        try:
            return Matrix(len(data), width, data)
        except ValueError as exc:
            raise self.error(str(exc)) from None


def rational_list(v) -> list[str]:
    return [format_rational(a) for a in v]


def matrix_doc(m: Matrix) -> list[list[str]]:
    return [rational_list(r) for r in m.entries]


# -- algebras and modules ----------------------------------------------------

def algebra_from_doc(doc: Document, obj: dict | None = None, strict: bool = True) -> LieAlgebra:
    obj = doc.data if obj is None else obj
    dim = doc.field(obj, "dim", int)
    names = obj.get("basis")
    if names is not None and (not isinstance(names, list) or len(names) != dim):
        raise doc.error(f"'basis' must list {dim} names", "basis")
    raw = doc.field(obj, "brackets", dict) if "brackets" in obj else {}
    table = {}
    for key, entry in raw.items():
        m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", key)
        if not m:
            raise doc.error(f"bracket key {key!r} is not of the form 'i,j'", key)
        i, j = int(m.group(1)), int(m.group(2))
        if not isinstance(entry, dict):
            raise doc.error(f"bracket {key!r} must map result indices to coefficients", key)
        row = {}
        for k, c in entry.items():
            if not k.isdigit() or int(k) >= dim:
                raise doc.error(f"bad result index {k!r} in bracket {key!r}", key)
            row[int(k)] = doc.rational(c)
        if i >= dim or j >= dim:
            raise doc.error(f"bracket {key!r} refers to a basis index >= {dim}", key)
        table[(i, j)] = row
    try:
        return LieAlgebra(dim, table, names, strict=strict)
    except FlagstabError as exc:
        raise doc.error(str(exc)) from None


def algebra_to_doc(L: LieAlgebra) -> dict:
    brackets = {}
    for (i, j), row in sorted(L.table.items()):
        if i < j:
            brackets[f"{i},{j}"] = {str(k): format_rational(c) for k, c in sorted(row.items())}
    return {"dim": L.dim, "basis": list(L.basis_names), "brackets": brackets}


def representation_from_doc(doc: Document, L: LieAlgebra, obj: dict | None = None) -> Representation:
    obj = doc.data if obj is None else obj
    n = doc.field(obj, "module_dim", int)
    action = doc.field(obj, "action", dict)
    for name in action:
        if name not in L.basis_names:
            raise doc.error(f"action given for unknown basis element {name!r}", name)
    mats = [doc.matrix(action[name], n, n) if name in action else Matrix.zeros(n, n)
            for name in L.basis_names]
    try:
        return Representation(L, mats)
    except FlagstabError as exc:
        raise doc.error(str(exc)) from None


def representation_to_doc(rep: Representation) -> dict:
    return {"module_dim": rep.module_dim,
            "action": {name: matrix_doc(m) for name, m in zip(rep.algebra.basis_names, rep.action)}}


def subspace_from_list(doc: Document, vectors, n: int) -> Subspace:
    if not isinstance(vectors, list):
        raise doc.error("expected a list of vectors")
    return span([doc.vector(v, n) for v in vectors], n)


def subalgebra_from_doc(doc: Document, L: LieAlgebra, obj: dict | None = None) -> Subalgebra:
    obj = doc.data if obj is None else obj
    n = doc.field(obj, "ambient_dim", int)
    if n != L.dim:
        raise doc.error(f"subalgebra lives in dimension {n} but the algebra has dimension {L.dim}", "ambient_dim")
    try:
        return Subalgebra(L, subspace_from_list(doc, doc.field(obj, "basis", list), n))
    except FlagstabError as exc:
        raise doc.error(str(exc)) from None


def subalgebra_to_doc(A: Subalgebra) -> dict:
    return {"kind": "subalgebra", "ambient_dim": A.parent.dim, "dim": A.dim,
            "basis": [rational_list(v) for v in A.basis]}


def flag_from_doc(doc: Document, obj: dict | None = None) -> Flag:
    obj = doc.data if obj is None else obj
    n = doc.field(obj, "ambient", int)
    chain = doc.field(obj, "chain", list)
    try:
        return Flag(n, tuple(subspace_from_list(doc, vs, n) for vs in chain))
    except FlagstabError as exc:
        raise doc.error(str(exc)) from None


def flag_to_doc(f: Flag) -> dict:
    return {"kind": "flag", "ambient": f.ambient_dim,
            "chain": [[rational_list(v) for v in s.basis] for s in f.chain]}


# -- set families --------------------------------------------------------------

def family_from_doc(doc: Document, obj: dict | None = None) -> SetFamily:
    obj = doc.data if obj is None else obj
    size = doc.field(obj, "ground", int)
    members = doc.field(obj, "members", list)
    if size < 1:
        raise doc.error("ground size must be at least 1", "ground")
    for m in members:
        if not isinstance(m, list) or any(not isinstance(e, int) or not 0 <= e < size for e in m):
            raise doc.error(f"member {m} is not a list of points in 0..{size - 1}")
    return SetFamily(GroundSet(size), frozenset(bits(m) for m in members))


def family_to_doc(fam: SetFamily) -> dict:
    return {"ground": fam.ground.size, "members": fam.to_lists()}


def ultraflag_from_doc(doc: Document) -> UltraFlagSystem:
    """``{"ground": n, "point": a, "factors": [flag, ...]}``; ``"ultrafilter"``
    (a member list) may replace ``"point"``; ``"factor_dims"`` may replace
    ``"factors"`` with standard flags."""
    obj = doc.data
    size = doc.field(obj, "ground", int)
    ground = GroundSet(size)
    if "ultrafilter" in obj:
        fam = family_from_doc(doc, {"ground": size, "members": obj["ultrafilter"]})
        try:
            uf = Ultrafilter(ground, fam.members)
        except ValueError as exc:
            raise doc.error(str(exc), "ultrafilter") from None
    else:
        point = doc.field(obj, "point", int)
        if not 0 <= point < size:
            raise doc.error(f"point {point} outside the ground set", "point")
        uf = Ultrafilter.principal(ground, point)
    if "factors" in obj:
        factors = tuple(flag_from_doc(doc, f) for f in doc.field(obj, "factors", list))
    else:
        factors = tuple(Flag.standard(d) for d in doc.field(obj, "factor_dims", list))
    if len(factors) != size:
        raise doc.error(f"expected {size} factor flags", "factors")
    return UltraFlagSystem(ground, factors, uf, strict=False)


# -- chains --------------------------------------------------------------------

def chain_from_doc(doc: Document) -> tuple[AlgebraChain, list[Subalgebra]]:
    obj = doc.data
    levels = doc.field(obj, "levels", list)
    algebras, modules, subs = [], [], []
    for lv in levels:
        L = algebra_from_doc(doc, doc.field(lv, "algebra", dict))
        algebras.append(L)
        modules.append(representation_from_doc(doc, L, doc.field(lv, "module", dict)))
        subs.append(subalgebra_from_doc(doc, L, doc.field(lv, "subalgebra", dict)))
    embs = [doc.matrix(m) for m in doc.field(obj, "embeddings", list)]
    membs = [doc.matrix(m) for m in doc.field(obj, "module_embeddings", list)]
    try:
        return AlgebraChain(algebras, embs, modules, membs), subs
    except FlagstabError as exc:
        raise doc.error(str(exc)) from None


def chain_to_doc(chain: AlgebraChain, subs) -> dict:
    return {
        "levels": [{"algebra": algebra_to_doc(L), "module": representation_to_doc(V),
                    "subalgebra": subalgebra_to_doc(B)}
                   for L, V, B in zip(chain.algebras, chain.modules, subs)],
        "embeddings": [matrix_doc(m) for m in chain.embeddings],
        "module_embeddings": [matrix_doc(m) for m in chain.module_embeddings],
    }


def dump(obj: dict) -> str:
    return json.dumps(obj, indent=1) + "\n"
