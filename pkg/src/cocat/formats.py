"""Structured-text schemas for co-categories, one document per structure.

Every document is line-oriented.  Blank lines and ``#`` comments are
ignored.  The first entry must be ``category: <finset|abgp|chain|cat>``;
the remaining sections depend on the host category.  Pushout witnesses
are never stored: parsers recompute them canonically, and the q tables
refer to the recomputed apex (for finite sets: quotient classes ordered
by smallest member of the disjoint union, first copy first; for finite
categories: identities per glued object first, then reduced words
ordered by length then content).

finset::

    category: finset
    q0: 2
    q1: 3
    l: 0 1          # table of length q0, entries into q1
    r: 2 1
    i: 0 1 1        # table of length q1, entries into q0
    q: 0 1 4        # table of length q1, entries into the double apex

abgp -- matrix sections are a ``rows cols`` line followed by that many
row lines (omitted entirely when a dimension is zero); groups are
generator counts with optional relation matrices whose columns are
relators::

    category: abgp
    q0: 1
    q1: 3
    l:
    3 1
    1
    0
    0
    ...
    q:
    5 3
    ...

chain -- per-degree ranks, boundary matrices ``<name>-d<k>`` mapping
degree k to k-1, and structure matrices ``<name>-<degree>``::

    category: chain
    q0-ranks: 1 0
    q1-ranks: 2 1
    q1-d1:
    2 1
    -1
    1
    l-0:
    2 1
    ...

cat -- explicit categories (morphism lines are ``src tgt``, composition
lines are ``f g h`` meaning "f then g equals h", identity composites
may be omitted) and functors as index lists::

    category: cat
    q0-objects: 1
    q0-morphisms:
    0 0
    q0-identities: 0
    q1-objects: 2
    q1-morphisms:
    0 0
    1 1
    0 1
    q1-identities: 0 1
    l-obj: 0
    l-mor: 0
    ...
    q-obj: 0 2
    q-mor: 0 2 5
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .core import CoCategoryData, CocatError, TypeMismatch, NonComposable, double_and_triple
from .intmatrix import IntMatrix
from . import finset as fs
from . import abgp as ab
from . import chain as ch
from . import fincat as fc


class ParseError(CocatError):
    """Malformed document; the message names the offending field/line."""


_KEY_RE = re.compile(r"^([a-z0-9-]+):\s*(.*?)\s*$")

CATEGORIES = ("finset", "abgp", "chain", "cat")


@dataclass
class _Section:
    name: str
    lineno: int
    inline: list[str]
    body: list[tuple[int, list[str]]] = field(default_factory=list)


def _tokenize(text: str) -> list[_Section]:
    sections: list[_Section] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _KEY_RE.match(line)
        if m:
            sections.append(_Section(m.group(1), lineno, m.group(2).split()))
        else:
            if not sections:
                raise ParseError(f"line {lineno}: data before any field")
            sections[-1].body.append((lineno, line.split()))
    return sections


class _Doc:
    def __init__(self, text: str):
        self.sections: dict[str, _Section] = {}
        for s in _tokenize(text):
            if s.name in self.sections:
                raise ParseError(f"line {s.lineno}: duplicate field '{s.name}'")
            self.sections[s.name] = s

    def has(self, name: str) -> bool:
        return name in self.sections

    def _get(self, name: str) -> _Section:
        if name not in self.sections:
            raise ParseError(f"missing field '{name}'")
        return self.sections[name]

    def ints(self, name: str, length: Optional[int] = None) -> list[int]:
        s = self._get(name)
        if s.body:
            raise ParseError(f"line {s.body[0][0]}: field '{name}' takes inline values only")
        try:
            values = [int(t) for t in s.inline]
        except ValueError:
            raise ParseError(f"line {s.lineno}: field '{name}': non-integer entry")
        if length is not None and len(values) != length:
            raise ParseError(f"line {s.lineno}: field '{name}': expected {length} entries, "
                             f"got {len(values)}")
        return values

    def int(self, name: str) -> int:
        values = self.ints(name)
        if len(values) != 1:
            raise ParseError(f"field '{name}': expected a single integer")
        return values[0]

    def word(self, name: str) -> str:
        s = self._get(name)
        if len(s.inline) != 1:
            raise ParseError(f"line {s.lineno}: field '{name}': expected a single word")
        return s.inline[0]

    def matrix(self, name: str) -> IntMatrix:
        s = self._get(name)
        if s.inline:
            raise ParseError(f"line {s.lineno}: field '{name}' is a matrix block; "
                             "dimensions go on the next line")
        if not s.body:
            raise ParseError(f"line {s.lineno}: field '{name}': missing dimensions line")
        dim_line, dims = s.body[0]
        if len(dims) != 2:
            raise ParseError(f"line {dim_line}: field '{name}': dimensions line needs "
                             "'rows cols'")
        try:
            rows, cols = int(dims[0]), int(dims[1])
        except ValueError:
            raise ParseError(f"line {dim_line}: field '{name}': non-integer dimensions")
        expected = 0 if (rows == 0 or cols == 0) else rows
        body = s.body[1:]
        if len(body) != expected:
            raise ParseError(f"line {s.lineno}: field '{name}': expected {expected} "
                             f"row lines, got {len(body)}")
        data = []
        for lineno, tokens in body:
            if len(tokens) != cols:
                raise ParseError(f"line {lineno}: field '{name}': expected {cols} entries")
            try:
                data.append([int(t) for t in tokens])
            except ValueError:
                raise ParseError(f"line {lineno}: field '{name}': non-integer entry")
        try:
            return IntMatrix.from_rows(data, cols=cols) if rows else IntMatrix.zeros(0, cols)
        except ValueError as exc:
            raise ParseError(f"field '{name}': {exc}")

    def rows(self, name: str, arity: int) -> list[list[int]]:
        s = self._get(name)
        if s.inline:
            raise ParseError(f"line {s.lineno}: field '{name}' takes indented rows only")
        out = []
        for lineno, tokens in s.body:
            if len(tokens) != arity:
                raise ParseError(f"line {lineno}: field '{name}': expected {arity} entries")
            try:
                out.append([int(t) for t in tokens])
            except ValueError:
                raise ParseError(f"line {lineno}: field '{name}': non-integer entry")
        return out


# ---------------------------------------------------------------------------
# finset


def _finmap(doc: _Doc, name: str, dom: fs.FinSetObj, cod: fs.FinSetObj) -> fs.FinMap:
    table = doc.ints(name, length=dom.size)
    bad = next((v for v in table if not 0 <= v < cod.size), None)
    if bad is not None:
        raise ParseError(f"field '{name}': entry {bad} out of range for size {cod.size}")
    return fs.FinMap(dom, cod, tuple(table))


def parse_finset(doc: _Doc) -> CoCategoryData:
    q0 = fs.FinSetObj(doc.int("q0"))
    q1 = fs.FinSetObj(doc.int("q1"))
    l = _finmap(doc, "l", q0, q1)
    r = _finmap(doc, "r", q0, q1)
    i = _finmap(doc, "i", q1, q0)
    double, triple = double_and_triple(fs.FINSET, l, r)
    q = _finmap(doc, "q", q1, double.apex)
    return CoCategoryData(q0, q1, l, r, i, q, double, triple)


def write_finset(data: CoCategoryData) -> str:
    lines = ["category: finset",
             f"q0: {data.q0.size}",
             f"q1: {data.q1.size}"]
    for name, m in (("l", data.l), ("r", data.r), ("i", data.i), ("q", data.q)):
        lines.append(f"{name}: {' '.join(map(str, m.table))}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# abgp


def _matrix_block(name: str, m: IntMatrix) -> list[str]:
    lines = [f"{name}:", f"{m.rows} {m.cols}"]
    if m.rows and m.cols:
        lines.extend(" ".join(map(str, row)) for row in m.data)
    return lines


def _abmap(doc: _Doc, name: str, dom: ab.FgAbGroup, cod: ab.FgAbGroup) -> ab.AbMap:
    m = doc.matrix(name)
    try:
        return ab.AbMap(dom, cod, m)
    except TypeMismatch as exc:
        raise ParseError(f"field '{name}': {exc}")


def _group(doc: _Doc, name: str) -> ab.FgAbGroup:
    rank = doc.int(name)
    if rank < 0:
        raise ParseError(f"field '{name}': rank must be non-negative")
    rel_name = f"{name}-relations"
    if doc.has(rel_name):
        rel = doc.matrix(rel_name)
        if rel.rows != rank:
            raise ParseError(f"field '{rel_name}': needs {rank} rows")
        return ab.FgAbGroup(rank, rel)
    return ab.FgAbGroup(rank)


def parse_abgp(doc: _Doc) -> CoCategoryData:
    q0 = _group(doc, "q0")
    q1 = _group(doc, "q1")
    l = _abmap(doc, "l", q0, q1)
    r = _abmap(doc, "r", q0, q1)
    i = _abmap(doc, "i", q1, q0)
    double, triple = double_and_triple(ab.ABGP, l, r)
    q = _abmap(doc, "q", q1, double.apex)
    return CoCategoryData(q0, q1, l, r, i, q, double, triple)


def write_abgp(data: CoCategoryData) -> str:
    lines = ["category: abgp",
             f"q0: {data.q0.rank}"]
    if not data.q0.is_free:
        lines.extend(_matrix_block("q0-relations", data.q0.relations))
    lines.append(f"q1: {data.q1.rank}")
    if not data.q1.is_free:
        lines.extend(_matrix_block("q1-relations", data.q1.relations))
    for name, m in (("l", data.l), ("r", data.r), ("i", data.i), ("q", data.q)):
        lines.extend(_matrix_block(name, m.matrix))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# chain


def _complex(doc: _Doc, name: str) -> ch.ChainComplex:
    ranks = doc.ints(f"{name}-ranks")
    if not ranks or any(r < 0 for r in ranks):
        raise ParseError(f"field '{name}-ranks': need non-negative ranks, degree 0 first")
    diffs = []
    for d in range(1, len(ranks)):
        key = f"{name}-d{d}"
        if doc.has(key):
            diffs.append(doc.matrix(key))
        else:
            diffs.append(IntMatrix.zeros(ranks[d - 1], ranks[d]))
    try:
        return ch.ChainComplex(tuple(ranks), tuple(diffs))
    except ValueError as exc:
        raise ParseError(f"field '{name}-ranks': {exc}")


def _chainmap(doc: _Doc, name: str, dom: ch.ChainComplex, cod: ch.ChainComplex) -> ch.ChainMap:
    mats = []
    for d in range(dom.max_degree + 1):
        key = f"{name}-{d}"
        if doc.has(key):
            mats.append(doc.matrix(key))
        else:
            mats.append(IntMatrix.zeros(cod.rank(d), dom.rank(d)))
    try:
        return ch.ChainMap(dom, cod, tuple(mats))
    except TypeMismatch as exc:
        raise ParseError(f"field '{name}-*': {exc}")


def parse_chain(doc: _Doc) -> CoCategoryData:
    q0 = _complex(doc, "q0")
    q1 = _complex(doc, "q1")
    if q0.max_degree != q1.max_degree:
        raise ParseError("fields 'q0-ranks'/'q1-ranks': must cover the same degrees")
    l = _chainmap(doc, "l", q0, q1)
    r = _chainmap(doc, "r", q0, q1)
    i = _chainmap(doc, "i", q1, q0)
    double, triple = double_and_triple(ch.CH, l, r)
    q = _chainmap(doc, "q", q1, double.apex)
    return CoCategoryData(q0, q1, l, r, i, q, double, triple)


def write_chain(data: CoCategoryData) -> str:
    lines = ["category: chain"]
    for name, x in (("q0", data.q0), ("q1", data.q1)):
        lines.append(f"{name}-ranks: {' '.join(map(str, x.ranks))}")
        for d in range(1, x.max_degree + 1):
            if not x.diff(d).is_zero():
                lines.extend(_matrix_block(f"{name}-d{d}", x.diff(d)))
    for name, m in (("l", data.l), ("r", data.r), ("i", data.i), ("q", data.q)):
        for d, mat in enumerate(m.mats):
            if not mat.is_zero() or (mat.rows and mat.cols):
                lines.extend(_matrix_block(f"{name}-{d}", mat))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# cat


def _category(doc: _Doc, name: str) -> fc.FinCategory:
    n_obj = doc.int(f"{name}-objects")
    mor_rows = doc.rows(f"{name}-morphisms", 2)
    src = tuple(row[0] for row in mor_rows)
    tgt = tuple(row[1] for row in mor_rows)
    identities = tuple(doc.ints(f"{name}-identities", length=n_obj))
    m = len(src)
    table: list[list[Optional[int]]] = [[None] * m for _ in range(m)]
    if doc.has(f"{name}-compose"):
        for f, g, h in doc.rows(f"{name}-compose", 3):
            if not (0 <= f < m and 0 <= g < m and 0 <= h < m):
                raise ParseError(f"field '{name}-compose': morphism index out of range")
            table[f][g] = h
    for f in range(m):
        if 0 <= src[f] < n_obj and 0 <= tgt[f] < n_obj:
            table[identities[src[f]]][f] = f
            table[f][identities[tgt[f]]] = f
    try:
        cat = fc.FinCategory(n_obj, src, tgt, identities,
                             tuple(tuple(row) for row in table))
        fc.check_category(cat)
    except NonComposable as exc:
        raise ParseError(f"field '{name}-*': {exc}")
    return cat


def _functor(doc: _Doc, name: str, dom: fc.FinCategory, cod: fc.FinCategory) -> fc.FunctorData:
    obj_map = doc.ints(f"{name}-obj", length=dom.n_objects)
    mor_map = doc.ints(f"{name}-mor", length=dom.n_morphisms)
    if any(not 0 <= x < cod.n_objects for x in obj_map):
        raise ParseError(f"field '{name}-obj': object index out of range")
    if any(not 0 <= x < cod.n_morphisms for x in mor_map):
        raise ParseError(f"field '{name}-mor': morphism index out of range")
    try:
        return fc.FunctorData(dom, cod, tuple(obj_map), tuple(mor_map))
    except TypeMismatch as exc:
        raise ParseError(f"field '{name}-*': {exc}")


def parse_cat(doc: _Doc) -> CoCategoryData:
    q0 = _category(doc, "q0")
    q1 = _category(doc, "q1")
    l = _functor(doc, "l", q0, q1)
    r = _functor(doc, "r", q0, q1)
    i = _functor(doc, "i", q1, q0)
    double, triple = double_and_triple(fc.CAT, l, r)
    q = _functor(doc, "q", q1, double.apex)
    return CoCategoryData(q0, q1, l, r, i, q, double, triple)


def _category_block(name: str, c: fc.FinCategory) -> list[str]:
    lines = [f"{name}-objects: {c.n_objects}", f"{name}-morphisms:"]
    lines.extend(f"{c.src[f]} {c.tgt[f]}" for f in range(c.n_morphisms))
    lines.append(f"{name}-identities: {' '.join(map(str, c.identities))}")
    comp = [(f, g, c.table[f][g]) for f in range(c.n_morphisms)
            for g in range(c.n_morphisms)
            if c.table[f][g] is not None
            and not c.is_identity(f) and not c.is_identity(g)]
    if comp:
        lines.append(f"{name}-compose:")
        lines.extend(f"{f} {g} {h}" for f, g, h in comp)
    return lines


def write_cat(data: CoCategoryData) -> str:
    lines = ["category: cat"]
    lines.extend(_category_block("q0", data.q0))
    lines.extend(_category_block("q1", data.q1))
    for name, f in (("l", data.l), ("r", data.r), ("i", data.i), ("q", data.q)):
        lines.append(f"{name}-obj: {' '.join(map(str, f.obj_map))}")
        lines.append(f"{name}-mor: {' '.join(map(str, f.mor_map))}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Dispatch


_PARSERS = {
    "finset": parse_finset,
    "abgp": parse_abgp,
    "chain": parse_chain,
    "cat": parse_cat,
}

_WRITERS = {
    "finset": write_finset,
    "abgp": write_abgp,
    "chain": write_chain,
    "cat": write_cat,
}


def parse_document(text: str, expected_category: Optional[str] = None
                   ) -> tuple[str, CoCategoryData]:
    doc = _Doc(text)
    category = doc.word("category")
    if category not in _PARSERS:
        raise ParseError(f"field 'category': unknown host '{category}', "
                         f"expected one of {', '.join(CATEGORIES)}")
    if expected_category is not None and category != expected_category:
        raise ParseError(f"field 'category': document says '{category}', "
                         f"command asked for '{expected_category}'")
    return category, _PARSERS[category](doc)


def write_document(category: str, data: CoCategoryData) -> str:
    if category not in _WRITERS:
        raise ParseError(f"unknown host category '{category}'")
    return _WRITERS[category](data)
