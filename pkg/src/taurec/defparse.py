"""Parser for the plain-text definition files read by the command line.

A definition file is a sequence of blocks::

    algebra "Lprime" {
      field rational;
      vertices 1 2;
      arrow a 1 -> 2;
    }

    morphism "phi" from "Ldouble" to "Lprime" {
      vertex 3 -> 1;
      arrow alpha -> a;
      arrow beta -> 0;
    }

    recollement "ex51" {
      left "Lprime";
      right "Ldouble";
      bimodule regular_twisted "phi";
    }

Paths are written in function order (``beta*alpha`` means "alpha then
beta"), matching how compositions are usually read; the parser reverses
them into travel order before handing them to the quiver layer.  Every
name-resolution or composability failure raises :class:`DefinitionError`
carrying the line and column of the offending token.
"""

from __future__ import annotations

import re
from fractions import Fraction

from taurec.algebra import (AlgebraMorphism, Bimodule, bimodule_from_morphism,
                            coerce_scalar, vec_add)
from taurec.errors import DefinitionError
from taurec.quiver import QuiverPresentation, compile_quiver_algebra

__all__ = [
    "AlgebraDef",
    "MorphismDef",
    "RecollementDef",
    "DefinitionFile",
    "parse_definition",
]


# --------------------------------------------------------------------------
# tokens


_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<string>"[^"\n]*")
      | (?P<arrowop>->)
      | (?P<word>[A-Za-z0-9_]+)
      | (?P<punct>[{};*+/-])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind          # "string" | "word" | "punct" | "eof"
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"_Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DefinitionError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "string":
            tokens.append(_Token("string", chunk[1:-1], line, col))
        elif kind == "word":
            tokens.append(_Token("word", chunk, line, col))
        elif kind in ("punct", "arrowop"):
            tokens.append(_Token("punct", chunk, line, col))
        # whitespace and comments are dropped, but still advance line/col
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text if tok.kind != "eof" else "end of input"
            raise DefinitionError(f"expected {want!r}, found {got!r}",
                                  tok.line, tok.col)
        return self.next()

    def accept(self, kind: str, text: str | None = None):
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.next()
        return None


# --------------------------------------------------------------------------
# parsed records


class AlgebraDef:
    """A named algebra: the presentation and its compiled form."""

    def __init__(self, name, presentation, algebra):
        self.name = name
        self.presentation = presentation
        self.algebra = algebra


class MorphismDef:
    """A named algebra morphism with the names of its endpoints."""

    def __init__(self, name, source_name, target_name, morphism):
        self.name = name
        self.source_name = source_name
        self.target_name = target_name
        self.morphism = morphism


class RecollementDef:
    """A named recollement datum: corner algebras plus the gluing bimodule.

    ``kind`` is ``"regular_twisted"`` (the left algebra with right action
    twisted through a morphism) or ``"zero"``.
    """

    def __init__(self, name, left_name, right_name, kind, morphism_name,
                 bimodule):
        self.name = name
        self.left_name = left_name
        self.right_name = right_name
        self.kind = kind
        self.morphism_name = morphism_name
        self.bimodule = bimodule


class DefinitionFile:
    """All named objects of one definition file, in declaration order."""

    def __init__(self):
        self.algebras: dict[str, AlgebraDef] = {}
        self.morphisms: dict[str, MorphismDef] = {}
        self.recollements: dict[str, RecollementDef] = {}

    def algebra(self, name: str):
        try:
            return self.algebras[name].algebra
        except KeyError:
            raise DefinitionError(f"no algebra named {name!r}") from None

    def recollement(self, name: str) -> RecollementDef:
        try:
            return self.recollements[name]
        except KeyError:
            raise DefinitionError(f"no recollement named {name!r}") from None


# --------------------------------------------------------------------------
# block parsers


def _parse_coefficient_prefix(stream: _Stream):
    """An optional ``c*`` prefix: integer or integer/integer, then ``*``.

    Returns the :class:`Fraction` and consumes the prefix, or returns None
    and leaves the stream untouched (the term starts with an arrow).
    """
    tok = stream.peek()
    if tok.kind != "word" or not tok.text.isdigit():
        return None
    save = stream.pos
    value = Fraction(int(stream.next().text))
    if stream.accept("punct", "/"):
        den = stream.peek()
        if den.kind != "word" or not den.text.isdigit() or int(den.text) == 0:
            raise DefinitionError("expected a nonzero integer denominator",
                                  den.line, den.col)
        value /= int(stream.next().text)
    if stream.accept("punct", "*") is None:
        stream.pos = save
        return None
    return value


def _parse_star_chain(stream: _Stream):
    """Words joined by ``*``, e.g. ``beta*alpha``.  Returns the tokens."""
    first = stream.expect("word")
    chain = [first]
    while stream.accept("punct", "*"):
        chain.append(stream.expect("word"))
    return chain


def _check_function_order_path(chain, arrow_map):
    """Validate a function-order arrow chain; return travel-order labels.

    ``arrow_map`` maps label -> (source, target).  Raises on unknown arrows
    and on products that do not compose.
    """
    for tok in chain:
        if tok.text not in arrow_map:
            raise DefinitionError(f"unknown arrow {tok.text!r}",
                                  tok.line, tok.col)
    travel = list(reversed(chain))
    for prev, cur in zip(travel, travel[1:]):
        if arrow_map[prev.text][1] != arrow_map[cur.text][0]:
            raise DefinitionError(
                f"non-composable product: {cur.text!r} does not start at "
                f"the target of {prev.text!r}", cur.line, cur.col)
    return tuple(tok.text for tok in travel)


def _parse_algebra_block(stream: _Stream, doc: DefinitionFile):
    name_tok = stream.expect("string")
    if name_tok.text in doc.algebras:
        raise DefinitionError(f"duplicate algebra name {name_tok.text!r}",
                              name_tok.line, name_tok.col)
    stream.expect("punct", "{")
    p = 0
    vertices: list[str] = []
    arrows = []
    arrow_map: dict[str, tuple[str, str]] = {}
    relations = []
    while not stream.accept("punct", "}"):
        key = stream.expect("word")
        if key.text == "field":
            spec = stream.expect("word")
            if spec.text == "rational":
                p = 0
            elif spec.text == "fp":
                prime = stream.expect("word")
                if not prime.text.isdigit() or int(prime.text) < 2:
                    raise DefinitionError("expected a prime after 'fp'",
                                          prime.line, prime.col)
                p = int(prime.text)
            else:
                raise DefinitionError(
                    f"unknown field {spec.text!r}; use 'rational' or 'fp <p>'",
                    spec.line, spec.col)
        elif key.text == "vertices":
            while stream.peek().kind == "word":
                vertices.append(stream.next().text)
            if not vertices:
                raise DefinitionError("empty vertex list", key.line, key.col)
        elif key.text == "arrow":
            label = stream.expect("word")
            src = stream.expect("word")
            stream.expect("punct", "->")
            tgt = stream.expect("word")
            for v in (src, tgt):
                if v.text not in vertices:
                    raise DefinitionError(f"unknown vertex {v.text!r}",
                                          v.line, v.col)
            if label.text in arrow_map:
                raise DefinitionError(f"duplicate arrow {label.text!r}",
                                      label.line, label.col)
            arrows.append((label.text, src.text, tgt.text))
            arrow_map[label.text] = (src.text, tgt.text)
        elif key.text == "relation":
            terms = []
            endpoints = None
            sign = Fraction(1)
            while True:
                coeff = _parse_coefficient_prefix(stream)
                if coeff is None:
                    coeff = Fraction(1)
                chain = _parse_star_chain(stream)
                travel = _check_function_order_path(chain, arrow_map)
                span = (arrow_map[travel[0]][0], arrow_map[travel[-1]][1])
                if endpoints is None:
                    endpoints = span
                elif endpoints != span:
                    raise DefinitionError(
                        "relation terms are not parallel paths",
                        chain[0].line, chain[0].col)
                if len(travel) < 2:
                    raise DefinitionError(
                        "relation terms must be paths of length >= 2",
                        chain[0].line, chain[0].col)
                terms.append((sign * coeff, travel))
                if stream.accept("punct", "+"):
                    sign = Fraction(1)
                elif stream.accept("punct", "-"):
                    sign = Fraction(-1)
                else:
                    break
            relations.append((key, terms))
        else:
            raise DefinitionError(
                f"unknown entry {key.text!r} in algebra block",
                key.line, key.col)
        stream.expect("punct", ";")
    try:
        pres = QuiverPresentation(
            vertices, arrows,
            relations=[list(terms) for _, terms in relations],
            p=p, name=name_tok.text)
        algebra = compile_quiver_algebra(pres)
    except DefinitionError:
        raise
    except Exception as exc:
        raise DefinitionError(f"algebra {name_tok.text!r} rejected: {exc}",
                              name_tok.line, name_tok.col) from None
    doc.algebras[name_tok.text] = AlgebraDef(name_tok.text, pres, algebra)


def _resolve_path_vector(alg, path_tokens):
    """Basis coordinates of a product of arrows given in function order."""
    vec = None
    for tok in reversed(path_tokens):      # travel order
        try:
            idx = alg.basis_labels.index(tok.text)
        except ValueError:
            raise DefinitionError(
                f"unknown arrow {tok.text!r} in the target algebra",
                tok.line, tok.col) from None
        step = alg.basis_vector(idx)
        vec = step if vec is None else alg.mult_vec(step, vec)
    return vec


def _parse_arrow_image(stream: _Stream, target_alg):
    """The right-hand side of ``arrow a -> ...``: 0 or a path combination."""
    if stream.peek().text == "0":
        stream.next()
        return None
    total = None
    sign = Fraction(1)
    while True:
        coeff = _parse_coefficient_prefix(stream)
        if coeff is None:
            coeff = Fraction(1)
        chain = _parse_star_chain(stream)
        vec = _resolve_path_vector(target_alg, chain)
        c = coerce_scalar(sign * coeff, target_alg.p)
        term = [c * x if target_alg.p == 0 else (c * x) % target_alg.p
                for x in vec]
        total = term if total is None else vec_add(total, term, target_alg.p)
        if stream.accept("punct", "+"):
            sign = Fraction(1)
        elif stream.accept("punct", "-"):
            sign = Fraction(-1)
        else:
            break
    return total


def _parse_morphism_block(stream: _Stream, doc: DefinitionFile):
    name_tok = stream.expect("string")
    if name_tok.text in doc.morphisms:
        raise DefinitionError(f"duplicate morphism name {name_tok.text!r}",
                              name_tok.line, name_tok.col)
    stream.expect("word", "from")
    src_tok = stream.expect("string")
    stream.expect("word", "to")
    tgt_tok = stream.expect("string")
    for tok in (src_tok, tgt_tok):
        if tok.text not in doc.algebras:
            raise DefinitionError(f"no algebra named {tok.text!r}",
                                  tok.line, tok.col)
    source = doc.algebras[src_tok.text]
    target = doc.algebras[tgt_tok.text]
    vertex_images: dict[str, str | None] = {}
    arrow_images: dict[str, list | None] = {}
    stream.expect("punct", "{")
    while not stream.accept("punct", "}"):
        key = stream.expect("word")
        if key.text == "vertex":
            v = stream.expect("word")
            if v.text not in source.presentation.vertices:
                raise DefinitionError(f"unknown vertex {v.text!r}",
                                      v.line, v.col)
            stream.expect("punct", "->")
            w = stream.expect("word")
            if w.text == "0":
                vertex_images[v.text] = None
            elif w.text in target.presentation.vertices:
                vertex_images[v.text] = w.text
            else:
                raise DefinitionError(
                    f"unknown vertex {w.text!r} in the target algebra",
                    w.line, w.col)
        elif key.text == "arrow":
            a = stream.expect("word")
            if all(arr.label != a.text for arr in source.presentation.arrows):
                raise DefinitionError(f"unknown arrow {a.text!r}",
                                      a.line, a.col)
            stream.expect("punct", "->")
            arrow_images[a.text] = _parse_arrow_image(stream, target.algebra)
        else:
            raise DefinitionError(
                f"unknown entry {key.text!r} in morphism block",
                key.line, key.col)
        stream.expect("punct", ";")
    missing = [v for v in source.presentation.vertices if v not in vertex_images]
    if missing:
        raise DefinitionError(
            f"morphism does not assign vertex {missing[0]!r}",
            name_tok.line, name_tok.col)
    try:
        phi = AlgebraMorphism.from_generator_images(
            source.algebra, target.algebra, vertex_images, arrow_images)
    except Exception as exc:
        raise DefinitionError(f"morphism rejected: {exc}",
                              name_tok.line, name_tok.col) from None
    doc.morphisms[name_tok.text] = MorphismDef(
        name_tok.text, src_tok.text, tgt_tok.text, phi)


def _parse_recollement_block(stream: _Stream, doc: DefinitionFile):
    name_tok = stream.expect("string")
    if name_tok.text in doc.recollements:
        raise DefinitionError(f"duplicate recollement name {name_tok.text!r}",
                              name_tok.line, name_tok.col)
    stream.expect("punct", "{")
    left_name = right_name = None
    kind = None
    morphism_name = None
    morphism_tok = None
    while not stream.accept("punct", "}"):
        key = stream.expect("word")
        if key.text == "left":
            tok = stream.expect("string")
            left_name = tok.text
            if left_name not in doc.algebras:
                raise DefinitionError(f"no algebra named {left_name!r}",
                                      tok.line, tok.col)
        elif key.text == "right":
            tok = stream.expect("string")
            right_name = tok.text
            if right_name not in doc.algebras:
                raise DefinitionError(f"no algebra named {right_name!r}",
                                      tok.line, tok.col)
        elif key.text == "bimodule":
            spec = stream.expect("word")
            if spec.text == "regular_twisted":
                kind = "regular_twisted"
                morphism_tok = stream.expect("string")
                morphism_name = morphism_tok.text
                if morphism_name not in doc.morphisms:
                    raise DefinitionError(
                        f"no morphism named {morphism_name!r}",
                        morphism_tok.line, morphism_tok.col)
            elif spec.text == "zero":
                kind = "zero"
            else:
                raise DefinitionError(
                    f"unknown bimodule kind {spec.text!r}; "
                    "use 'regular_twisted \"phi\"' or 'zero'",
                    spec.line, spec.col)
        else:
            raise DefinitionError(
                f"unknown entry {key.text!r} in recollement block",
                key.line, key.col)
        stream.expect("punct", ";")
    for field, value in (("left", left_name), ("right", right_name),
                         ("bimodule", kind)):
        if value is None:
            raise DefinitionError(
                f"recollement block is missing its {field!r} entry",
                name_tok.line, name_tok.col)
    left = doc.algebras[left_name].algebra
    right = doc.algebras[right_name].algebra
    if kind == "zero":
        bimodule = Bimodule.zero(left, right)
    else:
        mdef = doc.morphisms[morphism_name]
        if mdef.source_name != right_name or mdef.target_name != left_name:
            raise DefinitionError(
                f"morphism {morphism_name!r} must map the right algebra "
                f"{right_name!r} to the left algebra {left_name!r}",
                morphism_tok.line, morphism_tok.col)
        bimodule = bimodule_from_morphism(left, right, mdef.morphism)
    doc.recollements[name_tok.text] = RecollementDef(
        name_tok.text, left_name, right_name, kind, morphism_name, bimodule)


# --------------------------------------------------------------------------
# entry point


def parse_definition(text: str) -> DefinitionFile:
    """Parse a definition file into compiled algebras, morphisms, and
    recollement data.  An empty file yields an empty document."""
    doc = DefinitionFile()
    stream = _Stream(_tokenize(text))
    while stream.peek().kind != "eof":
        head = stream.expect("word")
        if head.text == "algebra":
            _parse_algebra_block(stream, doc)
        elif head.text == "morphism":
            _parse_morphism_block(stream, doc)
        elif head.text == "recollement":
            _parse_recollement_block(stream, doc)
        else:
            raise DefinitionError(
                f"expected 'algebra', 'morphism', or 'recollement', "
                f"found {head.text!r}", head.line, head.col)
    return doc
