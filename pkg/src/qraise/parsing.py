"""Text formats for formulas and QBFs.

Formula grammar (loosest binding first)::

    iff  := imp ('<->' iff)?          right-associative
    imp  := or  ('->' imp)?           right-associative
    or   := and ('|' and)*            left-associative
    and  := not ('&' not)*            left-associative
    not  := '!' not | atom
    atom := 'true' | 'false' | ident | '(' iff ')'

Identifiers match ``[A-Za-z_][A-Za-z0-9_+^-]*``, except that a ``-``
directly followed by ``>`` ends the identifier so that ``x->y`` lexes as an
implication. A QBF file is a sequence of ``exists v ... ;`` / ``forall v
... ;`` groups, outermost first, closed by ``: <formula>``. Line breaks are
insignificant; serialization is line oriented.

Names starting with ``_`` are reserved for generated gadget variables:
``parse_qbf`` rejects them in user input, while ``parse_formula`` accepts
them so that generated instance files round-trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError
from .formulas import And, Const, Formula, Iff, Implies, Not, Or, Var, variables
from .qbf import Qbf, Quantifier

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow><->|->)
  | (?P<punct>[()!&|;:])
  | (?P<ident>[A-Za-z_](?:[A-Za-z0-9_+^]|-(?!>))*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"true", "false", "exists", "forall"}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # 'ident', 'op', or 'end'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        column = pos - line_start + 1
        if m.lastgroup == "ws":
            chunk = m.group()
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex("\n") + 1
        elif m.lastgroup == "ident":
            yield _Token("ident", m.group(), line, column)
        else:
            yield _Token("op", m.group(), line, column)
        pos = m.end()
    yield _Token("end", "", line, len(text) - line_start + 1)


class _Parser:
    def __init__(self, text: str):
        self._tokens = list(_tokenize(text))
        self._pos = 0

    @property
    def current(self) -> _Token:
        return self._tokens[self._pos]

    def advance(self) -> _Token:
        tok = self._tokens[self._pos]
        if tok.kind != "end":
            self._pos += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.advance()
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            tok = self.current
            shown = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {shown!r}", tok.line, tok.column)

    def fail(self, message: str) -> ParseError:
        tok = self.current
        return ParseError(message, tok.line, tok.column)

    # formula levels, loosest first

    def formula(self) -> Formula:
        left = self.implication()
        if self.accept("<->"):
            return Iff(left, self.formula())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.accept("|"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.negation()
        while self.accept("&"):
            left = And(left, self.negation())
        return left

    def negation(self) -> Formula:
        if self.accept("!"):
            return Not(self.negation())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.current
        if tok.kind == "ident":
            self.advance()
            if tok.text == "true":
                return Const(True)
            if tok.text == "false":
                return Const(False)
            if tok.text in _KEYWORDS:
                raise ParseError(f"keyword {tok.text!r} is not a formula", tok.line, tok.column)
            return Var(tok.text)
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        shown = tok.text or "end of input"
        raise ParseError(f"expected a formula, found {shown!r}", tok.line, tok.column)


def parse_formula(text: str) -> Formula:
    """Parse a bare formula; trailing garbage is an error."""
    parser = _Parser(text)
    result = parser.formula()
    if parser.current.kind != "end":
        raise parser.fail(f"unexpected trailing input {parser.current.text!r}")
    return result


def parse_qbf(text: str) -> Qbf:
    """Parse a closed QBF in the quantifier-lines format."""
    parser = _Parser(text)
    prefix: list[tuple[Quantifier, str]] = []
    seen: set[str] = set()
    while parser.current.kind == "ident" and parser.current.text in ("exists", "forall"):
        quant = Quantifier.EXISTS if parser.current.text == "exists" else Quantifier.FORALL
        parser.advance()
        group: list[str] = []
        while parser.current.kind == "ident":
            tok = parser.advance()
            if tok.text in _KEYWORDS:
                raise ParseError(f"keyword {tok.text!r} cannot be quantified", tok.line, tok.column)
            if tok.text.startswith("_"):
                raise ParseError(
                    f"variable {tok.text!r} uses the reserved '_' prefix", tok.line, tok.column
                )
            if tok.text in seen:
                raise ParseError(f"duplicate prefix variable {tok.text!r}", tok.line, tok.column)
            seen.add(tok.text)
            group.append(tok.text)
        if not group:
            raise parser.fail("expected at least one variable after the quantifier")
        parser.expect(";")
        prefix.extend((quant, name) for name in group)
    parser.expect(":")
    matrix = parser.formula()
    if parser.current.kind != "end":
        raise parser.fail(f"unexpected trailing input {parser.current.text!r}")
    free = sorted(variables(matrix) - seen)
    if free:
        raise ParseError(f"free variable {free[0]}", parser.current.line, parser.current.column)
    return Qbf(tuple(prefix), matrix)


# --- serialization -----------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 6)


def serialize_formula(f: Formula) -> str:
    """Render with minimal parentheses; ``parse_formula`` inverts exactly."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        inner = serialize_formula(f.operand)
        if _prec(f.operand) < 5:
            inner = f"({inner})"
        return f"!{inner}"
    symbol, own = {And: ("&", 4), Or: ("|", 3), Implies: ("->", 2), Iff: ("<->", 1)}[type(f)]
    right_assoc = own <= 2
    left = serialize_formula(f.left)  # type: ignore[union-attr]
    right = serialize_formula(f.right)  # type: ignore[union-attr]
    if _prec(f.left) < own or (right_assoc and _prec(f.left) == own):  # type: ignore[union-attr]
        left = f"({left})"
    if _prec(f.right) < own or (not right_assoc and _prec(f.right) == own):  # type: ignore[union-attr]
        right = f"({right})"
    return f"{left} {symbol} {right}"


def serialize_qbf(q: Qbf) -> str:
    """Render in the line-oriented format, grouping runs of equal quantifiers."""
    lines: list[str] = []
    run: list[str] = []
    run_quant: Quantifier | None = None
    for quant, name in q.prefix:
        if quant is run_quant:
            run.append(name)
        else:
            if run:
                lines.append(f"{run_quant.value} {' '.join(run)};")  # type: ignore[union-attr]
            run = [name]
            run_quant = quant
    if run:
        lines.append(f"{run_quant.value} {' '.join(run)};")  # type: ignore[union-attr]
    lines.append(f": {serialize_formula(q.matrix)}")
    return "\n".join(lines)


def serialize_qbf_compact(q: Qbf) -> str:
    """One-line rendering, still parseable by ``parse_qbf``."""
    return serialize_qbf(q).replace("\n", " ")
