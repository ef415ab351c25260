"""Reader and writer for polynomial-map files.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    field Q            |  field F<p>
    vars x, y, ...
    map: <expr>, <expr>, ...

Expressions use ``+ - * ^``, parentheses, identifiers and rational
literals ``a`` or ``a/b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import EvenCharacteristicError, FieldError, LocalDegreeError
from .field import Field, is_prime
from .poly import Poly, PolyMap, PolyRing


class MapParseError(LocalDegreeError, ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class UnknownVariableError(MapParseError):
    pass


class ArityMismatchError(MapParseError):
    pass


class FieldSpecError(MapParseError, FieldError):
    pass


class EvenFieldSpecError(FieldSpecError, EvenCharacteristicError):
    pass


@dataclass(frozen=True)
class MapDocument:
    field: Field
    variables: tuple
    components: tuple

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.field, len(self.variables), self.variables)

    def to_map(self) -> PolyMap:
        if len(self.components) != len(self.variables):
            raise ArityMismatchError(
                f"{len(self.components)} components for {len(self.variables)} variables")
        return PolyMap(self.components)

    def single(self) -> Poly:
        if len(self.components) != 1:
            raise ArityMismatchError(f"expected one polynomial, found {len(self.components)}")
        return self.components[0]

    def render(self) -> str:
        return render_map(self.field, self.variables, self.components)


def render_map(field: Field, variables, components) -> str:
    return (f"field {field}\n"
            f"vars {', '.join(variables)}\n"
            f"map: {', '.join(str(c) for c in components)}\n")


def document_from_map(f: PolyMap) -> MapDocument:
    return MapDocument(f.field, tuple(f.ring.names), tuple(f.components))


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/(),]))")


def _tokenize(text: str, line: int) -> list[tuple]:
    """Tokens ``(kind, value, column, line)`` of one physical line."""
    out = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise MapParseError(f"unexpected character {text[bad]!r}", line, bad + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1, line))
        pos = m.end()
    return out


class _Tokens:
    def __init__(self, tokens: list[tuple], end: tuple):
        self.tokens = tokens
        self.end = end  # (column, line) reported at end of input
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return (None, None) + self.end

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, col, line = self.take()
        if v != value:
            raise MapParseError(f"expected {value!r}, found {v or 'end of input'!r}", line, col)


class _ExprParser:
    def __init__(self, tokens: _Tokens, ring: PolyRing, names: dict):
        self.lx, self.ring, self.names = tokens, ring, names

    def expr(self) -> Poly:
        v = self.lx.peek()[1]
        if v in ("+", "-"):
            self.lx.take()
            acc = self.term()
            if v == "-":
                acc = -acc
        else:
            acc = self.term()
        while self.lx.peek()[1] in ("+", "-"):
            op = self.lx.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.lx.peek()[1] == "*":
            self.lx.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Poly:
        v = self.lx.peek()[1]
        if v in ("+", "-"):
            self.lx.take()
            inner = self.unary()
            return -inner if v == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.lx.peek()[1] == "^":
            self.lx.take()
            kind, v, col, line = self.lx.take()
            if kind != "num":
                raise MapParseError("exponent must be a nonnegative integer", line, col)
            base = base ** int(v)
        return base

    def atom(self) -> Poly:
        kind, v, col, line = self.lx.take()
        if kind == "num":
            value = Fraction(int(v))
            if self.lx.peek()[1] == "/":
                self.lx.take()
                k2, v2, c2, l2 = self.lx.take()
                if k2 != "num":
                    raise MapParseError("denominator must be an integer literal", l2, c2)
                if int(v2) == 0:
                    raise MapParseError("zero denominator", l2, c2)
                value = Fraction(int(v), int(v2))
            try:
                return self.ring.constant(self.ring.field(value))
            except ZeroDivisionError as exc:
                raise MapParseError(str(exc), line, col) from exc
        if kind == "ident":
            if v not in self.names:
                raise UnknownVariableError(f"unknown variable {v!r}", line, col)
            return self.ring.gen(self.names[v])
        if v == "(":
            inner = self.expr()
            self.lx.expect(")")
            return inner
        raise MapParseError(f"unexpected {v or 'end of input'!r}", line, col)


def parse_field(spec: str, line: int = 0, col: int = 0) -> Field:
    s = spec.strip()
    if s in ("Q", "QQ"):
        return Field(0)
    m = re.fullmatch(r"(?:F|GF)\s*(\d+)", s)
    if not m:
        raise FieldSpecError(f"unknown field {s!r} (use Q or F<p>)", line, col)
    p = int(m.group(1))
    if p % 2 == 0:
        raise EvenFieldSpecError(f"F{p}: even order (characteristic 2) is not supported", line, col)
    if not is_prime(p):
        raise FieldSpecError(f"F{p}: order must be an odd prime", line, col)
    return Field(p)


def _logical_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield no, body


def parse_map_file(text: str) -> MapDocument:
    lines = list(_logical_lines(text))
    if not lines:
        raise MapParseError("empty input", 1, 1)
    field = None
    variables = None
    map_text = None
    for no, body in lines:
        stripped = body.lstrip()
        col = len(body) - len(stripped) + 1
        if map_text is not None:
            map_text.append((no, body))
            continue
        if stripped.startswith("field"):
            field = parse_field(stripped[5:], no, col + 5)
        elif stripped.startswith("vars"):
            if field is None:
                raise MapParseError("'vars' must follow the 'field' line", no, col)
            names = [v.strip() for v in stripped[4:].split(",")]
            for v in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                    raise MapParseError(f"invalid variable name {v!r}", no, col)
            if len(set(names)) != len(names):
                raise MapParseError("duplicate variable name", no, col)
            variables = tuple(names)
        elif stripped.startswith("map"):
            if variables is None:
                raise MapParseError("'map:' must follow the 'vars' line", no, col)
            rest = stripped[3:].lstrip()
            if not rest.startswith(":"):
                raise MapParseError("expected ':' after 'map'", no, col + 3)
            offset = len(body) - len(rest) + 1
            map_text = [(no, " " * offset + rest[1:])]
        else:
            raise MapParseError(f"unexpected line starting with {stripped.split()[0]!r}", no, col)
    if field is None:
        raise MapParseError("missing 'field' line", 1, 1)
    if variables is None:
        raise MapParseError("missing 'vars' line", 1, 1)
    if map_text is None:
        raise MapParseError("missing 'map:' line", lines[-1][0], 1)
    ring = PolyRing(field, len(variables), variables)
    names = {v: i for i, v in enumerate(variables)}
    tokens = []
    for no, body in map_text:
        tokens.extend(_tokenize(body, no))
    last_no, last_body = map_text[-1]
    stream = _Tokens(tokens, (len(last_body.rstrip()) + 1, last_no))
    parser = _ExprParser(stream, ring, names)
    comps = []
    while True:
        kind, v, col, line = stream.peek()
        if kind is None or v == ",":
            raise MapParseError("expected an expression", line, col)
        comps.append(parser.expr())
        kind, v, col, line = stream.peek()
        if v == ",":
            stream.take()
            continue
        if kind is None:
            break
        raise MapParseError(f"unexpected {v!r}", line, col)
    return MapDocument(field, variables, tuple(comps))
