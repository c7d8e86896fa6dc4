"""Reader for the DOT digraph subset emitted by common CFG extractors.

Supported: `digraph name { ... }` with node statements, edge statements
(including chains `a -> b -> c`), attribute lists, quoted identifiers,
ports (`a:s0`), comments, and `node`/`edge`/`graph` default statements.
Only the `label` attribute is kept; everything else is skipped so that
LLVM `-dot-cfg` output parses. Subgraphs and HTML labels are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CfgGraph, Edge, ParseError

_KEYWORDS = {"digraph", "graph", "subgraph", "node", "edge", "strict"}
_SYMBOLS = {"{", "}", "[", "]", ";", ",", "=", ":"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "id", "sym", "arrow", "eof"
    value: str
    line: int
    col: int

    def pos(self) -> str:
        return f"line {self.line}, column {self.col}"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if ch == "#" or text.startswith("//", i):
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                raise ParseError(f"unterminated comment at line {line}, column {col}")
            advance(end + 2 - i)
            continue
        if text.startswith("->", i):
            tokens.append(_Token("arrow", "->", line, col))
            advance(2)
            continue
        if text.startswith("--", i):
            raise ParseError(f"undirected edge '--' at line {line}, column {col}: only digraphs are supported")
        if ch in _SYMBOLS:
            tokens.append(_Token("sym", ch, line, col))
            advance(1)
            continue
        if ch == '"':
            start_line, start_col = line, col
            advance(1)
            out: list[str] = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    nxt = text[i + 1]
                    if nxt == '"':
                        out.append('"')
                    elif nxt == "\\":
                        out.append("\\")
                    elif nxt == "n":
                        out.append("\n")
                    elif nxt == "\n":
                        pass  # line continuation
                    else:
                        out.append("\\" + nxt)
                    advance(2)
                    continue
                out.append(text[i])
                advance(1)
            if i >= n:
                raise ParseError(f"unterminated string at line {start_line}, column {start_col}")
            advance(1)
            tokens.append(_Token("id", "".join(out), start_line, start_col))
            continue
        if ch.isalnum() or ch in "_.-":
            start_line, start_col = line, col
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_.-"):
                j += 1
            tokens.append(_Token("id", text[i:j], start_line, start_col))
            advance(j - i)
            continue
        raise ParseError(f"unexpected character {ch!r} at line {line}, column {col}")
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0
        self.nodes: list[str] = []
        self.node_set: set[str] = set()
        self.edges: list[Edge] = []
        self.labels: dict[str, str] = {}

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect_sym(self, value: str) -> _Token:
        tok = self.next()
        if tok.kind != "sym" or tok.value != value:
            raise ParseError(f"expected {value!r} but found {tok.value!r} at {tok.pos()}")
        return tok

    def declare(self, name: str) -> None:
        if name not in self.node_set:
            self.node_set.add(name)
            self.nodes.append(name)

    def parse(self) -> None:
        tok = self.next()
        if tok.kind == "id" and tok.value == "strict":
            tok = self.next()
        if tok.kind != "id" or tok.value != "digraph":
            if tok.kind == "id" and tok.value == "graph":
                raise ParseError(f"undirected 'graph' at {tok.pos()}: only digraphs are supported")
            raise ParseError(f"expected 'digraph' but found {tok.value!r} at {tok.pos()}")
        if self.peek().kind == "id":
            self.next()  # graph name
        self.expect_sym("{")
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.value == "}":
                self.next()
                break
            if tok.kind == "eof":
                raise ParseError(f"unexpected end of input at {tok.pos()}: missing '}}'")
            self.statement()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing content {tok.value!r} at {tok.pos()}")

    def statement(self) -> None:
        tok = self.next()
        if tok.kind == "sym" and tok.value == ";":
            return
        if tok.kind != "id":
            raise ParseError(f"expected a statement but found {tok.value!r} at {tok.pos()}")
        if tok.value == "subgraph":
            raise ParseError(f"'subgraph' at {tok.pos()} is not supported")
        if tok.value in ("node", "edge", "graph") and self._at_attr_list():
            self.skip_attr_lists()
            self.opt_semicolon()
            return
        # Either `id = value`, a node statement, or an edge chain.
        if self._at_sym("="):
            self.next()
            val = self.next()
            if val.kind != "id":
                raise ParseError(f"expected a value after '=' at {val.pos()}")
            self.opt_semicolon()
            return
        chain = [tok.value]
        self.skip_port()
        while self._at_arrow():
            self.next()
            nxt = self.next()
            if nxt.kind != "id":
                raise ParseError(f"expected a node id after '->' at {nxt.pos()}")
            chain.append(nxt.value)
            self.skip_port()
        attrs = self.collect_attr_lists()
        for name in chain:
            self.declare(name)
        if len(chain) == 1:
            if "label" in attrs:
                self.labels[chain[0]] = attrs["label"]
        else:
            for a, b in zip(chain, chain[1:]):
                self.edges.append((a, b))
        self.opt_semicolon()

    def _at_sym(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "sym" and tok.value == value

    def _at_arrow(self) -> bool:
        return self.peek().kind == "arrow"

    def _at_attr_list(self) -> bool:
        return self._at_sym("[")

    def skip_port(self) -> None:
        while self._at_sym(":"):
            self.next()
            tok = self.next()
            if tok.kind != "id":
                raise ParseError(f"expected a port name after ':' at {tok.pos()}")

    def collect_attr_lists(self) -> dict[str, str]:
        attrs: dict[str, str] = {}
        while self._at_attr_list():
            self.next()
            while not self._at_sym("]"):
                key = self.next()
                if key.kind != "id":
                    raise ParseError(f"expected an attribute name at {key.pos()}")
                self.expect_sym("=")
                val = self.next()
                if val.kind != "id":
                    raise ParseError(f"expected an attribute value at {val.pos()}")
                attrs.setdefault(key.value, val.value)
                if self._at_sym(",") or self._at_sym(";"):
                    self.next()
            self.expect_sym("]")
        return attrs

    def skip_attr_lists(self) -> None:
        self.collect_attr_lists()

    def opt_semicolon(self) -> None:
        if self._at_sym(";"):
            self.next()


def parse_dot(text: str, entry: str | None = None) -> CfgGraph:
    """Parse DOT text into a CfgGraph.

    The entry is the unique node with in-degree 0 (self-loops do not count
    as incoming), unless an explicit ``entry`` override names it. Zero or
    several candidates without an override is an error that lists them.
    """
    parser = _Parser(_tokenize(text))
    parser.parse()
    if not parser.nodes:
        raise ParseError("the digraph declares no nodes")
    if entry is not None:
        if entry not in parser.node_set:
            raise ParseError(f"entry override {entry!r} names an unknown node")
        chosen = entry
    else:
        has_in: set[str] = {dst for src, dst in parser.edges if src != dst}
        candidates = [n for n in parser.nodes if n not in has_in]
        if len(candidates) != 1:
            listing = ", ".join(candidates) if candidates else "(none)"
            raise ParseError(
                f"cannot determine the entry node: {len(candidates)} candidates "
                f"with in-degree 0 [{listing}]; pass an explicit entry"
            )
        chosen = candidates[0]
    return CfgGraph(nodes=parser.nodes, edges=parser.edges, entry=chosen, labels=parser.labels)
