"""Line protocol for update streams, query files and delta output.

Stream line::

    <time> TAB (ins|del) TAB <term> TAB <term> TAB <term>

Terms are ``<iri>``, ``"literal"`` (``\\"`` ``\\\\`` ``\\n`` ``\\r`` ``\\t``
escapes) or, in query files only, ``?Name``. Any run of spaces or tabs is
accepted as a separator on input; output always uses single tabs.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import (
    DuplicatePattern,
    InvalidQuery,
    NonMonotonicTime,
    OutputMismatch,
    ParseError,
    VariablePredicate,
)
from .model import (
    Answer,
    DataTriple,
    DeltaAnswer,
    Op,
    Query,
    Term,
    TermKind,
    TriplePattern,
    UpdateMessage,
    first_occurrence_variables,
    iri,
    literal,
    var,
)

_TERM = re.compile(r'<([^<>\s]+)>|"((?:[^"\\\n\r]|\\.)*)"|\?(\w+)')
_SEP = re.compile(r"[ \t]+")
_HEAD = re.compile(r"(\d+)[ \t]+(ins|del)(?=[ \t])")
_UNESCAPE = {'"': '"', "\\": "\\", "n": "\n", "r": "\r", "t": "\t"}
_ESC = re.compile(r"\\(.)")


def _unescape(body: str, line_no: int) -> str:
    def sub(m):
        c = m.group(1)
        if c not in _UNESCAPE:
            raise ParseError(line_no, f"unknown escape \\{c}")
        return _UNESCAPE[c]

    return _ESC.sub(sub, body)


def format_term(t: Term) -> str:
    if t.kind is TermKind.IRI:
        return f"<{t.lexical}>"
    if t.kind is TermKind.VARIABLE:
        return f"?{t.lexical}"
    body = (t.lexical.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r"))
    return f'"{body}"'


def _scan_terms(line: str, pos: int, line_no: int, count: int = 3) -> List[Term]:
    terms = []
    for _ in range(count):
        m = _SEP.match(line, pos)
        if m is None:
            raise ParseError(line_no, f"expected separator at column {pos + 1}")
        pos = m.end()
        m = _TERM.match(line, pos)
        if m is None:
            raise ParseError(line_no, f"expected a term at column {pos + 1}")
        pos = m.end()
        if m.group(1) is not None:
            terms.append(iri(m.group(1)))
        elif m.group(2) is not None:
            terms.append(literal(_unescape(m.group(2), line_no)))
        else:
            terms.append(var(m.group(3)))
    if line[pos:].strip(" \t"):
        raise ParseError(line_no, f"trailing text at column {pos + 1}")
    return terms


def parse_term(text: str) -> Term:
    m = _TERM.fullmatch(text)
    if m is None:
        raise ParseError(0, f"not a term: {text!r}")
    if m.group(1) is not None:
        return iri(m.group(1))
    if m.group(2) is not None:
        return literal(_unescape(m.group(2), 0))
    return var(m.group(3))


def _content_lines(lines: Iterable[str]) -> Iterator[Tuple[int, str]]:
    for no, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield no, line


def parse_update(line: str, line_no: int = 1) -> UpdateMessage:
    m = _HEAD.match(line)
    if m is None:
        raise ParseError(line_no, "expected '<time> <ins|del>' at start of line")
    s, p, o = _scan_terms(line, m.end(), line_no)
    if s.kind is not TermKind.IRI:
        raise ParseError(line_no, "subject must be an IRI")
    if p.kind is not TermKind.IRI:
        raise ParseError(line_no, "predicate must be an IRI")
    if o.kind is TermKind.VARIABLE:
        raise ParseError(line_no, "variables are not allowed in update streams")
    return UpdateMessage(int(m.group(1)), Op(m.group(2)), DataTriple(s, p, o))


def iter_stream(lines: Iterable[str]) -> Iterator[UpdateMessage]:
    """Lazily parse update lines, enforcing strictly increasing timestamps."""
    last: Optional[int] = None
    for no, line in _content_lines(lines):
        u = parse_update(line, no)
        if last is not None and u.time <= last:
            raise NonMonotonicTime(no, f"timestamp {u.time} does not exceed {last}")
        last = u.time
        yield u


def parse_stream(lines: Iterable[str]) -> List[UpdateMessage]:
    return list(iter_stream(lines))


def parse_query(lines: Iterable[str]) -> Query:
    output: Optional[Tuple[Term, ...]] = None
    output_line = 0
    patterns: List[TriplePattern] = []
    seen = set()
    for no, line in _content_lines(lines):
        stripped = line.strip()
        if stripped.startswith("OUTPUT") and (len(stripped) == 6 or stripped[6] in " \t"):
            if output is not None or patterns:
                raise ParseError(no, "OUTPUT must be the first line of the query")
            names = stripped[6:].split()
            if not all(re.fullmatch(r"\?\w+", n) for n in names):
                raise ParseError(no, "OUTPUT lists ?variables separated by whitespace")
            output = tuple(var(n) for n in names)
            output_line = no
            continue
        s, p, o = _scan_terms("\t" + line.lstrip(" \t"), 0, no)
        if p.is_variable:
            raise VariablePredicate(no)
        if p.kind is not TermKind.IRI:
            raise ParseError(no, "predicate must be an IRI")
        if s.kind is TermKind.LITERAL:
            raise ParseError(no, "subject must not be a literal")
        t = TriplePattern(s, p, o)
        if t in seen:
            raise DuplicatePattern(no)
        seen.add(t)
        patterns.append(t)
    if not patterns:
        raise ParseError(0, "query has no triple patterns")
    if output is not None:
        variables = first_occurrence_variables(patterns)
        if len(set(output)) != len(output) or set(output) != set(variables):
            raise OutputMismatch(output_line)
    try:
        return Query(tuple(patterns), output)
    except InvalidQuery as exc:  # pragma: no cover - guarded above
        raise ParseError(0, str(exc)) from exc


def format_answer(a: Answer) -> str:
    return "\t".join(format_term(t) for t in a)


def write_delta(d: DeltaAnswer) -> str:
    if d.answer:
        return f"{d.time}\t{d.sign.value}\t{format_answer(d.answer)}\n"
    return f"{d.time}\t{d.sign.value}\n"


def write_update(u: UpdateMessage) -> str:
    t = u.triple
    return f"{u.time}\t{u.op.value}\t{format_term(t.s)}\t{format_term(t.p)}\t{format_term(t.o)}\n"


def write_query(q: Query) -> str:
    lines = []
    if q.output:
        lines.append("OUTPUT " + " ".join(format_term(v) for v in q.output))
    for t in q.patterns:
        lines.append("\t".join(format_term(x) for x in t))
    return "\n".join(lines) + "\n"
