"""Terms, triples, queries, update messages and the two mapping primitives.

Everything here is an immutable value except :class:`Graph`, which is a thin
mutable wrapper around a set of data triples with a pure :func:`apply_update`
companion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from .errors import AssumptionViolation, InvalidQuery


class TermKind(Enum):
    IRI = "iri"
    LITERAL = "literal"
    VARIABLE = "variable"


_KIND_RANK = {TermKind.IRI: 0, TermKind.LITERAL: 1, TermKind.VARIABLE: 2}
_VAR_NAME = re.compile(r"^\w+$")
_IRI_FORBIDDEN = re.compile(r"[<>\s]")


@dataclass(frozen=True, slots=True)
class Term:
    kind: TermKind
    lexical: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind is TermKind.VARIABLE and not _VAR_NAME.match(self.lexical):
            raise ValueError(f"bad variable name {self.lexical!r}")
        if self.kind is TermKind.IRI and (not self.lexical or _IRI_FORBIDDEN.search(self.lexical)):
            raise ValueError(f"bad IRI {self.lexical!r}")
        object.__setattr__(self, "_hash", hash((self.kind.value, self.lexical)))

    def __hash__(self):
        return self._hash

    @property
    def is_variable(self) -> bool:
        return self.kind is TermKind.VARIABLE

    @property
    def is_constant(self) -> bool:
        return self.kind is not TermKind.VARIABLE

    @property
    def sort_key(self) -> Tuple[int, str]:
        return (_KIND_RANK[self.kind], self.lexical)

    def __repr__(self):
        if self.kind is TermKind.VARIABLE:
            return f"?{self.lexical}"
        if self.kind is TermKind.LITERAL:
            return f'"{self.lexical}"'
        return f"<{self.lexical}>"


def iri(value: str) -> Term:
    return Term(TermKind.IRI, value)


def literal(value: str) -> Term:
    return Term(TermKind.LITERAL, value)


def var(name: str) -> Term:
    return Term(TermKind.VARIABLE, name.lstrip("?"))


def term(text: str) -> Term:
    """Shorthand constructor: ``?X`` is a variable, ``"x"`` a literal, anything else an IRI.

    Angle brackets around an IRI are optional. No escape processing is done;
    use :mod:`contbgp.lineio` for the real wire format.
    """
    if isinstance(text, Term):
        return text
    if text.startswith("?"):
        return var(text[1:])
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        return literal(text[1:-1])
    if text.startswith("<") and text.endswith(">"):
        text = text[1:-1]
    return iri(text)


@dataclass(frozen=True, slots=True)
class DataTriple:
    s: Term
    p: Term
    o: Term

    def __post_init__(self):
        if self.s.kind is not TermKind.IRI:
            raise ValueError(f"data triple subject must be an IRI, got {self.s!r}")
        if self.p.kind is not TermKind.IRI:
            raise ValueError(f"data triple predicate must be an IRI, got {self.p!r}")
        if self.o.kind is TermKind.VARIABLE:
            raise ValueError("data triple object must be a constant")

    def __iter__(self):
        return iter((self.s, self.p, self.o))

    def __repr__(self):
        return f"({self.s!r} {self.p!r} {self.o!r})"


@dataclass(frozen=True, slots=True)
class TriplePattern:
    s: Term
    p: Term
    o: Term

    def __post_init__(self):
        if self.p.kind is not TermKind.IRI:
            raise InvalidQuery(f"predicate must be an IRI, got {self.p!r}")
        if self.s.kind is TermKind.LITERAL:
            raise InvalidQuery(f"subject must not be a literal, got {self.s!r}")

    def __iter__(self):
        return iter((self.s, self.p, self.o))

    @property
    def variables(self) -> Tuple[Term, ...]:
        """Distinct variables in subject-then-object order."""
        out = []
        for t in (self.s, self.o):
            if t.is_variable and t not in out:
                out.append(t)
        return tuple(out)

    @property
    def is_ground(self) -> bool:
        return self.s.is_constant and self.o.is_constant

    def as_triple(self) -> DataTriple:
        if not self.is_ground:
            raise ValueError(f"pattern {self!r} is not ground")
        return DataTriple(self.s, self.p, self.o)

    def __repr__(self):
        return f"({self.s!r} {self.p!r} {self.o!r})"


def triple(s, p, o) -> DataTriple:
    return DataTriple(term(s), term(p), term(o))


def pattern(s, p, o) -> TriplePattern:
    return TriplePattern(term(s), term(p), term(o))


PartialMapping = Dict[Term, Term]
Answer = Tuple[Term, ...]


def first_occurrence_variables(patterns: Iterable[TriplePattern]) -> Tuple[Term, ...]:
    seen: Dict[Term, None] = {}
    for t in patterns:
        for v in t.variables:
            seen.setdefault(v, None)
    return tuple(seen)


@dataclass(frozen=True)
class Query:
    """A basic graph pattern with an ordered output pattern.

    ``patterns`` order is the enumeration used by every match-state array.
    When ``output`` is omitted the variables are ordered by first occurrence.
    """

    patterns: Tuple[TriplePattern, ...]
    output: Optional[Tuple[Term, ...]] = None

    def __post_init__(self):
        pats = tuple(self.patterns)
        if not pats:
            raise InvalidQuery("a query needs at least one triple pattern")
        if len(set(pats)) != len(pats):
            raise InvalidQuery("duplicate triple pattern in query")
        object.__setattr__(self, "patterns", pats)
        variables = first_occurrence_variables(pats)
        if self.output is None:
            object.__setattr__(self, "output", variables)
        else:
            out = tuple(self.output)
            if len(set(out)) != len(out) or set(out) != set(variables):
                raise InvalidQuery(f"output {out} must list exactly the query variables {variables}")
            object.__setattr__(self, "output", out)

    @property
    def variables(self) -> frozenset:
        return frozenset(self.output)

    @property
    def is_ground(self) -> bool:
        return not self.output

    def __len__(self):
        return len(self.patterns)

    def __iter__(self) -> Iterator[TriplePattern]:
        return iter(self.patterns)

    def answer(self, mapping: PartialMapping) -> Answer:
        return tuple(mapping[v] for v in self.output)


def query(*patterns, output: Optional[Sequence] = None) -> Query:
    """Build a query from ``(s, p, o)`` shorthand tuples or patterns."""
    pats = [p if isinstance(p, TriplePattern) else pattern(*p) for p in patterns]
    out = None if output is None else tuple(term(v) for v in output)
    return Query(tuple(pats), out)


class Op(Enum):
    INS = "ins"
    DEL = "del"


@dataclass(frozen=True, slots=True)
class UpdateMessage:
    time: int
    op: Op
    triple: DataTriple

    def __post_init__(self):
        if self.time < 0:
            raise ValueError("update times are non-negative")

    def inverse(self, time: int) -> "UpdateMessage":
        return UpdateMessage(time, Op.DEL if self.op is Op.INS else Op.INS, self.triple)


def ins(time: int, s, p, o) -> UpdateMessage:
    return UpdateMessage(time, Op.INS, triple(s, p, o))


def delete(time: int, s, p, o) -> UpdateMessage:
    return UpdateMessage(time, Op.DEL, triple(s, p, o))


class Sign(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


@dataclass(frozen=True, slots=True)
class DeltaAnswer:
    time: int
    sign: Sign
    answer: Answer


class Graph:
    """A set of data triples. The empty graph is a legal starting snapshot."""

    __slots__ = ("triples",)

    def __init__(self, triples: Iterable[DataTriple] = ()):
        self.triples = set(triples)

    def __contains__(self, t: DataTriple) -> bool:
        return t in self.triples

    def __len__(self):
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __eq__(self, other):
        if isinstance(other, Graph):
            return self.triples == other.triples
        return NotImplemented

    def __repr__(self):
        return f"Graph({sorted(self.triples, key=triple_key)!r})"

    def copy(self) -> "Graph":
        return Graph(self.triples)

    def apply(self, u: UpdateMessage, strict: bool = True) -> bool:
        """Apply ``u`` in place. Returns False when lenient mode dropped it as a no-op."""
        present = u.triple in self.triples
        if (u.op is Op.INS) == present:
            if strict:
                raise AssumptionViolation(u.time, u.op, u.triple)
            return False
        if u.op is Op.INS:
            self.triples.add(u.triple)
        else:
            self.triples.discard(u.triple)
        return True


def apply_update(g: Graph, u: UpdateMessage, strict: bool = True) -> Graph:
    """Return the snapshot after ``u``; ``g`` itself is returned for a lenient no-op."""
    present = u.triple in g
    if (u.op is Op.INS) == present:
        if strict:
            raise AssumptionViolation(u.time, u.op, u.triple)
        return g
    out = g.copy()
    out.apply(u)
    return out


def triple_key(t):
    return (t.s.sort_key, t.p.sort_key, t.o.sort_key)


def answer_key(answer: Answer):
    return tuple(t.sort_key for t in answer)


def unify(pat: TriplePattern, t: DataTriple) -> Optional[PartialMapping]:
    """Binding that turns ``pat`` into ``t``, or None when they cannot match."""
    if pat.p != t.p:
        return None
    m: PartialMapping = {}
    ps = pat.s
    if ps.kind is TermKind.VARIABLE:
        m[ps] = t.s
    elif ps != t.s:
        return None
    po = pat.o
    if po.kind is TermKind.VARIABLE:
        bound = m.get(po)
        if bound is None:
            m[po] = t.o
        elif bound != t.o:
            return None
    elif po != t.o:
        return None
    return m


def substitute(pat: TriplePattern, m: PartialMapping) -> TriplePattern:
    s = m.get(pat.s, pat.s) if pat.s.is_variable else pat.s
    o = m.get(pat.o, pat.o) if pat.o.is_variable else pat.o
    return TriplePattern(s, pat.p, o)


def compatible(e1: PartialMapping, e2: PartialMapping) -> bool:
    if len(e2) < len(e1):
        e1, e2 = e2, e1
    for k, v in e1.items():
        w = e2.get(k)
        if w is not None and w != v:
            return False
    return True


def join_mappings(e1: PartialMapping, e2: PartialMapping) -> Optional[PartialMapping]:
    """Union of two bindings, or None if a shared variable disagrees."""
    if not compatible(e1, e2):
        return None
    out = dict(e2)
    out.update(e1)
    return out
