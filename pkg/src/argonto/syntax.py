"""Reader and writer for the ``.onto`` text format.

One declaration per line, ``#`` starts a comment::

    PRINCIPLE p1 "Human lives should be protected"
    PRIORITY p2 < p1
    TBOX r1 defeasible(p3): Driver SUBSUMED_BY Sober
    RULE r8 defeasible(p1): CauseAccident(?x), Injury(?y) => transferToSafePlace(?x,?y)
    UNDERCUT u1 defeasible(p2): Emergency(?x) => ~applicable(r8)
    ABOX Driver(PS1)

Variables are written ``?x``; a head variable named ``?new...`` is fresh
(skolem-generating).
"""

from __future__ import annotations

import json
import re
from typing import Optional

from .logic import IDENT, Disjunction, Literal, Variable, parse_literal
from .ontology import (
    ABoxAssertion,
    And,
    Atomic,
    AxiomForm,
    Exists,
    ForAll,
    Mode,
    Not,
    Nothing,
    Ontology,
    Or,
    PrincipleDecl,
    PriorityDecl,
    RuleDecl,
    TBoxAxiom,
    conjuncts,
)

HEADER = "# argonto ontology"


class OntologySyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


_MODE = r"(strict|defeasible\(\s*(?P<pid>" + IDENT + r")\s*\))"
_PRINCIPLE_RE = re.compile(rf'^PRINCIPLE\s+(?P<id>{IDENT})(?:\s+(?P<text>".*"))?\s*$')
_PRIORITY_RE = re.compile(rf"^PRIORITY\s+(?P<a>{IDENT})\s*(?P<op>[<=])\s*(?P<b>{IDENT})\s*$")
_TBOX_RE = re.compile(
    rf"^TBOX\s+(?P<id>{IDENT})\s+(?P<mode>{_MODE})\s*:\s*(?P<lhs>.+?)\s+"
    r"(?P<op>SUBSUMED_BY|EQUIV)\s+(?P<rhs>.+?)\s*$"
)
_RULE_RE = re.compile(
    rf"^(?P<kw>RULE|UNDERCUT)\s+(?P<id>{IDENT})\s+(?P<mode>{_MODE})\s*:\s*"
    r"(?P<body>.*?)\s*(?P<arrow>->|=>)\s*(?P<head>.+?)\s*$"
)
_ABOX_RE = re.compile(r"^ABOX\s+(?P<lit>.+?)\s*$")
_TOKEN_RE = re.compile(rf"\s*(\(|\)|\.|{IDENT})")
_KEYWORDS = {"AND", "OR", "NOT", "EXISTS", "FORALL", "NOTHING"}


def _strip_comment(line: str) -> str:
    in_quote = False
    for i, ch in enumerate(line):
        if ch == '"' and (i == 0 or line[i - 1] != "\\"):
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i]
    return line


def _split_top(text: str, sep: str = ",") -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


class _ConceptParser:
    def __init__(self, text: str, lineno: int, offset: int):
        self.text = text
        self.lineno = lineno
        self.offset = offset
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m:
                self.fail(f"unexpected character {text[pos:].strip()[0]!r}", pos)
            self.tokens.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0

    def fail(self, msg: str, pos: Optional[int] = None):
        if pos is None:
            pos = self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)
        raise OntologySyntaxError(msg, self.lineno, self.offset + pos + 1)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            self.fail(f"expected {expected or 'a concept'}, found {tok or 'end of line'}")
        self.i += 1
        return tok

    def parse(self):
        expr = self.disjunction()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return expr

    def disjunction(self):
        start = self.i
        left = self.conjunction()
        items = [left]
        while self.peek() == "OR":
            self.take()
            items.append(self.conjunction())
        if len(items) == 1:
            return left
        if len(items) != 2 or not all(isinstance(c, Atomic) for c in items):
            self.i = start
            self.fail("disjunction is only supported between two atomic concepts")
        return Or(items[0], items[1])

    def conjunction(self):
        expr = self.unary()
        while self.peek() == "AND":
            self.take()
            expr = And(expr, self.unary())
        return expr

    def name(self):
        tok = self.take()
        if tok in _KEYWORDS or tok in "().":
            self.i -= 1
            self.fail(f"expected a name, found {tok!r}")
        return tok

    def unary(self):
        tok = self.peek()
        if tok == "NOT":
            self.take()
            inner = self.unary()
            if not isinstance(inner, Atomic):
                self.fail("NOT applies to atomic concepts only")
            return Not(inner)
        if tok in ("EXISTS", "FORALL"):
            self.take()
            role = self.name()
            self.take(".")
            concept = Atomic(self.name())
            return Exists(role, concept) if tok == "EXISTS" else ForAll(role, concept)
        if tok == "NOTHING":
            self.take()
            return Nothing()
        if tok == "(":
            self.take()
            inner = self.disjunction()
            self.take(")")
            return inner
        return Atomic(self.name())


# -- shape validation -------------------------------------------------------

def _lhs_ok(c) -> bool:
    return all(isinstance(k, (Atomic, Not, Exists)) for k in conjuncts(c))


def _rhs_ok(c) -> bool:
    if isinstance(c, Or):
        return True
    return all(isinstance(k, (Atomic, Not, Exists, ForAll)) for k in conjuncts(c))


def _concept_names(c, concepts: set, roles: set):
    if isinstance(c, Atomic):
        concepts.add(c.name)
    elif isinstance(c, Not):
        concepts.add(c.concept.name)
    elif isinstance(c, (And, Or)):
        _concept_names(c.left, concepts, roles)
        _concept_names(c.right, concepts, roles)
    elif isinstance(c, (Exists, ForAll)):
        roles.add(c.role)
        concepts.add(c.concept.name)


class _Arity:
    def __init__(self):
        self.arity: dict = {}

    def use(self, name: str, arity: int, lineno: int):
        known = self.arity.setdefault(name, arity)
        if known != arity:
            kind = {1: "concept", 2: "role"}
            raise OntologySyntaxError(
                f"{name!r} used as a {kind.get(arity, arity)} but first used as a "
                f"{kind.get(known, known)}",
                lineno,
                1,
            )


def parse_ontology(source: str) -> Ontology:
    """Parse ``.onto`` text into a validated :class:`Ontology`."""
    principles, priorities, tbox, rules, undercuts, abox = [], [], [], [], [], []
    seen_ids: dict = {}
    principle_refs: list = []
    arity = _Arity()
    pending_tbox = []

    def claim(ident, lineno):
        if ident in seen_ids:
            raise OntologySyntaxError(
                f"duplicate id {ident!r} (first declared on line {seen_ids[ident]})", lineno, 1
            )
        seen_ids[ident] = lineno

    def mode_of(m, lineno):
        if m.group("pid"):
            principle_refs.append((m.group("pid"), lineno))
            return Mode.DEFEASIBLE, m.group("pid")
        return Mode.STRICT, None

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        indent = len(raw) - len(raw.lstrip())
        keyword = line.split(None, 1)[0]
        if keyword == "PRINCIPLE":
            m = _PRINCIPLE_RE.match(line)
            if not m:
                raise OntologySyntaxError("expected PRINCIPLE <id> \"<text>\"", lineno, indent + 1)
            if any(p.id == m.group("id") for p in principles):
                raise OntologySyntaxError(f"duplicate principle {m.group('id')!r}", lineno, 1)
            text = m.group("text")
            try:
                text = json.loads(text) if text else ""
            except json.JSONDecodeError:
                raise OntologySyntaxError("malformed principle text", lineno, m.start("text") + 1)
            principles.append(PrincipleDecl(m.group("id"), text))
        elif keyword == "PRIORITY":
            m = _PRIORITY_RE.match(line)
            if not m:
                raise OntologySyntaxError("expected PRIORITY <id> (<|=) <id>", lineno, indent + 1)
            priorities.append((PriorityDecl(m.group("a"), m.group("b"), m.group("op") == "="), lineno))
        elif keyword == "TBOX":
            m = _TBOX_RE.match(line)
            if not m:
                raise OntologySyntaxError(
                    "expected TBOX <id> (strict|defeasible(<pid>)): <C> (SUBSUMED_BY|EQUIV) <C>",
                    lineno,
                    indent + 1,
                )
            claim(m.group("id"), lineno)
            mode, pid = mode_of(m, lineno)
            lhs = _ConceptParser(m.group("lhs"), lineno, indent + m.start("lhs")).parse()
            rhs = _ConceptParser(m.group("rhs"), lineno, indent + m.start("rhs")).parse()
            pending_tbox.append((m, lineno, indent, mode, pid, lhs, rhs))
            concepts, roles = set(), set()
            for side in (lhs, rhs):
                _concept_names(side, concepts, roles)
            # bare single names may turn out to be roles; settle them after the first pass
            for c in concepts - {lhs.name if isinstance(lhs, Atomic) else None,
                                 rhs.name if isinstance(rhs, Atomic) else None}:
                arity.use(c, 1, lineno)
            for r in roles:
                arity.use(r, 2, lineno)
        elif keyword in ("RULE", "UNDERCUT"):
            m = _RULE_RE.match(line)
            if not m:
                raise OntologySyntaxError(
                    f"expected {keyword} <id> (strict|defeasible(<pid>)): body (->|=>) head",
                    lineno,
                    indent + 1,
                )
            claim(m.group("id"), lineno)
            mode, pid = mode_of(m, lineno)
            want = "=>" if mode is Mode.DEFEASIBLE else "->"
            if m.group("arrow") != want:
                raise OntologySyntaxError(
                    f"{mode.value} rule must use {want!r}", lineno, indent + m.start("arrow") + 1
                )
            body = []
            if not m.group("body").strip():
                raise OntologySyntaxError("rule body is empty", lineno, indent + m.start("body") + 1)
            for part in _split_top(m.group("body")):
                body.append(_literal(part, lineno, indent + m.start("body")))
            head_parts = re.split(r"\s+OR\s+", m.group("head"))
            if len(head_parts) > 2:
                raise OntologySyntaxError("at most two head disjuncts", lineno, indent + m.start("head") + 1)
            heads = [_literal(h, lineno, indent + m.start("head")) for h in head_parts]
            head = heads[0] if len(heads) == 1 else Disjunction(heads[0], heads[1])
            for lit in body + heads:
                if not lit.is_naming:
                    arity.use(lit.predicate, lit.arity, lineno)
            body_vars = {v.name for lit in body for v in lit.variables()}
            for v in (head.variables() if head is not None else ()):
                if v.fresh and v.name in body_vars:
                    raise OntologySyntaxError(
                        f"fresh variable ?{v.name} also occurs in the body", lineno, indent + 1
                    )
            for lit in body:
                if any(v.fresh for v in lit.variables()):
                    raise OntologySyntaxError("fresh variables may only occur in the head", lineno, indent + 1)
            if keyword == "UNDERCUT":
                if mode is not Mode.DEFEASIBLE:
                    raise OntologySyntaxError("UNDERCUT rules must be defeasible", lineno, indent + 1)
                if not (isinstance(head, Literal) and head.is_naming and head.negated and head.arity == 1
                        and head.is_ground()):
                    raise OntologySyntaxError(
                        "UNDERCUT head must be ~applicable(<ruleId>)", lineno, indent + m.start("head") + 1
                    )
                undercuts.append(RuleDecl(m.group("id"), mode, tuple(body), head, pid))
            else:
                rules.append(RuleDecl(m.group("id"), mode, tuple(body), head, pid))
        elif keyword == "ABOX":
            m = _ABOX_RE.match(line)
            lit = _literal(m.group("lit") if m else "", lineno, indent + 5, allow_variables=False)
            if lit.arity not in (1, 2):
                raise OntologySyntaxError("ABOX literal must be unary or binary", lineno, indent + 6)
            if lit.is_naming:
                raise OntologySyntaxError("'applicable' is reserved", lineno, indent + 6)
            arity.use(lit.predicate, lit.arity, lineno)
            abox.append(ABoxAssertion(lit))
        else:
            raise OntologySyntaxError(f"unknown declaration {keyword!r}", lineno, indent + 1)

    for m, lineno, indent, mode, pid, lhs, rhs in pending_tbox:
        tbox.append(_make_axiom(m, lineno, indent, mode, pid, lhs, rhs, arity))

    declared = {p.id for p in principles}
    for pid, lineno in principle_refs:
        if pid not in declared:
            raise OntologySyntaxError(f"undeclared principle {pid!r}", lineno, 1)
    for d, lineno in priorities:
        for pid in (d.lower, d.higher):
            if pid not in declared:
                raise OntologySyntaxError(f"priority references undeclared principle {pid!r}", lineno, 1)

    return Ontology(
        tbox=tuple(tbox),
        abox=tuple(abox),
        principles=tuple(principles),
        priorities=tuple(d for d, _ in priorities),
        rules=tuple(rules),
        undercuts=tuple(undercuts),
        predicates=tuple(sorted(arity.arity.items())),
    )


def _literal(text: str, lineno: int, offset: int, allow_variables: bool = True) -> Literal:
    try:
        return parse_literal(text, allow_variables)
    except ValueError as exc:
        raise OntologySyntaxError(str(exc), lineno, offset + 1) from None


def _make_axiom(m, lineno, indent, mode, pid, lhs, rhs, arity: _Arity) -> TBoxAxiom:
    ident = m.group("id")
    equiv = m.group("op") == "EQUIV"
    bare = isinstance(lhs, Atomic) and isinstance(rhs, Atomic)
    if bare:
        kinds = {arity.arity.get(lhs.name), arity.arity.get(rhs.name)}
        if kinds == {2} or kinds == {2, None}:
            for n in (lhs.name, rhs.name):
                arity.use(n, 2, lineno)
            form = AxiomForm.ROLE_EQUIVALENCE if equiv else AxiomForm.ROLE_SUBSUMPTION
            return TBoxAxiom(ident, lhs.name, rhs.name, form, mode, pid)
        for n in (lhs.name, rhs.name):
            arity.use(n, 1, lineno)
    else:
        for side in (lhs, rhs):
            if isinstance(side, Atomic):
                arity.use(side.name, 1, lineno)

    col = indent + m.start("lhs") + 1
    if isinstance(lhs, Nothing) or isinstance(lhs, Or) or not _lhs_ok(lhs):
        raise OntologySyntaxError(f"unsupported left-hand side {lhs}", lineno, col)
    if isinstance(rhs, Nothing):
        if equiv:
            raise OntologySyntaxError("NOTHING cannot appear in an equivalence", lineno, col)
        parts = conjuncts(lhs)
        if len(parts) < 2 or not any(isinstance(k, (Atomic, Not)) for k in parts):
            raise OntologySyntaxError(
                "disjointness needs a conjunction with at least one (negated) atomic conjunct",
                lineno,
                col,
            )
        return TBoxAxiom(ident, lhs, rhs, AxiomForm.DISJOINTNESS, mode, pid)
    rcol = indent + m.start("rhs") + 1
    if not _rhs_ok(rhs):
        raise OntologySyntaxError(f"unsupported right-hand side {rhs}", lineno, rcol)
    if equiv and not (_lhs_ok(rhs) and not isinstance(rhs, Or) and _rhs_ok(lhs)):
        raise OntologySyntaxError(f"unsupported equivalence {lhs} EQUIV {rhs}", lineno, col)
    form = AxiomForm.EQUIVALENCE if equiv else AxiomForm.SUBSUMPTION
    return TBoxAxiom(ident, lhs, rhs, form, mode, pid)


# -- writer -----------------------------------------------------------------------

def _mode_text(mode: Mode, pid: Optional[str]) -> str:
    return f"defeasible({pid})" if mode is Mode.DEFEASIBLE else "strict"


def _concept_text(c) -> str:
    if isinstance(c, And):
        left = _concept_text(c.left)
        right = _concept_text(c.right)
        if isinstance(c.left, Or):
            left = f"({left})"
        if isinstance(c.right, (And, Or)):
            right = f"({right})"
        return f"{left} AND {right}"
    if isinstance(c, str):
        return c
    return str(c)


def _literal_text(lit) -> str:
    if isinstance(lit, Disjunction):
        return f"{_literal_text(lit.left)} OR {_literal_text(lit.right)}"
    sign = "~" if lit.negated else ""
    args = ",".join(f"?{a.name}" if isinstance(a, Variable) else a.name for a in lit.args)
    return f"{sign}{lit.predicate}({args})"


def serialize_ontology(o: Ontology) -> str:
    lines = [HEADER]
    for p in o.principles:
        lines.append(f"PRINCIPLE {p.id} {json.dumps(p.text, ensure_ascii=False)}")
    for d in o.priorities:
        lines.append(f"PRIORITY {d.lower} {'=' if d.equal else '<'} {d.higher}")
    for a in o.tbox:
        op = "EQUIV" if a.form in (AxiomForm.EQUIVALENCE, AxiomForm.ROLE_EQUIVALENCE) else "SUBSUMED_BY"
        lines.append(
            f"TBOX {a.id} {_mode_text(a.mode, a.principle)}: "
            f"{_concept_text(a.lhs)} {op} {_concept_text(a.rhs)}"
        )
    for kw, decls in (("RULE", o.rules), ("UNDERCUT", o.undercuts)):
        for r in decls:
            arrow = "=>" if r.mode is Mode.DEFEASIBLE else "->"
            body = ", ".join(_literal_text(b) for b in r.body)
            lines.append(f"{kw} {r.id} {_mode_text(r.mode, r.principle)}: {body} {arrow} {_literal_text(r.head)}")
    for a in o.abox:
        lines.append(f"ABOX {_literal_text(a.literal)}")
    return "\n".join(lines) + "\n"


def parse_concept(text: str):
    """Parse a standalone class expression, e.g. ``EXISTS hitAndRun.Injury``."""
    return _ConceptParser(text, 1, 0).parse()
