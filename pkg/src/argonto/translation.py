"""Compile an :class:`Ontology` into an argumentation theory.

TBox rows map to rules as follows (``~>`` is ``->`` for strict axioms and
``=>`` for defeasible ones; every emitted rule inherits the axiom's
principle)::

    C ⊑ D          C(x) ~> D(x)
    C ≡ D          C(x) ~> D(x);  D(x) ~> C(x)
    C ⊑ ∀P.D       C(x), P(x,y) ~> D(y);  C(x) ~> P(x,?new)   (second rule only with table_verbatim)
    P ⊑ Q          P(x,y) ~> Q(x,y)
    P ≡ Q          P(x,y) ~> Q(x,y);  Q(x,y) ~> P(x,y)
    C ⊑ ∃P.D       C(x) ~> P(x,?new);  C(x), P(x,b) ~> D(b)
    C ⊓ D ⊑ ⊥      C(x) ~> ¬D(x);  D(x) ~> ¬C(x)
    C ⊑ D ⊔ Z      C(x) ~> D(x) ∨ Z(x);  C(x), ¬D(x) ~> Z(x);  C(x), ¬Z(x) ~> D(x)
    C ⊑ D ⊓ Z      C(x) ~> D(x);  C(x) ~> Z(x)

Left-hand sides may additionally be conjunctions, and ``∃P.D`` on the left
becomes ``P(x,y_k), D(y_k)`` in the body. The first rule of an axiom keeps
the axiom id; later ones get primes appended (``r10``, ``r10'``, ...).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .engine import construct_arguments
from .grounding import strict_closure
from .logic import Disjunction, Literal, Variable
from .ontology import (
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
    TBoxAxiom,
    conjuncts,
)
from .theory import ArgumentationTheory, Rule


class TranslationError(ValueError):
    pass


X = Variable("x")


def _unary(name: str, term, negated: bool = False) -> Literal:
    return Literal(name, (term,), negated)


def _lhs_body(lhs) -> tuple:
    body = []
    counter = itertools.count(1)
    for piece in conjuncts(lhs):
        body.extend(_piece_literals(piece, counter))
    return tuple(body)


def _piece_literals(piece, counter) -> list:
    if isinstance(piece, Atomic):
        return [_unary(piece.name, X)]
    if isinstance(piece, Not):
        return [_unary(piece.concept.name, X, negated=True)]
    if isinstance(piece, Exists):
        y = Variable(f"y{next(counter)}")
        return [Literal(piece.role, (X, y)), _unary(piece.concept.name, y)]
    raise TranslationError(f"unsupported left-hand conjunct {piece}")


def _rhs_rules(body: tuple, rhs, table_verbatim: bool) -> list:
    """(body, head) pairs for ``body ⊑ rhs``."""
    if isinstance(rhs, Atomic):
        return [(body, _unary(rhs.name, X))]
    if isinstance(rhs, Not):
        return [(body, _unary(rhs.concept.name, X, negated=True))]
    if isinstance(rhs, Or):
        d, z = _unary(rhs.left.name, X), _unary(rhs.right.name, X)
        return [
            (body, Disjunction(d, z)),
            (body + (d.complement(),), z),
            (body + (z.complement(),), d),
        ]
    if isinstance(rhs, Exists):
        fresh = Variable("new", fresh=True)
        b = Variable("b")
        return [
            (body, Literal(rhs.role, (X, fresh))),
            (body + (Literal(rhs.role, (X, b)),), _unary(rhs.concept.name, b)),
        ]
    if isinstance(rhs, ForAll):
        y = Variable("y")
        out = [(body + (Literal(rhs.role, (X, y)),), _unary(rhs.concept.name, y))]
        if table_verbatim:
            out.append((body, Literal(rhs.role, (X, Variable("new", fresh=True)))))
        return out
    if isinstance(rhs, And):
        return _rhs_rules(body, rhs.left, table_verbatim) + _rhs_rules(body, rhs.right, table_verbatim)
    raise TranslationError(f"unsupported right-hand side {rhs}")


def _disjointness_rules(lhs) -> list:
    counter = itertools.count(1)
    pieces = [_piece_literals(p, counter) for p in conjuncts(lhs)]
    out = []
    for i in reversed(range(len(pieces))):
        if len(pieces[i]) != 1:
            continue  # an ∃-conjunct has no single literal to negate
        body = tuple(lit for j, p in enumerate(pieces) if j != i for lit in p)
        out.append((body, pieces[i][0].complement()))
    return out


def translate_axiom(a: TBoxAxiom, table_verbatim: bool = True) -> list:
    """Rules for one TBox axiom, deduplicated, ids ``a.id``, ``a.id'``, ..."""
    if a.form is AxiomForm.ROLE_SUBSUMPTION or a.form is AxiomForm.ROLE_EQUIVALENCE:
        y = Variable("y")
        pairs = [((Literal(a.lhs, (X, y)),), Literal(a.rhs, (X, y)))]
        if a.form is AxiomForm.ROLE_EQUIVALENCE:
            pairs.append(((Literal(a.rhs, (X, y)),), Literal(a.lhs, (X, y))))
    elif a.form is AxiomForm.DISJOINTNESS:
        if not isinstance(a.rhs, Nothing):
            raise TranslationError(f"{a.id}: disjointness without NOTHING")
        pairs = _disjointness_rules(a.lhs)
    elif a.form is AxiomForm.SUBSUMPTION:
        pairs = _rhs_rules(_lhs_body(a.lhs), a.rhs, table_verbatim)
    elif a.form is AxiomForm.EQUIVALENCE:
        pairs = _rhs_rules(_lhs_body(a.lhs), a.rhs, table_verbatim)
        pairs += _rhs_rules(_lhs_body(a.rhs), a.lhs, table_verbatim)
    else:  # pragma: no cover
        raise TranslationError(f"{a.id}: unknown axiom form {a.form}")
    if not pairs:
        raise TranslationError(f"{a.id}: axiom yields no rules")

    rules, keys = [], set()
    for body, head in pairs:
        rid = a.id + "'" * len(rules)
        r = Rule(rid, body, head, a.mode, a.principle, origin=f"tbox:{a.id}")
        if r.canonical_key() in keys:
            continue
        keys.add(r.canonical_key())
        rules.append(r)
    return rules


def _unfreeze(lit):
    """Fresh head variables become ordinary ones once they move into a body."""
    if isinstance(lit, Disjunction):
        return Disjunction(_unfreeze(lit.left), _unfreeze(lit.right))
    return Literal(
        lit.predicate,
        tuple(Variable(t.name) if isinstance(t, Variable) else t for t in lit.args),
        lit.negated,
    )


def _existential_head(r: Rule) -> bool:
    return any(v.fresh for v in r.head.variables())


def transpose_strict(rules, report: list | None = None) -> tuple:
    """Close the strict rules under the transposition template.

    For ``φ1..φn -> ψ`` every ``φ1..φ(i-1), -ψ, φ(i+1)..φn -> -φi`` is added
    unless an equal rule (up to renaming and body order) already exists.
    Defeasible rules pass through untouched. Rules with a disjunctive head
    are skipped and noted in ``report``, as are rules with a fresh head
    variable: lacking one particular filler does not refute the existential.
    """
    out = list(rules)
    keys = {r.canonical_key() for r in out}
    ids = {r.id for r in out}
    queue = [r for r in out if r.strict]
    while queue:
        r = queue.pop(0)
        if isinstance(r.head, Disjunction):
            if report is not None:
                report.append(f"{r.id}: disjunctive head has no complement; not transposed")
            continue
        if _existential_head(r):
            if report is not None:
                report.append(f"{r.id}: existential head; not transposed")
            continue
        for i, phi in enumerate(r.body):
            if isinstance(phi, Disjunction):
                if report is not None:
                    report.append(f"{r.id}: body element {i + 1} is a disjunction; not transposed")
                continue
            body = tuple(_unfreeze(b) for b in r.body[:i] + (r.head.complement(),) + r.body[i + 1:])
            head = _unfreeze(phi.complement())
            rid = r.id + "'" if len(r.body) == 1 else f"{r.id}'{i + 1}"
            while rid in ids:
                rid += "'"
            cand = Rule(rid, body, head, Mode.STRICT, origin=f"transposition:{r.id}")
            if cand.canonical_key() in keys:
                continue
            keys.add(cand.canonical_key())
            ids.add(rid)
            out.append(cand)
            queue.append(cand)
    return tuple(out)


def translate_ontology(
    o: Ontology,
    transpose: bool = True,
    table_verbatim: bool = True,
) -> ArgumentationTheory:
    diagnostics = []
    premises = []
    for a in o.abox:
        if a.literal not in premises:
            premises.append(a.literal)

    rules, owner = [], {}

    def add(r: Rule, source: str):
        if r.id in owner:
            raise TranslationError(f"rule id {r.id!r} from {source} collides with {owner[r.id]}")
        owner[r.id] = source
        rules.append(r)

    for ax in o.tbox:
        emitted = translate_axiom(ax, table_verbatim)
        if table_verbatim and any(isinstance(k, ForAll) for k in conjuncts(ax.rhs) if not isinstance(ax.rhs, str)):
            diagnostics.append(
                f"{ax.id}: universal restriction also emits an existential-style rule (table-verbatim)"
            )
        for r in emitted:
            add(r, f"TBOX {ax.id}")
    for decl, kind in [(d, "rule") for d in o.rules] + [(d, "undercut") for d in o.undercuts]:
        r = Rule(decl.id, tuple(decl.body), decl.head, decl.mode, decl.principle, origin=kind)
        loose = [v for v in r.head_only_variables() if not v.fresh]
        if loose:
            diagnostics.append(
                f"{r.id}: head variable(s) {', '.join('?' + v.name for v in loose)} bound only "
                "by already-concluded atoms"
            )
        add(r, f"{kind.upper()} {decl.id}")

    by_id = {r.id: r for r in rules}
    for decl in o.undercuts:
        target = decl.head.args[0].name
        if target not in by_id:
            raise TranslationError(f"undercut {decl.id} targets unknown rule {target!r}")
        if by_id[target].strict:
            raise TranslationError(f"undercut {decl.id} targets strict rule {target!r}")

    if transpose:
        before = len(rules)
        rules = list(transpose_strict(rules, diagnostics))
        for r in rules[before:]:
            owner[r.id] = r.origin

    declared = set(o.principle_ids())
    for r in rules:
        if not r.strict and r.principle not in declared:
            raise TranslationError(f"norm {r.id} has undeclared principle {r.principle!r}")
    preorder = o.preorder()
    for group in preorder.cycles():
        diagnostics.append(f"priority cycle: {' = '.join(group)}")

    return ArgumentationTheory(
        premises=tuple(premises),
        rules=tuple(rules),
        principles=tuple(o.principle_ids()),
        preorder=preorder,
        principle_text=tuple((p.id, p.text) for p in o.principles),
        diagnostics=tuple(diagnostics),
    )


# -- well-definedness -----------------------------------------------------------------

@dataclass
class WellDefinedReport:
    contradictory_premise_sets: list = field(default_factory=list)
    missing_transpositions: list = field(default_factory=list)
    classicality_violations: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (
            self.contradictory_premise_sets or self.missing_transpositions or self.classicality_violations
        )

    @property
    def transposition_ok(self) -> bool:
        return not self.missing_transpositions

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "contradictory_premise_sets": self.contradictory_premise_sets,
            "missing_transpositions": self.missing_transpositions,
            "classicality_violations": self.classicality_violations,
            "diagnostics": self.diagnostics,
        }


def _complementary_pairs(formulas) -> list:
    return sorted(
        str(f) for f in formulas if isinstance(f, Literal) and not f.negated and f.complement() in formulas
    )


def check_well_defined(
    t: ArgumentationTheory,
    max_subset: int = 3,
    max_skolem_depth: int = 1,
    max_arguments: int = 100_000,
) -> WellDefinedReport:
    if max_subset < 1:
        raise ValueError("max_subset must be >= 1")
    report = WellDefinedReport()
    strict = t.strict_rules

    def closure(q):
        return strict_closure(q, strict, max_skolem_depth, max_arguments)

    store = construct_arguments(t, max_skolem_depth=max_skolem_depth, max_arguments=max_arguments)
    seen = set()
    for arg in store:
        prem = frozenset(arg.premises)
        if prem in seen:
            continue
        seen.add(prem)
        clash = _complementary_pairs(closure(prem))
        if clash:
            report.contradictory_premise_sets.append(
                {"premises": sorted(str(p) for p in prem), "complementary": clash, "argument": arg.id}
            )

    keys = {r.canonical_key() for r in strict}
    for r in strict:
        if isinstance(r.head, Disjunction):
            report.diagnostics.append(f"{r.id}: disjunctive head, transposition not required")
            continue
        if _existential_head(r):
            report.diagnostics.append(f"{r.id}: existential head, transposition not required")
            continue
        for i, phi in enumerate(r.body):
            if isinstance(phi, Disjunction):
                continue
            body = tuple(_unfreeze(b) for b in r.body[:i] + (r.head.complement(),) + r.body[i + 1:])
            need = Rule("?", body, _unfreeze(phi.complement()), Mode.STRICT)
            if need.canonical_key() not in keys:
                report.missing_transpositions.append(
                    {"rule": r.id, "position": i + 1, "expected": str(need).split(": ", 1)[1]}
                )

    premises = list(t.premises)
    inconsistent = []
    for size in range(1, min(max_subset, len(premises)) + 1):
        for q in itertools.combinations(premises, size):
            qs = frozenset(q)
            if any(m <= qs for m in inconsistent):
                continue
            if _complementary_pairs(closure(qs)):
                inconsistent.append(qs)
                for phi in q:
                    if phi.complement() not in closure(qs - {phi}):
                        report.classicality_violations.append(
                            {"set": sorted(str(p) for p in q), "dropped": str(phi)}
                        )
    report.diagnostics.append(
        "transposition checked via the rule template; contraposition is not searched"
    )
    return report
