from pathlib import Path

import pytest
from av_reference import AV, CORPUS
from hypothesis import given, settings
from hypothesis import strategies as st

from argonto.logic import Literal, Individual, Variable, parse_literal
from argonto.ontology import (
    ABoxAssertion,
    And,
    Atomic,
    AxiomForm,
    Exists,
    ForAll,
    Mode,
    Not,
    Ontology,
    Or,
    Preorder,
    PrincipleDecl,
    PriorityDecl,
    RuleDecl,
    TBoxAxiom,
)
from argonto.syntax import OntologySyntaxError, parse_concept, parse_ontology, serialize_ontology

HEADER = 'PRINCIPLE p "a principle"\n'


def test_parse_defeasible_subsumption():
    o = parse_ontology(HEADER + "TBOX d1 defeasible(p): Driver SUBSUMED_BY Sober")
    (ax,) = o.tbox
    assert ax == TBoxAxiom("d1", Atomic("Driver"), Atomic("Sober"), AxiomForm.SUBSUMPTION, Mode.DEFEASIBLE, "p")


def test_empty_source_gives_empty_ontology():
    o = parse_ontology("")
    assert o == Ontology()
    assert not (o.tbox or o.abox or o.principles or o.priorities or o.rules or o.undercuts)


def test_priority_closure_is_transitive():
    src = 'PRINCIPLE p0 "a"\nPRINCIPLE p1 "b"\nPRINCIPLE p2 "c"\nPRIORITY p2 < p1\nPRIORITY p1 < p0\n'
    order = parse_ontology(src).preorder()
    assert order.leq("p2", "p0")
    assert not order.leq("p0", "p2")
    assert ("p2", "p0") in order.closure()


def test_equality_priority_is_symmetric():
    order = Preorder(["a", "b"], [PriorityDecl("a", "b", equal=True)])
    assert order.leq("a", "b") and order.leq("b", "a")
    assert order.cycles() == [("a", "b")]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.booleans()), max_size=8))
def test_preorder_reflexive_transitive(pairs):
    names = [f"p{i}" for i in range(5)]
    order = Preorder(names, [PriorityDecl(names[a], names[b], eq) for a, b, eq in pairs])
    for a in names:
        assert order.leq(a, a)
        for b in names:
            for c in names:
                if order.leq(a, b) and order.leq(b, c):
                    assert order.leq(a, c)


def test_av_corpus_shape(av_ontology):
    o = av_ontology
    assert [p.id for p in o.principles] == ["p1", "p2", "p3"]
    assert [str(d) for d in o.priorities] == ["p2<p1"]
    assert len(o.abox) == 7
    assert [r.id for r in o.rules] == ["r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9", "r11", "r12"]
    assert str(o.abox[3].literal) == "hitAndRun(PS1,Injury1)"


def test_negated_abox_assertions_allowed():
    o = parse_ontology("ABOX ~Sober(PS1)\nABOX ~knows(a,b)")
    assert [a.literal.negated for a in o.abox] == [True, True]


def test_bare_names_resolve_by_arity():
    o = parse_ontology("ABOX hits(a,b)\nTBOX t strict: hits SUBSUMED_BY touches")
    assert o.tbox[0].form is AxiomForm.ROLE_SUBSUMPTION


NEGATIVE = {
    "or-with-compound": "TBOX a strict: A SUBSUMED_BY B OR (C AND D)",
    "not-compound": "TBOX a strict: A SUBSUMED_BY NOT (B AND C)",
    "forall-on-left": "TBOX a strict: FORALL r.B SUBSUMED_BY C",
    "or-on-left": "TBOX a strict: A OR B SUBSUMED_BY C",
    "nothing-on-left": "TBOX a strict: NOTHING SUBSUMED_BY C",
    "nested-restriction": "TBOX a strict: A SUBSUMED_BY EXISTS r.(EXISTS s.B)",
    "restriction-filler-compound": "TBOX a strict: A SUBSUMED_BY EXISTS r.(B AND C)",
    "nothing-after-atom": "TBOX a strict: A SUBSUMED_BY NOTHING",
    "unbalanced": "TBOX a strict: A SUBSUMED_BY (B AND C",
    "ternary-abox": "ABOX R(a,b,c)",
    "variable-in-abox": "ABOX R(?x)",
    "empty-args": "ABOX R()",
    "undeclared-principle": "TBOX a defeasible(q): A SUBSUMED_BY B",
    "strict-with-defeasible-arrow": "RULE r strict: A(?x) => B(?x)",
    "defeasible-with-strict-arrow": "RULE r defeasible(p): A(?x) -> B(?x)",
    "duplicate-id": "TBOX a strict: A SUBSUMED_BY B\nTBOX a strict: B SUBSUMED_BY C",
    "undercut-head": "UNDERCUT u defeasible(p): A(?x) => B(?x)",
    "unknown-keyword": "HELLO world",
    "role-used-as-concept": "TBOX a strict: r SUBSUMED_BY B\nABOX r(a,b)\nABOX B(a)",
    "priority-undeclared": "PRIORITY p < q",
    "arity-conflict": "ABOX A(a)\nABOX A(a,b)",
    "fresh-in-body": "RULE r strict: A(?newx) -> B(?newx)",
    "missing-mode": "TBOX a: A SUBSUMED_BY B",
}


@pytest.mark.parametrize("name", sorted(NEGATIVE))
def test_rejects_malformed(name):
    with pytest.raises(OntologySyntaxError) as info:
        parse_ontology(HEADER + NEGATIVE[name])
    assert info.value.line >= 2


def test_error_reports_column():
    with pytest.raises(OntologySyntaxError) as info:
        parse_ontology("ABOX R(?x)")
    assert (info.value.line, info.value.column) == (1, 6)


def test_model_rejects_missing_principle():
    with pytest.raises(ValueError):
        TBoxAxiom("a", Atomic("A"), Atomic("B"), AxiomForm.SUBSUMPTION, Mode.DEFEASIBLE)
    with pytest.raises(ValueError):
        ABoxAssertion(Literal("A", (Variable("x"),)))


def test_parse_concept():
    assert parse_concept("EXISTS hitAndRun.Injury") == Exists("hitAndRun", Atomic("Injury"))
    assert parse_concept("Driver AND Intoxicated") == And(Atomic("Driver"), Atomic("Intoxicated"))
    assert parse_concept("NOT Sober") == Not(Atomic("Sober"))


# -- round trip ---------------------------------------------------------------

def _corpus_files():
    files = sorted(CORPUS.glob("*.onto"))
    assert AV in files
    return files


@pytest.mark.parametrize("path", _corpus_files(), ids=lambda p: p.name)
def test_round_trip_corpus(path: Path):
    o = parse_ontology(path.read_text(encoding="utf-8"))
    text = serialize_ontology(o)
    assert parse_ontology(text) == o
    assert serialize_ontology(parse_ontology(text)) == text


def test_empty_serializes_to_header_only():
    text = serialize_ontology(Ontology())
    assert all(line.startswith("#") for line in text.splitlines() if line.strip())
    assert parse_ontology(text) == Ontology()


def test_round_trip_keeps_fresh_marker():
    src = HEADER + "RULE s defeasible(p): Car(?x) => owns(?newo,?x)"
    o = parse_ontology(src)
    head = o.rules[0].head
    assert head.args[0].fresh
    again = parse_ontology(serialize_ontology(o))
    assert again == o and again.rules[0].head.args[0].fresh


concept_names = st.sampled_from(["A", "B", "C", "D"])
role_names = st.sampled_from(["r", "s"])
lhs_concepts = st.one_of(
    concept_names.map(Atomic),
    st.tuples(concept_names, concept_names).map(lambda t: And(Atomic(t[0]), Atomic(t[1]))),
    st.tuples(role_names, concept_names).map(lambda t: Exists(t[0], Atomic(t[1]))),
)
rhs_concepts = st.one_of(
    concept_names.map(Atomic),
    concept_names.map(lambda c: Not(Atomic(c))),
    st.tuples(concept_names, concept_names).map(lambda t: Or(Atomic(t[0]), Atomic(t[1]))),
    st.tuples(concept_names, concept_names).map(lambda t: And(Atomic(t[0]), Atomic(t[1]))),
    st.tuples(role_names, concept_names).map(lambda t: Exists(t[0], Atomic(t[1]))),
    st.tuples(role_names, concept_names).map(lambda t: ForAll(t[0], Atomic(t[1]))),
)


@st.composite
def ontologies(draw):
    principles = tuple(PrincipleDecl(f"p{i}", f"principle {i}") for i in range(draw(st.integers(1, 3))))
    pids = [p.id for p in principles]
    tbox = []
    for i in range(draw(st.integers(0, 4))):
        defeasible = draw(st.booleans())
        tbox.append(
            TBoxAxiom(
                f"t{i}",
                draw(lhs_concepts),
                draw(rhs_concepts),
                AxiomForm.SUBSUMPTION,
                Mode.DEFEASIBLE if defeasible else Mode.STRICT,
                draw(st.sampled_from(pids)) if defeasible else None,
            )
        )
    abox = []
    for _ in range(draw(st.integers(0, 4))):
        if draw(st.booleans()):
            lit = Literal(draw(concept_names), (Individual(draw(st.sampled_from(["a", "b"]))),), draw(st.booleans()))
        else:
            lit = Literal(draw(role_names), (Individual("a"), Individual("b")), draw(st.booleans()))
        if ABoxAssertion(lit) not in abox:
            abox.append(ABoxAssertion(lit))
    rules = []
    if draw(st.booleans()):
        rules.append(
            RuleDecl("x1", Mode.DEFEASIBLE, (parse_literal("A(?x)"),), parse_literal("~B(?x)"), pids[0])
        )
    priorities = ()
    if len(pids) > 1 and draw(st.booleans()):
        priorities = (PriorityDecl(pids[1], pids[0]),)
    return Ontology(tuple(tbox), tuple(abox), principles, priorities, tuple(rules))


@settings(max_examples=150, deadline=None)
@given(ontologies())
def test_round_trip_generated(o):
    assert parse_ontology(serialize_ontology(o)) == o
