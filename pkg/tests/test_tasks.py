import pytest
from av_reference import COLLECTIVE, EXTENSION_SWAPPED, ARGUMENTS

from argonto import (
    assertion_acceptance,
    collective_acceptance,
    compile_ontology,
    concepts_of_individual,
    consistency_check,
    explain,
    instance_check,
    instances_of_concept,
    parse_concept,
    parse_ontology,
)
from argonto.semantics import SEMANTICS
from argonto.tasks import CREDULOUS, SCEPTICAL, NotAccepted, UnknownAssertion

RIVALS = (
    'PRINCIPLE p1 "one"\nPRINCIPLE p2 "two"\n'
    "RULE n1 defeasible(p1): a(?x) => B(?x)\n"
    "RULE n2 defeasible(p2): a(?x) => D(?x)\n"
    "RULE s strict: B(?x) -> ~D(?x)\n"
    "ABOX a(k)\n"
)


@pytest.fixture(scope="module")
def rivals():
    return compile_ontology(parse_ontology(RIVALS))


def test_consistency(av):
    res = consistency_check(av)
    assert res.answer is False and res.witnesses
    assert consistency_check(compile_ontology(parse_ontology(""))).answer is True
    direct = consistency_check(compile_ontology(parse_ontology("ABOX a(c)\nABOX ~a(c)")))
    assert direct.answer is False
    assert {(w["attacker"], w["target"]) for w in direct.witnesses} == {("A1", "A2"), ("A2", "A1")}


def test_acceptance_witnesses(av, av_swapped, av_map):
    m = av_map
    for sem in SEMANTICS:
        res = assertion_acceptance(av, "LeaveCar(PS1)", SCEPTICAL, sem)
        assert res.answer and set(res.witnesses) == {m[19], m[21]}
        res = assertion_acceptance(av_swapped, "~LeaveCar(PS1)", SCEPTICAL, sem)
        assert res.answer and res.witnesses == [m[9]]
        assert not assertion_acceptance(av_swapped, "LeaveCar(PS1)", SCEPTICAL, sem).answer


def test_unattacked_premise_always_accepted(av):
    for sem in SEMANTICS:
        for mode in (SCEPTICAL, CREDULOUS):
            assert assertion_acceptance(av, "Driver(PS1)", mode, sem).answer


def test_unknown_predicate_flagged(av):
    res = assertion_acceptance(av, "Flying(PS1)")
    assert res.answer is False and "unknown predicate" in res.diagnostics[0]


def test_leave_car_never_both(av, av_swapped):
    for p in (av, av_swapped):
        for sem in SEMANTICS:
            both = [assertion_acceptance(p, x, SCEPTICAL, sem).answer for x in ("LeaveCar(PS1)", "~LeaveCar(PS1)")]
            assert both != [True, True]


def test_witnesses_are_justified_and_modes_monotone(av, rivals):
    for p in (av, rivals):
        for sem in SEMANTICS:
            for phi in {str(a.conclusion) for a in p.store}:
                s = assertion_acceptance(p, phi, SCEPTICAL, sem)
                c = assertion_acceptance(p, phi, CREDULOUS, sem)
                assert set(s.witnesses) <= p.justified(SCEPTICAL, sem)
                if s.answer:
                    assert c.answer


def test_instance_checks(av, av_swapped, av_map):
    m = av_map
    for p in (av, av_swapped):
        assert instance_check(p, "PS1", parse_concept("Driver AND Intoxicated")).answer
    res = instance_check(av, "PS1", parse_concept("EXISTS hitAndRun.Injury"))
    assert res.answer and set(res.witnesses) == {m[3], m[4]}
    assert not instance_check(av, "Injury1", parse_concept("FORALL hitAndRun.Injury")).answer
    assert instance_check(av, "PS1", parse_concept("FORALL hitAndRun.Injury")).answer
    assert instance_check(av, "PS1", parse_concept("NOT Sober")).answer
    assert not instance_check(av, "PS1", parse_concept("Sober")).answer
    assert instance_check(av, "PS1", parse_concept("Sober OR Driver")).answer


def test_instance_agrees_with_acceptance_for_atomic(av):
    for concept in ("Driver", "Sober", "LeaveCar", "TakeCriminalResponsibility", "Injury"):
        for ind in ("PS1", "Injury1"):
            a = instance_check(av, ind, parse_concept(concept)).answer
            b = assertion_acceptance(av, f"{concept}({ind})").answer
            assert a == b


def test_same_extension_flag(rivals):
    both = parse_concept("B AND D")
    assert instance_check(rivals, "k", both, CREDULOUS, "pr").answer
    assert not instance_check(rivals, "k", both, CREDULOUS, "pr", same_extension=True).answer
    assert not instance_check(rivals, "k", both, SCEPTICAL, "pr").answer


def test_collective(av, av_swapped, av_map):
    assert [set(x) for x in collective_acceptance(av, "co")] == [COLLECTIVE]
    swapped = {ARGUMENTS[i][0] for i in EXTENSION_SWAPPED}
    (got,) = collective_acceptance(av_swapped, "co")
    assert set(got) == swapped and "~LeaveCar(PS1)" in got and "LeaveCar(PS1)" not in got
    assert collective_acceptance(compile_ontology(parse_ontology("")), "co") == [[]]


def test_instances_and_concepts(av):
    assert instances_of_concept(av, "TakeCriminalResponsibility") == {"PS1"}
    assert concepts_of_individual(av, "Injury1") == {"Injury", "NeedEmergencyAid"}
    assert instances_of_concept(av, "Unicorn") == set()


def test_explain_leave_car(av, av_map):
    m = av_map
    rep = explain(av, "LeaveCar(PS1)", SCEPTICAL, "gr", norms_only=True)
    by = {e.argument: e for e in rep.explanations}
    assert set(by) == {m[19], m[21]}
    assert by[m[19]].premises == ["CauseAccident(PS1)", "Injury(Injury1)"] and by[m[19]].rules == ["r8"]
    assert by[m[21]].rules == ["r9"] and "NeedEmergencyAid(Injury1)" in by[m[21]].premises
    assert all(e.why == [] for e in rep.explanations)
    assert rep.ordering == ["p2<p1"]
    full = explain(av, "LeaveCar(PS1)")
    assert {e.argument: e.rules for e in full.explanations}[m[19]] == ["r8", "r11"]


def test_explain_stay(av_swapped, av_map):
    m = av_map
    rep = explain(av_swapped, "~LeaveCar(PS1)", SCEPTICAL, "gr")
    (e,) = rep.explanations
    assert (e.premises, e.rules) == (["Intoxicated(PS1)"], ["r2"])
    assert e.why == [{"argument": m[18], "premises": ["Intoxicated(PS1)"], "rules": ["r10'"]}]
    assert rep.ordering == ["p1<p2"]


def test_explain_defenders_defend(av, av_swapped):
    for p in (av, av_swapped):
        for phi in {str(a.conclusion) for a in p.store}:
            try:
                rep = explain(p, phi)
            except NotAccepted:
                continue
            for e in rep.explanations:
                defenders = {w["argument"] for w in e.why}
                for d in defenders:
                    assert any(t in p.graph.defeaters(e.argument) for t in p.graph.defeated_by(d))
                # how-part only mentions premises and known rules
                assert set(e.premises) <= {str(k) for k in p.theory.premises}
                assert all(p.theory.has_rule(r) for r in e.rules)


def test_explain_premise(av):
    (e,) = explain(av, "Driver(PS1)").explanations
    assert (e.premises, e.rules, e.why) == (["Driver(PS1)"], [], [])


def test_explain_errors(av):
    with pytest.raises(NotAccepted):
        explain(av, "~LeaveCar(PS1)")
    with pytest.raises(UnknownAssertion):
        explain(av, "Flying(PS1)")
