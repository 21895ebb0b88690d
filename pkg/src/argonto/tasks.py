"""User-facing queries over a compiled ontology."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .engine import ArgumentStore, construct_arguments
from .logic import Individual, Literal, natural_key, parse_literal
from .ontology import And, Atomic, Exists, ForAll, Not, Ontology, Or
from .preferences import DefeatGraph, PreferenceModel, compute_attacks, compute_defeats
from .semantics import GROUNDED, JustificationStatus, enumerate_extensions, justification
from .theory import ArgumentationTheory
from .translation import translate_ontology

SCEPTICAL, CREDULOUS = "sceptical", "credulous"


class NotAccepted(ValueError):
    """The assertion has arguments but none is justified."""


class UnknownAssertion(ValueError):
    """No argument concludes the assertion at all."""


@dataclass
class Pipeline:
    """Theory, arguments, attacks and defeats for one ontology + ordering.

    Products are computed on first use and cached.
    """

    ontology: Ontology
    transpose: bool = True
    table_verbatim: bool = True
    max_skolem_depth: int = 1
    max_arguments: int = 100_000
    node_limit: int = 1_000_000

    @cached_property
    def theory(self) -> ArgumentationTheory:
        return translate_ontology(self.ontology, self.transpose, self.table_verbatim)

    @cached_property
    def store(self) -> ArgumentStore:
        return construct_arguments(self.theory, self.max_skolem_depth, self.max_arguments)

    @cached_property
    def attacks(self) -> list:
        return compute_attacks(self.store)

    @cached_property
    def preferences(self) -> PreferenceModel:
        return PreferenceModel(self.theory.preorder)

    @cached_property
    def graph(self) -> DefeatGraph:
        return compute_defeats(self.store, self.attacks, self.preferences)

    @cached_property
    def _extensions(self) -> dict:
        return {}

    def extensions(self, semantics: str = GROUNDED) -> list:
        if semantics not in self._extensions:
            self._extensions[semantics] = enumerate_extensions(self.graph, semantics, self.node_limit)
        return self._extensions[semantics]

    def status(self, semantics: str = GROUNDED) -> JustificationStatus:
        return justification(self.graph, semantics, self.extensions(semantics))

    def justified(self, mode: str, semantics: str) -> frozenset:
        st = self.status(semantics)
        if mode == SCEPTICAL:
            return st.sceptical
        if mode == CREDULOUS:
            return st.credulous
        raise ValueError(f"unknown mode {mode!r}")

    def priority_strings(self) -> list:
        return [str(d) for d in self.ontology.priorities]


def compile_ontology(o: Ontology, priorities=None, **options) -> Pipeline:
    """Build a :class:`Pipeline`; ``priorities`` replaces the file's PRIORITY lines."""
    if priorities is not None:
        o = o.with_priorities(priorities)
    return Pipeline(o, **options)


@dataclass
class QueryResult:
    task: str
    answer: object
    mode: Optional[str] = None
    semantics: Optional[str] = None
    witnesses: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    input: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        answer = self.answer
        if isinstance(answer, (set, frozenset)):
            answer = sorted(answer, key=natural_key)
        return {
            "task": self.task,
            "input": self.input,
            "semantics": self.semantics,
            "mode": self.mode,
            "answer": answer,
            "witnesses": self.witnesses,
            "diagnostics": self.diagnostics,
        }


def _sorted_ids(ids) -> list:
    return sorted(ids, key=natural_key)


def _known_predicates(p: Pipeline) -> set:
    preds = {name for name, _ in p.ontology.predicates}
    for r in p.theory.rules:
        for f in r.body + (r.head,):
            for lit in (f.left, f.right) if not isinstance(f, Literal) else (f,):
                preds.add(lit.predicate)
    preds.update(k.predicate for k in p.theory.premises)
    return preds


# -- consistency -----------------------------------------------------------

def consistency_check(p: Pipeline, sample: int = 5) -> QueryResult:
    """Consistent iff no constructed argument attacks another."""
    attacks = p.attacks
    witnesses = []
    seen = set()
    # one witness per conflicting pair of conclusions, loci only, to keep it short
    for a in attacks:
        if a.target != a.locus:
            continue
        key = (a.attacker, a.locus)
        if key in seen:
            continue
        seen.add(key)
        witnesses.append(
            {
                "attacker": a.attacker,
                "target": a.target,
                "kind": a.kind,
                "attacker_conclusion": str(p.store[a.attacker].conclusion),
                "target_conclusion": str(p.store[a.target].conclusion),
            }
        )
        if len(witnesses) >= sample:
            break
    return QueryResult(
        task="check",
        answer=not attacks,
        witnesses=witnesses,
        diagnostics=[f"{len(attacks)} attack triple(s) among {len(p.store)} argument(s)"] if attacks else [],
    )


# -- assertion acceptance -------------------------------------------------------

def _justified_concluding(p: Pipeline, phi, mode: str, semantics: str) -> list:
    ok = p.justified(mode, semantics)
    return [a.id for a in p.store.concluding(phi) if a.id in ok]


def assertion_acceptance(p: Pipeline, x, mode: str = SCEPTICAL, semantics: str = GROUNDED) -> QueryResult:
    phi = parse_literal(x, allow_variables=False) if isinstance(x, str) else x
    diagnostics = []
    if phi.predicate not in _known_predicates(p):
        diagnostics.append(f"unknown predicate {phi.predicate!r}")
    elif not p.store.concluding(phi):
        diagnostics.append(f"no argument concludes {phi}")
    witnesses = _justified_concluding(p, phi, mode, semantics)
    return QueryResult(
        task="accept",
        answer=bool(witnesses),
        mode=mode,
        semantics=semantics,
        witnesses=witnesses,
        diagnostics=diagnostics,
        input={"assertion": str(phi)},
    )


# -- instance checking ----------------------------------------------------------

def _unary(name: str, ind: str, negated: bool = False) -> Literal:
    return Literal(name, (Individual(ind),), negated)


def instance_check(
    p: Pipeline,
    individual: str,
    concept,
    mode: str = SCEPTICAL,
    semantics: str = GROUNDED,
    same_extension: bool = False,
) -> QueryResult:
    """Is ``individual`` an instance of ``concept``?

    Each component is witnessed by its own justified argument. With
    ``same_extension`` (credulous mode) all witnesses must also share one
    extension.
    """
    exts = [frozenset(e.members) for e in p.extensions(semantics)]
    justified = p.justified(mode, semantics)

    def witnesses_for(phi) -> list:
        return [a.id for a in p.store.concluding(phi) if a.id in justified]

    def together(groups: list) -> Optional[list]:
        """Pick one witness per group; with same_extension they must co-occur."""
        if any(not g for g in groups):
            return None
        if not same_extension or mode == SCEPTICAL:
            return [g[0] for g in groups]
        for e in exts:
            picks = [next((w for w in g if w in e), None) for g in groups]
            if all(w is not None for w in picks):
                return picks
        return None

    def role_fillers() -> dict:
        fillers = {}
        for phi in p.store.conclusions():
            if (
                isinstance(phi, Literal)
                and not phi.negated
                and phi.predicate == concept.role
                and phi.arity == 2
                and phi.args[0].name == individual
            ):
                ws = witnesses_for(phi)
                if ws:
                    fillers[phi.args[1].name] = ws
        return fillers

    answer, witnesses = False, []
    if isinstance(concept, Atomic):
        witnesses = witnesses_for(_unary(concept.name, individual))
        answer = bool(witnesses)
    elif isinstance(concept, Not):
        witnesses = witnesses_for(_unary(concept.concept.name, individual, True))
        answer = bool(witnesses)
    elif isinstance(concept, And) and all(isinstance(c, (Atomic, Not)) for c in (concept.left, concept.right)):
        groups = [witnesses_for(_concept_literal(c, individual)) for c in (concept.left, concept.right)]
        picked = together(groups)
        answer, witnesses = picked is not None, picked or []
    elif isinstance(concept, Or):
        groups = [witnesses_for(_concept_literal(c, individual)) for c in (concept.left, concept.right)]
        witnesses = groups[0] + groups[1]
        answer = bool(witnesses)
    elif isinstance(concept, Exists):
        for filler, role_ws in sorted(role_fillers().items(), key=lambda kv: natural_key(kv[0])):
            picked = together([role_ws, witnesses_for(_unary(concept.concept.name, filler))])
            if picked is not None:
                answer, witnesses = True, picked
                break
    elif isinstance(concept, ForAll):
        fillers = role_fillers()
        answer = bool(fillers)
        for filler, role_ws in sorted(fillers.items(), key=lambda kv: natural_key(kv[0])):
            picked = together([role_ws, witnesses_for(_unary(concept.concept.name, filler))])
            if picked is None:
                answer, witnesses = False, []
                break
            witnesses.extend(w for w in picked if w not in witnesses)
    else:
        raise ValueError(f"unsupported class expression for instance checking: {concept}")

    return QueryResult(
        task="instance",
        answer=answer,
        mode=mode,
        semantics=semantics,
        witnesses=witnesses if answer else [],
        input={"individual": individual, "class": str(concept)},
        diagnostics=["witnesses must share one extension"] if same_extension and mode == CREDULOUS else [],
    )


def _concept_literal(c, individual: str) -> Literal:
    if isinstance(c, Atomic):
        return _unary(c.name, individual)
    return _unary(c.concept.name, individual, True)


# -- collective acceptance and draft management ------------------------------------

def collective_acceptance(p: Pipeline, semantics: str = GROUNDED) -> list:
    """One sorted conclusion set per extension."""
    out = []
    for e in p.extensions(semantics):
        concl = {str(p.store[a].conclusion) for a in e.members}
        out.append(sorted(concl))
    return out


def _accepted_literals(p: Pipeline, mode: str, semantics: str) -> set:
    ok = p.justified(mode, semantics)
    return {p.store[a].conclusion for a in ok}


def instances_of_concept(p: Pipeline, concept: str, mode: str = SCEPTICAL, semantics: str = GROUNDED) -> set:
    return {
        phi.args[0].name
        for phi in _accepted_literals(p, mode, semantics)
        if isinstance(phi, Literal) and phi.predicate == concept and phi.arity == 1 and not phi.negated
    }


def concepts_of_individual(p: Pipeline, individual: str, mode: str = SCEPTICAL, semantics: str = GROUNDED) -> set:
    return {
        phi.predicate
        for phi in _accepted_literals(p, mode, semantics)
        if isinstance(phi, Literal)
        and phi.arity == 1
        and not phi.negated
        and not phi.is_naming
        and phi.args[0].name == individual
    }


# -- explanations ---------------------------------------------------------------

@dataclass
class Explanation:
    target: str
    argument: str
    premises: list
    rules: list
    why: list
    ordering: list
    extension: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "argument": self.argument,
            "how": {"premises": self.premises, "rules": self.rules},
            "why": self.why,
            "ordering": self.ordering,
            "extension": self.extension,
        }


@dataclass
class ExplanationReport:
    target: str
    mode: str
    semantics: str
    explanations: list
    ordering: list
    norms_only: bool = False

    def combined(self) -> dict:
        """Union of all how- and why-parts, as a single explanation set."""
        prem, rules, why_prem, why_rules = set(), set(), set(), set()
        for e in self.explanations:
            prem.update(e.premises)
            rules.update(e.rules)
            for w in e.why:
                why_prem.update(w["premises"])
                why_rules.update(w["rules"])
        return {
            "premises": sorted(prem),
            "rules": sorted(rules, key=natural_key),
            "why_premises": sorted(why_prem),
            "why_rules": sorted(why_rules, key=natural_key),
            "ordering": self.ordering,
        }

    def to_json(self) -> dict:
        return {
            "task": "explain",
            "input": {"assertion": self.target, "norms_only": self.norms_only},
            "semantics": self.semantics,
            "mode": self.mode,
            "answer": True,
            "witnesses": [e.argument for e in self.explanations],
            "explanations": [e.to_json() for e in self.explanations],
            "combined": self.combined(),
            "diagnostics": [],
        }


def _content(p: Pipeline, ident: str, norms_only: bool = False) -> tuple:
    a = p.store[ident]
    rules = a.def_rules if norms_only else a.rules
    return sorted(str(x) for x in a.premises), sorted(rules, key=natural_key)


def explain(
    p: Pipeline,
    x,
    mode: str = SCEPTICAL,
    semantics: str = GROUNDED,
    norms_only: bool = False,
) -> ExplanationReport:
    """How each justified argument for ``x`` is built and what defends it.

    The why-part lists, for the first extension containing the argument,
    every member that defeats one of its defeaters. ``norms_only`` restricts
    the how-part rule listing to defeasible norms.
    """
    phi = parse_literal(x, allow_variables=False) if isinstance(x, str) else x
    concluding = p.store.concluding(phi)
    if not concluding:
        raise UnknownAssertion(f"no argument concludes {phi}")
    justified = p.justified(mode, semantics)
    chosen = [a for a in concluding if a.id in justified]
    if not chosen:
        raise NotAccepted(f"{phi} is not {mode}ly accepted under {semantics}")
    exts = p.extensions(semantics)
    ordering = p.priority_strings()
    out = []
    for a in chosen:
        idx = next(i for i, e in enumerate(exts) if a.id in e)
        members = set(exts[idx].members)
        defenders = set()
        for d in p.graph.defeaters(a.id):
            defenders.update(b for b in p.graph.defeaters(d) if b in members)
        why = []
        for b in _sorted_ids(defenders):
            prem, rules = _content(p, b)
            why.append({"argument": b, "premises": prem, "rules": rules})
        prem, rules = _content(p, a.id, norms_only)
        out.append(Explanation(str(phi), a.id, prem, rules, why, ordering, idx))
    return ExplanationReport(str(phi), mode, semantics, out, ordering, norms_only)
