"""Argumentation-based reasoning over description-logic legal ontologies."""

from .engine import Argument, ArgumentStore, construct_arguments, last_norms
from .grounding import BudgetExceeded, strict_closure
from .ontology import Ontology, Preorder, PriorityDecl
from .preferences import (
    Attack,
    DefeatGraph,
    PreferenceModel,
    compare_democratic,
    compute_attacks,
    compute_defeats,
)
from .semantics import Extension, enumerate_extensions, justification
from .syntax import OntologySyntaxError, parse_concept, parse_ontology, serialize_ontology
from .tasks import (
    Pipeline,
    assertion_acceptance,
    collective_acceptance,
    compile_ontology,
    concepts_of_individual,
    consistency_check,
    explain,
    instance_check,
    instances_of_concept,
)
from .theory import ArgumentationTheory, Rule
from .translation import check_well_defined, translate_axiom, translate_ontology, transpose_strict

__version__ = "0.1.0"

__all__ = [
    "Argument",
    "ArgumentStore",
    "construct_arguments",
    "last_norms",
    "BudgetExceeded",
    "strict_closure",
    "Ontology",
    "Preorder",
    "PriorityDecl",
    "Attack",
    "DefeatGraph",
    "PreferenceModel",
    "compare_democratic",
    "compute_attacks",
    "compute_defeats",
    "Extension",
    "enumerate_extensions",
    "justification",
    "OntologySyntaxError",
    "parse_concept",
    "parse_ontology",
    "serialize_ontology",
    "Pipeline",
    "assertion_acceptance",
    "collective_acceptance",
    "compile_ontology",
    "concepts_of_individual",
    "consistency_check",
    "explain",
    "instance_check",
    "instances_of_concept",
    "ArgumentationTheory",
    "Rule",
    "check_well_defined",
    "translate_axiom",
    "translate_ontology",
    "transpose_strict",
]
