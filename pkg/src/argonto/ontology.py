"""Domain model for description-logic legal ontologies."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Union

from .logic import Disjunction, Literal, natural_key


class Mode(str, Enum):
    STRICT = "strict"
    DEFEASIBLE = "defeasible"


class AxiomForm(str, Enum):
    SUBSUMPTION = "subsumption"
    EQUIVALENCE = "equivalence"
    ROLE_SUBSUMPTION = "role-subsumption"
    ROLE_EQUIVALENCE = "role-equivalence"
    DISJOINTNESS = "disjointness"


# -- concept expressions ---------------------------------------------------

@dataclass(frozen=True)
class Atomic:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    concept: Atomic

    def __str__(self) -> str:
        return f"NOT {self.concept}"


@dataclass(frozen=True)
class And:
    left: "ConceptExpr"
    right: "ConceptExpr"

    def __str__(self) -> str:
        return f"{_wrap(self.left)} AND {_wrap(self.right)}"


@dataclass(frozen=True)
class Or:
    left: Atomic
    right: Atomic

    def __str__(self) -> str:
        return f"{self.left} OR {self.right}"


@dataclass(frozen=True)
class Exists:
    role: str
    concept: Atomic

    def __str__(self) -> str:
        return f"EXISTS {self.role}.{self.concept}"


@dataclass(frozen=True)
class ForAll:
    role: str
    concept: Atomic

    def __str__(self) -> str:
        return f"FORALL {self.role}.{self.concept}"


@dataclass(frozen=True)
class Nothing:
    def __str__(self) -> str:
        return "NOTHING"


ConceptExpr = Union[Atomic, Not, And, Or, Exists, ForAll, Nothing]


def _wrap(c: ConceptExpr) -> str:
    return f"({c})" if isinstance(c, Or) else str(c)


def conjuncts(c: ConceptExpr) -> list:
    if isinstance(c, And):
        return conjuncts(c.left) + conjuncts(c.right)
    return [c]


# -- declarations ------------------------------------------------------------

@dataclass(frozen=True)
class TBoxAxiom:
    id: str
    lhs: Union[ConceptExpr, str]
    rhs: Union[ConceptExpr, str]
    form: AxiomForm
    mode: Mode
    principle: Optional[str] = None

    def __post_init__(self):
        if (self.mode is Mode.DEFEASIBLE) != (self.principle is not None):
            raise ValueError(f"axiom {self.id}: principle required iff defeasible")
        if self.form is AxiomForm.DISJOINTNESS and not isinstance(self.rhs, Nothing):
            raise ValueError(f"axiom {self.id}: disjointness needs NOTHING on the right")


@dataclass(frozen=True)
class ABoxAssertion:
    literal: Literal

    def __post_init__(self):
        if not self.literal.is_ground():
            raise ValueError(f"ABox assertion {self.literal} is not ground")
        if self.literal.arity not in (1, 2):
            raise ValueError(f"ABox assertion {self.literal} must be unary or binary")


@dataclass(frozen=True)
class PrincipleDecl:
    id: str
    text: str = ""


@dataclass(frozen=True)
class PriorityDecl:
    """``lower < higher`` (or ``lower = higher`` when ``equal``)."""

    lower: str
    higher: str
    equal: bool = False

    def __str__(self) -> str:
        return f"{self.lower}{'=' if self.equal else '<'}{self.higher}"


@dataclass(frozen=True)
class RuleDecl:
    id: str
    mode: Mode
    body: tuple
    head: Union[Literal, Disjunction]
    principle: Optional[str] = None

    def __post_init__(self):
        if (self.mode is Mode.DEFEASIBLE) != (self.principle is not None):
            raise ValueError(f"rule {self.id}: principle required iff defeasible")


class Preorder:
    """Reflexive-transitive closure of declared principle priorities."""

    def __init__(self, principles: Iterable[str], priorities: Iterable[PriorityDecl] = ()):
        self.principles = tuple(principles)
        self.declared = tuple(priorities)
        nodes = set(self.principles)
        succ: dict[str, set[str]] = {p: set() for p in nodes}
        for d in self.declared:
            for p in (d.lower, d.higher):
                succ.setdefault(p, set())
            succ[d.lower].add(d.higher)
            if d.equal:
                succ[d.higher].add(d.lower)
        self._up: dict[str, frozenset] = {}
        for p in succ:
            seen = {p}
            stack = [p]
            while stack:
                for q in succ[stack.pop()]:
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
            self._up[p] = frozenset(seen)

    def leq(self, a: str, b: str) -> bool:
        if a == b:
            return True
        return b in self._up.get(a, ())

    def closure(self) -> frozenset:
        return frozenset((a, b) for a, ups in self._up.items() for b in ups)

    def cycles(self) -> list:
        """Groups of distinct principles that are mutually <= ; a diagnostic only."""
        groups = set()
        for a in self._up:
            eq = frozenset(b for b in self._up[a] if self.leq(b, a))
            if len(eq) > 1:
                groups.add(tuple(sorted(eq, key=natural_key)))
        return sorted(groups)


@dataclass(frozen=True)
class Ontology:
    tbox: tuple = ()
    abox: tuple = ()
    principles: tuple = ()
    priorities: tuple = ()
    rules: tuple = ()
    undercuts: tuple = ()
    predicates: tuple = field(default=(), compare=False)

    def principle_ids(self) -> list:
        return [p.id for p in self.principles]

    def preorder(self) -> Preorder:
        return Preorder(self.principle_ids(), self.priorities)

    def with_priorities(self, priorities: Iterable[PriorityDecl]) -> "Ontology":
        return replace(self, priorities=tuple(priorities))
