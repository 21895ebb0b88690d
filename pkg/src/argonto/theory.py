"""Rules and the argumentation theory compiled from an ontology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .logic import Disjunction, Literal, Variable, naming_atom, natural_key
from .ontology import Mode, Preorder


@dataclass(frozen=True)
class Rule:
    id: str
    body: tuple
    head: Union[Literal, Disjunction]
    mode: Mode
    principle: Optional[str] = None
    origin: str = ""

    def __post_init__(self):
        if (self.mode is Mode.DEFEASIBLE) != (self.principle is not None):
            raise ValueError(f"rule {self.id}: a principle is required iff the rule is defeasible")

    @property
    def strict(self) -> bool:
        return self.mode is Mode.STRICT

    @property
    def name(self) -> Optional[Literal]:
        """The naming atom ``applicable(id)``; strict rules have none."""
        return None if self.strict else naming_atom(self.id)

    def body_variables(self) -> set:
        return {v for f in self.body for v in f.variables()}

    def head_only_variables(self) -> list:
        body = self.body_variables()
        out = []
        for v in self.head.variables():
            if v not in body and v not in out:
                out.append(v)
        return out

    def canonical_key(self) -> tuple:
        """Content identity up to variable renaming and body order."""
        def shape(f):
            if isinstance(f, Disjunction):
                return ("|", shape(f.left), shape(f.right))
            return (f.negated, f.predicate, tuple("?" if isinstance(a, Variable) else a.name for a in f.args))

        renaming: dict = {}

        def rename(f):
            if isinstance(f, Disjunction):
                return ("|", rename(f.left), rename(f.right))
            args = []
            for a in f.args:
                if isinstance(a, Variable):
                    if a not in renaming:
                        renaming[a] = f"v{len(renaming)}"
                    args.append(("var", renaming[a], a.fresh))
                else:
                    args.append(("ind", a.name))
            return (f.negated, f.predicate, tuple(args))

        head = rename(self.head)
        body = sorted(self.body, key=lambda f: (repr(shape(f)), str(f)))
        return (self.mode.value, head, tuple(sorted(repr(rename(f)) for f in body)))

    def __str__(self) -> str:
        arrow = "->" if self.strict else "=>"
        return f"{self.id}: {', '.join(str(b) for b in self.body)} {arrow} {self.head}"


@dataclass(frozen=True)
class ArgumentationTheory:
    """Premises K plus rules R = R_s ∪ N, principles P and the priority preorder."""

    premises: tuple
    rules: tuple
    principles: tuple = ()
    preorder: Preorder = field(default_factory=lambda: Preorder(()), compare=False)
    principle_text: tuple = ()
    diagnostics: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {r.id: r for r in self.rules})

    def rule(self, rule_id: str) -> Rule:
        return self._by_id[rule_id]

    def has_rule(self, rule_id: str) -> bool:
        return rule_id in self._by_id

    @property
    def strict_rules(self) -> tuple:
        return tuple(r for r in self.rules if r.strict)

    @property
    def norms(self) -> tuple:
        return tuple(r for r in self.rules if not r.strict)

    def prin(self, rule_id: str) -> str:
        return self._by_id[rule_id].principle

    def without_rules(self, *rule_ids: str) -> "ArgumentationTheory":
        drop = set(rule_ids)
        return ArgumentationTheory(
            self.premises,
            tuple(r for r in self.rules if r.id not in drop),
            self.principles,
            self.preorder,
            self.principle_text,
            self.diagnostics,
        )

    def with_preorder(self, preorder: Preorder) -> "ArgumentationTheory":
        return ArgumentationTheory(
            self.premises, self.rules, self.principles, preorder, self.principle_text, self.diagnostics
        )

    def to_json(self) -> dict:
        def rule_json(r: Rule) -> dict:
            d = {
                "id": r.id,
                "mode": r.mode.value,
                "body": [str(b) for b in r.body],
                "head": str(r.head),
            }
            if not r.strict:
                d["principle"] = r.principle
                d["name"] = str(r.name)
            if r.origin:
                d["origin"] = r.origin
            return d

        return {
            "premises": [str(p) for p in self.premises],
            "strict_rules": [rule_json(r) for r in sorted(self.strict_rules, key=lambda r: natural_key(r.id))],
            "norms": [rule_json(r) for r in sorted(self.norms, key=lambda r: natural_key(r.id))],
            "principles": list(self.principles),
            "priorities": [str(d) for d in self.preorder.declared],
            "diagnostics": list(self.diagnostics),
        }
