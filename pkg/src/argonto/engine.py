"""Exhaustive argument construction by grounded forward chaining.

Premises become arguments first. Then, round by round, every rule instance
whose body formulas are all concluded by stored arguments yields one new
argument per combination of sub-arguments, until a round adds nothing.
An argument is not built if its conclusion already concludes one of its own
sub-arguments; together with the skolem depth bound this keeps the set finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .grounding import BudgetExceeded, FactIndex, SkolemFactory, body_substitutions, head_instances
from .logic import natural_key
from .theory import ArgumentationTheory, Rule

__all__ = ["Argument", "ArgumentStore", "BudgetExceeded", "construct_arguments", "last_norms"]


@dataclass(frozen=True, eq=False)
class Argument:
    id: str
    conclusion: object
    top_rule: Optional[str]
    strict_top: bool
    children: tuple
    premises: frozenset
    sub_ids: frozenset
    def_rules: frozenset
    rules: frozenset
    last_norms: frozenset
    last_prin: frozenset
    sub_conclusions: frozenset

    @property
    def is_premise(self) -> bool:
        return self.top_rule is None

    @property
    def defeasible_top(self) -> bool:
        return self.top_rule is not None and not self.strict_top

    @property
    def kind(self) -> str:
        if self.is_premise:
            return "premise"
        return "strict" if self.strict_top else "defeasible"

    def __repr__(self) -> str:
        return f"<{self.id}: {self.describe()}>"

    def describe(self) -> str:
        if self.is_premise:
            return str(self.conclusion)
        arrow = "->" if self.strict_top else "=>"
        subs = ", ".join(c.id for c in self.children)
        return f"{subs} {arrow}[{self.top_rule}] {self.conclusion}"

    def to_json(self) -> dict:
        key = natural_key
        return {
            "id": self.id,
            "conclusion": str(self.conclusion),
            "topRule": self.top_rule,
            "subs": sorted(self.sub_ids, key=key),
            "children": [c.id for c in self.children],
            "prem": sorted(str(p) for p in self.premises),
            "defRules": sorted(self.def_rules, key=key),
            "rules": sorted(self.rules, key=key),
            "lastNorms": sorted(self.last_norms, key=key),
            "lastPrin": sorted(self.last_prin, key=key),
        }


def _premise_argument(ident: str, phi) -> Argument:
    return Argument(
        id=ident,
        conclusion=phi,
        top_rule=None,
        strict_top=False,
        children=(),
        premises=frozenset([phi]),
        sub_ids=frozenset([ident]),
        def_rules=frozenset(),
        rules=frozenset(),
        last_norms=frozenset(),
        last_prin=frozenset(),
        sub_conclusions=frozenset([phi]),
    )


def _inference_argument(ident: str, rule: Rule, children: tuple, head) -> Argument:
    def union(attr):
        out = frozenset()
        for c in children:
            out |= getattr(c, attr)
        return out

    def_rules = union("def_rules") | ({rule.id} if not rule.strict else frozenset())
    if not def_rules:
        last = frozenset()
    elif not rule.strict:
        last = frozenset([rule.id])
    else:
        last = union("last_norms")
    if rule.strict:
        last_prin = union("last_prin")
    else:
        last_prin = frozenset([rule.principle])
    return Argument(
        id=ident,
        conclusion=head,
        top_rule=rule.id,
        strict_top=rule.strict,
        children=children,
        premises=union("premises"),
        sub_ids=union("sub_ids") | {ident},
        def_rules=def_rules,
        rules=union("rules") | {rule.id},
        last_norms=last,
        last_prin=last_prin,
        sub_conclusions=union("sub_conclusions") | {head},
    )


class ArgumentStore:
    """All constructed arguments, indexed by id and by conclusion."""

    def __init__(self, theory: ArgumentationTheory):
        self.theory = theory
        self.arguments: list = []
        self._by_id: dict = {}
        self._by_conclusion: dict = {}
        self._keys: set = set()
        self._supers: Optional[dict] = None
        self.diagnostics: list = []
        self.rounds = 0

    def __iter__(self) -> Iterator[Argument]:
        return iter(self.arguments)

    def __len__(self) -> int:
        return len(self.arguments)

    def __getitem__(self, ident: str) -> Argument:
        return self._by_id[ident]

    def __contains__(self, ident: str) -> bool:
        return ident in self._by_id

    def ids(self) -> list:
        return [a.id for a in self.arguments]

    def concluding(self, phi) -> list:
        return list(self._by_conclusion.get(phi, ()))

    def conclusions(self) -> list:
        return list(self._by_conclusion)

    def supers(self, ident: str) -> list:
        """Stored arguments having ``ident`` as a sub-argument (itself included)."""
        if self._supers is None:
            sup: dict = {a.id: [] for a in self.arguments}
            for a in self.arguments:
                for s in a.sub_ids:
                    sup[s].append(a.id)
            self._supers = sup
        return self._supers[ident]

    def _add(self, arg: Argument, key) -> None:
        self.arguments.append(arg)
        self._by_id[arg.id] = arg
        self._by_conclusion.setdefault(arg.conclusion, []).append(arg)
        self._keys.add(key)
        self._supers = None

    def to_json(self) -> list:
        return [a.to_json() for a in self.arguments]


def construct_arguments(
    t: ArgumentationTheory,
    max_skolem_depth: int = 1,
    max_arguments: int = 100_000,
) -> ArgumentStore:
    if max_skolem_depth < 0 or max_arguments < 1:
        raise ValueError("limits must be positive")
    store = ArgumentStore(t)
    facts = FactIndex()
    for phi in t.premises:
        if ("K", phi) in store._keys:
            continue
        if len(store) >= max_arguments:
            raise BudgetExceeded(f"argument budget of {max_arguments} exceeded")
        store._add(_premise_argument(f"A{len(store) + 1}", phi), ("K", phi))
        facts.add(phi)

    skolems = SkolemFactory(max_skolem_depth)
    index = {a.id: i for i, a in enumerate(store)}
    while True:
        pending: dict = {}
        for rule in t.rules:
            for subst in list(body_substitutions(rule.body, facts)):
                ground_body = [b.substitute(subst) for b in rule.body]
                choices = [store.concluding(g) for g in ground_body]
                for head, _ in list(head_instances(rule, subst, facts, skolems)):
                    for subs in product(*choices):
                        key = (rule.id, tuple(s.id for s in subs), head)
                        if key in store._keys or key in pending:
                            continue
                        if any(head in s.sub_conclusions for s in subs):
                            continue
                        pending[key] = (rule, subs, head)
        if not pending:
            break
        store.rounds += 1
        order = sorted(
            pending,
            key=lambda k: (natural_key(k[0]), tuple(index[i] for i in k[1]), str(k[2])),
        )
        for key in order:
            if len(store) >= max_arguments:
                raise BudgetExceeded(f"argument budget of {max_arguments} exceeded")
            rule, subs, head = pending[key]
            arg = _inference_argument(f"A{len(store) + 1}", rule, subs, head)
            index[arg.id] = len(store)
            store._add(arg, key)
            facts.add(head)
    store.diagnostics.extend(skolems.blocked)
    return store


def last_norms(a: Argument) -> frozenset:
    return a.last_norms
