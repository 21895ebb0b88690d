"""Grounding of first-order rules against a growing set of ground formulas.

Body literals are matched left to right against concluded formulas. Head
variables that the body leaves unbound come in two kinds:

* fresh (``?new...``) variables get a memoised skolem constant per
  ``(rule, variable, body binding)``, refused beyond the depth limit;
* ordinary head-only variables (as in a transposed ``¬B(x) → ¬P(x, y)``) are
  bound to every value under which the head atom, with either sign, has
  already been concluded. They never invent individuals.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator

from .logic import Disjunction, Individual, Literal, Variable, match


class BudgetExceeded(RuntimeError):
    pass


class FactIndex:
    def __init__(self, formulas: Iterable = ()):
        self._lits: dict = defaultdict(list)
        self._atoms: dict = defaultdict(list)
        self._disj: list = []
        self._seen: set = set()
        for f in formulas:
            self.add(f)

    def __contains__(self, f) -> bool:
        return f in self._seen

    def __len__(self) -> int:
        return len(self._seen)

    def __iter__(self):
        return iter(self._seen)

    def add(self, f) -> bool:
        if f in self._seen:
            return False
        self._seen.add(f)
        if isinstance(f, Disjunction):
            self._disj.append(f)
        else:
            self._lits[(f.predicate, f.negated, f.arity)].append(f)
            self._atoms[(f.predicate, f.arity)].append(f.atom())
        return True

    def candidates(self, pattern):
        if isinstance(pattern, Disjunction):
            return self._disj
        return self._lits.get((pattern.predicate, pattern.negated, pattern.arity), ())

    def atoms(self, pattern: Literal):
        return self._atoms.get((pattern.predicate, pattern.arity), ())


class SkolemFactory:
    def __init__(self, max_depth: int = 1):
        self.max_depth = max_depth
        self._memo: dict = {}
        self.blocked: list = []

    def make(self, rule_id: str, var: Variable, subst: dict):
        key = tuple(sorted((v.name, ind.name) for v, ind in subst.items()))
        origin = (rule_id, var.name, key)
        if origin in self._memo:
            return self._memo[origin]
        depth = 1 + max((ind.depth for ind in subst.values()), default=0)
        if depth > self.max_depth:
            note = f"skolem depth {depth} > {self.max_depth}: {rule_id} not fired for {dict(key)}"
            if note not in self.blocked:
                self.blocked.append(note)
            return None
        inner = ",".join(name for _, name in key)
        sk = Individual(f"_:{rule_id}.{var.name}({inner})", depth=depth, origin=origin)
        self._memo[origin] = sk
        return sk


def body_substitutions(body: tuple, facts: FactIndex) -> Iterator[dict]:
    def rec(i: int, subst: dict):
        if i == len(body):
            yield subst
            return
        for g in list(facts.candidates(body[i])):
            s = match(body[i], g, subst)
            if s is not None:
                yield from rec(i + 1, s)

    yield from rec(0, {})


def _head_literals(head) -> list:
    return [head.left, head.right] if isinstance(head, Disjunction) else [head]


def head_instances(rule, subst: dict, facts: FactIndex, skolems: SkolemFactory) -> Iterator[tuple]:
    """Yield ``(ground head, full substitution)`` for one body match."""
    unbound = [v for v in rule.head_only_variables() if v not in subst]
    loose = [v for v in unbound if not v.fresh]

    def bind_loose(lits: list, s: dict):
        pending = [l for l in lits if any(v in loose and v not in s for v in l.variables())]
        if not pending:
            yield s
            return
        first, rest = pending[0], pending[1:]
        pattern = first.substitute(s).atom()
        for atom in list(facts.atoms(pattern)):
            s2 = match(pattern, atom, s)
            if s2 is not None:
                yield from bind_loose(rest, s2)

    for s in bind_loose(_head_literals(rule.head), subst):
        full = dict(s)
        ok = True
        for v in unbound:
            if v.fresh:
                sk = skolems.make(rule.id, v, s)
                if sk is None:
                    ok = False
                    break
                full[v] = sk
        if ok:
            yield rule.head.substitute(full), full


def strict_closure(
    q: Iterable,
    rules: Iterable,
    max_skolem_depth: int = 1,
    max_formulas: int = 100_000,
) -> frozenset:
    """Least fixpoint of the strict rules over the ground formulas ``q``."""
    strict = [r for r in rules if r.strict]
    facts = FactIndex(q)
    skolems = SkolemFactory(max_skolem_depth)
    changed = True
    while changed:
        changed = False
        for r in strict:
            for subst in list(body_substitutions(r.body, facts)):
                for head, _ in list(head_instances(r, subst, facts, skolems)):
                    if facts.add(head):
                        changed = True
                        if len(facts) > max_formulas:
                            raise BudgetExceeded(f"strict closure exceeded {max_formulas} formulas")
    return frozenset(facts)
