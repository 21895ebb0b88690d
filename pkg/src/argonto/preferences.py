"""Attacks, the democratic last-link argument ordering, and defeats."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .engine import Argument, ArgumentStore
from .logic import Literal, natural_key
from .ontology import Preorder

UNDERCUT = "undercut"
REBUT = "rebut"
UNDERMINE = "undermine"


class Attack(NamedTuple):
    attacker: str
    target: str
    locus: str
    kind: str


def _attack_sort_key(a: Attack):
    return (natural_key(a.attacker), natural_key(a.target), natural_key(a.locus), a.kind)


def compute_attacks(store: ArgumentStore) -> list:
    """Every (attacker, target, locus, kind) triple.

    An attack on a sub-argument (the locus) is an attack on every stored
    argument containing it.
    """
    out = set()
    for alpha in store:
        c = alpha.conclusion
        if not isinstance(c, Literal):
            continue
        neg = c.complement()
        if c.is_naming and c.negated:
            norm = c.args[0].name
            for beta in store:
                if beta.top_rule == norm and not beta.strict_top:
                    for target in store.supers(beta.id):
                        out.add(Attack(alpha.id, target, beta.id, UNDERCUT))
        for beta in store.concluding(neg):
            if beta.defeasible_top:
                kind = REBUT
            elif beta.is_premise:
                kind = UNDERMINE
            else:
                continue
            for target in store.supers(beta.id):
                out.add(Attack(alpha.id, target, beta.id, kind))
    return sorted(out, key=_attack_sort_key)


def democratic_le(lower: Iterable[str], upper: Iterable[str], order: Preorder) -> bool:
    """``lower ⊴ upper`` on LastPrin sets.

    A norm-free side (empty set) sits strictly above every side with norms;
    two empty sets are equivalent.
    """
    b, a = frozenset(lower), frozenset(upper)
    if not b:
        return not a
    if not a:
        return True
    return all(any(order.leq(p, q) for q in a) for p in b)


@dataclass(frozen=True)
class PreferenceModel:
    order: Preorder

    def le(self, b: Argument, a: Argument) -> bool:
        return democratic_le(b.last_prin, a.last_prin, self.order)

    def lt(self, b: Argument, a: Argument) -> bool:
        return self.le(b, a) and not self.le(a, b)


def compare_democratic(b: Argument, a: Argument, pm: PreferenceModel) -> tuple:
    """Return ``(b ⪯ a, a ⪯ b)``."""
    return pm.le(b, a), pm.le(a, b)


@dataclass(frozen=True)
class DefeatGraph:
    arguments: tuple
    attacks: tuple
    defeats: frozenset

    def __post_init__(self):
        attackers: dict = {a: [] for a in self.arguments}
        attacked: dict = {a: [] for a in self.arguments}
        for x, y in sorted(self.defeats, key=lambda p: (natural_key(p[0]), natural_key(p[1]))):
            attackers[y].append(x)
            attacked[x].append(y)
        object.__setattr__(self, "_attackers", attackers)
        object.__setattr__(self, "_attacked", attacked)

    @classmethod
    def from_pairs(cls, arguments: Iterable[str], defeats: Iterable[tuple]) -> "DefeatGraph":
        return cls(tuple(arguments), (), frozenset(defeats))

    def defeaters(self, ident: str) -> list:
        return self._attackers[ident]

    def defeated_by(self, ident: str) -> list:
        return self._attacked[ident]

    def attack_pairs(self) -> frozenset:
        return frozenset((a.attacker, a.target) for a in self.attacks)

    def sorted_defeats(self) -> list:
        return sorted(self.defeats, key=lambda p: (natural_key(p[0]), natural_key(p[1])))

    def to_json(self, store: ArgumentStore = None) -> dict:
        return {
            "arguments": store.to_json() if store is not None else list(self.arguments),
            "attacks": [a._asdict() for a in self.attacks],
            "defeats": [list(p) for p in self.sorted_defeats()],
        }

    def to_apx(self) -> str:
        lines = [f"arg({a})." for a in self.arguments]
        lines += [f"att({x},{y})." for x, y in self.sorted_defeats()]
        return "\n".join(lines) + "\n"


def compute_defeats(store: ArgumentStore, attacks: Iterable[Attack], pm: PreferenceModel) -> DefeatGraph:
    """Undercuts always defeat; rebuts and undermines unless attacker ≺ target.

    The comparison is against the whole attacked argument, not the locus.
    """
    attacks = tuple(attacks)
    defeats = set()
    for att in attacks:
        pair = (att.attacker, att.target)
        if pair in defeats:
            continue
        if att.kind == UNDERCUT or not pm.lt(store[att.attacker], store[att.target]):
            defeats.add(pair)
    return DefeatGraph(tuple(store.ids()), attacks, frozenset(defeats))


def parse_apx(text: str) -> DefeatGraph:
    """Read ``arg(a).`` / ``att(a,b).`` lines."""
    args, atts = [], set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("%", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"arg\(\s*([^,()\s]+)\s*\)\.", line)
        if m:
            if m.group(1) not in args:
                args.append(m.group(1))
            continue
        m = re.fullmatch(r"att\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)\.", line)
        if m:
            atts.add((m.group(1), m.group(2)))
            continue
        raise ValueError(f"line {lineno}: not an apx statement: {line!r}")
    unknown = {x for pair in atts for x in pair} - set(args)
    if unknown:
        raise ValueError(f"attacks mention undeclared arguments: {sorted(unknown)}")
    return DefeatGraph.from_pairs(args, atts)
