"""Complete, grounded and preferred extensions of a defeat graph."""

from __future__ import annotations

from dataclasses import dataclass

from .grounding import BudgetExceeded
from .logic import natural_key
from .preferences import DefeatGraph

COMPLETE, GROUNDED, PREFERRED = "co", "gr", "pr"
SEMANTICS = (COMPLETE, GROUNDED, PREFERRED)

IN, OUT, UNDEC = 1, 2, 3


@dataclass(frozen=True)
class Extension:
    semantics: str
    members: tuple

    def __contains__(self, ident: str) -> bool:
        return ident in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class JustificationStatus:
    semantics: str
    sceptical: frozenset
    credulous: frozenset

    def is_sceptical(self, ident: str) -> bool:
        return ident in self.sceptical

    def is_credulous(self, ident: str) -> bool:
        return ident in self.credulous


def _canonical(members) -> tuple:
    return tuple(sorted(members, key=natural_key))


def grounded_extension(g: DefeatGraph) -> frozenset:
    """Accept undefeated arguments, reject what they defeat, repeat."""
    accepted, rejected = set(), set()
    changed = True
    while changed:
        changed = False
        for a in g.arguments:
            if a in accepted or a in rejected:
                continue
            if all(b in rejected for b in g.defeaters(a)):
                accepted.add(a)
                changed = True
        for a in list(accepted):
            for b in g.defeated_by(a):
                if b not in rejected:
                    rejected.add(b)
                    changed = True
    return frozenset(accepted)


def complete_labellings(g: DefeatGraph, node_limit: int = 1_000_000) -> list:
    """All complete extensions, by three-valued labelling search.

    IN needs every defeater OUT, OUT needs some defeater IN, UNDEC neither.
    The grounded labelling is forced up front; the rest is branched over in
    argument order with unit propagation after every choice.
    """
    args = list(g.arguments)
    nodes = [0]
    results = []

    def propagate(lab: dict) -> bool:
        changed = True
        while changed:
            changed = False
            for a in args:
                ds = g.defeaters(a)
                la = lab.get(a)
                any_in = any(lab.get(d) == IN for d in ds)
                all_out = all(lab.get(d) == OUT for d in ds)
                if any_in:
                    if la is None:
                        lab[a] = OUT
                        changed = True
                    elif la != OUT:
                        return False
                if all_out:
                    if la is None:
                        lab[a] = IN
                        changed = True
                    elif la != IN:
                        return False
                la = lab.get(a)
                if la == IN:
                    for d in ds:
                        if lab.get(d) is None:
                            lab[d] = OUT
                            changed = True
                        elif lab[d] != OUT:
                            return False
                elif la == OUT:
                    open_ = [d for d in ds if lab.get(d) in (None, IN)]
                    if not open_:
                        return False
                    if len(open_) == 1 and lab.get(open_[0]) is None:
                        lab[open_[0]] = IN
                        changed = True
                elif la == UNDEC:
                    if any_in or all_out:
                        return False
                    open_ = [d for d in ds if lab.get(d) != OUT]
                    if len(open_) == 1 and lab.get(open_[0]) is None:
                        lab[open_[0]] = UNDEC
                        changed = True
        return True

    def search(lab: dict):
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise BudgetExceeded(f"extension search exceeded {node_limit} nodes")
        if not propagate(lab):
            return
        free = next((a for a in args if a not in lab), None)
        if free is None:
            results.append(frozenset(a for a in args if lab[a] == IN))
            return
        for value in (IN, OUT, UNDEC):
            child = dict(lab)
            child[free] = value
            search(child)

    search({})
    return results


def enumerate_extensions(g: DefeatGraph, semantics: str = GROUNDED, node_limit: int = 1_000_000) -> list:
    if semantics == GROUNDED:
        return [Extension(GROUNDED, _canonical(grounded_extension(g)))]
    complete = complete_labellings(g, node_limit)
    if semantics == COMPLETE:
        chosen = complete
    elif semantics == PREFERRED:
        chosen = [e for e in complete if not any(e < f for f in complete)]
    else:
        raise ValueError(f"unknown semantics {semantics!r}; expected one of {SEMANTICS}")
    exts = sorted({_canonical(e) for e in chosen}, key=lambda m: [natural_key(x) for x in m])
    return [Extension(semantics, m) for m in exts]


def justification(g: DefeatGraph, semantics: str = GROUNDED, extensions=None) -> JustificationStatus:
    exts = extensions if extensions is not None else enumerate_extensions(g, semantics)
    sets = [frozenset(e.members) for e in exts]
    sceptical = frozenset.intersection(*sets) if sets else frozenset()
    credulous = frozenset().union(*sets) if sets else frozenset()
    return JustificationStatus(semantics, sceptical, credulous)
