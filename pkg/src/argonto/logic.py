"""Terms, literals and the small amount of unification the engine needs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union

APPLICABLE = "applicable"
IDENT = r"[A-Za-z_][A-Za-z0-9_']*"


@dataclass(frozen=True)
class Individual:
    """A named constant, or a skolem constant invented by the engine.

    Skolems carry their depth (1 + deepest individual they were built from)
    and their origin ``(rule id, variable, binding key)`` so the same rule
    instance always yields the same constant.
    """

    name: str
    depth: int = 0
    origin: Optional[tuple] = None

    @property
    def is_skolem(self) -> bool:
        return self.depth > 0

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Variable:
    name: str
    fresh: bool = False

    def __str__(self) -> str:
        return "?" + self.name


Term = Union[Individual, Variable]
Substitution = Mapping[Variable, Individual]


@dataclass(frozen=True)
class Literal:
    predicate: str
    args: tuple
    negated: bool = False

    def complement(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.negated)

    def atom(self) -> "Literal":
        return Literal(self.predicate, self.args) if self.negated else self

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_naming(self) -> bool:
        return self.predicate == APPLICABLE

    def variables(self) -> Iterator[Variable]:
        for t in self.args:
            if isinstance(t, Variable):
                yield t

    def is_ground(self) -> bool:
        return not any(isinstance(t, Variable) for t in self.args)

    def substitute(self, subst: Substitution) -> "Literal":
        return Literal(
            self.predicate,
            tuple(subst.get(t, t) if isinstance(t, Variable) else t for t in self.args),
            self.negated,
        )

    def __str__(self) -> str:
        sign = "~" if self.negated else ""
        return f"{sign}{self.predicate}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Disjunction:
    """Two-literal disjunction; only ever produced by the ``C ⊑ D ⊔ Z`` row."""

    left: Literal
    right: Literal

    def complement(self) -> None:
        return None

    def variables(self) -> Iterator[Variable]:
        yield from self.left.variables()
        yield from self.right.variables()

    def is_ground(self) -> bool:
        return self.left.is_ground() and self.right.is_ground()

    def substitute(self, subst: Substitution) -> "Disjunction":
        return Disjunction(self.left.substitute(subst), self.right.substitute(subst))

    def __str__(self) -> str:
        return f"{self.left} OR {self.right}"


Formula = Union[Literal, Disjunction]


def naming_atom(rule_id: str) -> Literal:
    return Literal(APPLICABLE, (Individual(rule_id),))


def complement(f: Formula) -> Optional[Formula]:
    return f.complement()


def match(pattern: Formula, ground: Formula, subst: dict) -> Optional[dict]:
    """Extend ``subst`` so that ``pattern`` instantiates to ``ground``; None on clash."""
    if isinstance(pattern, Disjunction):
        if not isinstance(ground, Disjunction):
            return None
        s = match(pattern.left, ground.left, subst)
        return None if s is None else match(pattern.right, ground.right, s)
    if not isinstance(ground, Literal):
        return None
    if (
        pattern.predicate != ground.predicate
        or pattern.negated != ground.negated
        or len(pattern.args) != len(ground.args)
    ):
        return None
    out = subst
    for p, g in zip(pattern.args, ground.args):
        if isinstance(p, Variable):
            bound = out.get(p)
            if bound is None:
                if out is subst:
                    out = dict(subst)
                out[p] = g
            elif bound != g:
                return None
        elif p != g:
            return None
    return out


_LIT_RE = re.compile(rf"^\s*(~?)\s*({IDENT})\s*\(([^()]*)\)\s*$")


def parse_term(text: str, allow_variables: bool = True) -> Term:
    text = text.strip()
    if text.startswith("?"):
        if not allow_variables:
            raise ValueError(f"variable {text!r} not allowed here")
        name = text[1:]
        if not re.fullmatch(IDENT, name):
            raise ValueError(f"bad variable name {text!r}")
        return Variable(name, fresh=name.startswith("new"))
    if not re.fullmatch(IDENT, text):
        raise ValueError(f"bad individual name {text!r}")
    return Individual(text)


def parse_literal(text: str, allow_variables: bool = True) -> Literal:
    """Parse ``[~]Pred(t1[,t2])``; ``?x`` is a variable, ``?new...`` a fresh one."""
    m = _LIT_RE.match(text)
    if not m:
        raise ValueError(f"malformed literal {text.strip()!r}")
    sign, pred, inner = m.groups()
    parts = [p for p in inner.split(",")]
    if not inner.strip() or any(not p.strip() for p in parts):
        raise ValueError(f"malformed argument list in {text.strip()!r}")
    args = tuple(parse_term(p, allow_variables) for p in parts)
    return Literal(pred, args, negated=bool(sign))


def natural_key(s: str) -> tuple:
    """Sort key treating digit runs numerically: A2 < A10, r10 < r10'."""
    return tuple(
        (0, int(tok), "") if tok.isdigit() else (1, 0, tok)
        for tok in re.findall(r"\d+|\D+", s)
    )
