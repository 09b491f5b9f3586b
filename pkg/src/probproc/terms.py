"""Abstract syntax of finite reactive probabilistic processes and tests.

Constructors:

    Empty()                          deadlocked process, written 0
    ExternalChoice(((a, P), ...))    action-prefixed choice a1->P1 [] a2->P2
    ProbChoice(((w, P), ...))        probabilistic choice p{w1:P1, w2:P2}
    Priority(P)                      keep only maximal-priority actions
    SyncPar(P, Q)                    lock-step parallel, written ||
    SharedPar(P, Q)                  synchronize on shared actions, |[]|

A test is a term that may additionally use the reserved success label "w"
as a choice branch (its continuation is always Empty).  Ordinary process
terms must not mention "w".  Structural equality and hashing follow the
dataclass fields, so syntactically equal subterms are interchangeable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .pts import OMEGA

Term = Union["Empty", "ExternalChoice", "ProbChoice", "Priority", "SyncPar", "SharedPar"]


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class ExternalChoice:
    branches: tuple[tuple[str, Term], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.branches]
        if not labels:
            raise ValueError("external choice needs at least one branch")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate branch labels in {labels}")


@dataclass(frozen=True)
class ProbChoice:
    branches: tuple[tuple[Fraction, Term], ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("probabilistic choice needs at least one branch")
        for weight, _ in self.branches:
            if not (0 < weight <= 1):
                raise ValueError(f"weight {weight} is outside (0,1]")
        total = sum(weight for weight, _ in self.branches)
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")


@dataclass(frozen=True)
class Priority:
    body: Term


@dataclass(frozen=True)
class SyncPar:
    left: Term
    right: Term


@dataclass(frozen=True)
class SharedPar:
    left: Term
    right: Term


def prefix(label: str, body: Term | None = None) -> ExternalChoice:
    """Single-action prefix label->body (body defaults to Empty)."""
    return ExternalChoice(((label, body if body is not None else Empty()),))


def success() -> ExternalChoice:
    """The immediately succeeding test."""
    return ExternalChoice(((OMEGA, Empty()),))


def alphabet(term: Term) -> frozenset[str]:
    """Action labels occurring syntactically in the term; excludes "w"."""
    out: set[str] = set()

    def walk(node: Term) -> None:
        if isinstance(node, ExternalChoice):
            for label, sub in node.branches:
                if label != OMEGA:
                    out.add(label)
                walk(sub)
        elif isinstance(node, ProbChoice):
            for _, sub in node.branches:
                walk(sub)
        elif isinstance(node, Priority):
            walk(node.body)
        elif isinstance(node, (SyncPar, SharedPar)):
            walk(node.left)
            walk(node.right)

    walk(term)
    return frozenset(out)


def shared_alphabet(left: Term, right: Term) -> frozenset[str]:
    """Actions occurring in both operands: the synchronization set of |[]|."""
    return alphabet(left) & alphabet(right)


def uses_success(term: Term) -> bool:
    if isinstance(term, ExternalChoice):
        return any(label == OMEGA or uses_success(sub) for label, sub in term.branches)
    if isinstance(term, ProbChoice):
        return any(uses_success(sub) for _, sub in term.branches)
    if isinstance(term, Priority):
        return uses_success(term.body)
    if isinstance(term, (SyncPar, SharedPar)):
        return uses_success(term.left) or uses_success(term.right)
    return False


def has_prob_choice(term: Term) -> bool:
    if isinstance(term, ProbChoice):
        return True
    if isinstance(term, ExternalChoice):
        return any(has_prob_choice(sub) for _, sub in term.branches)
    if isinstance(term, Priority):
        return has_prob_choice(term.body)
    if isinstance(term, (SyncPar, SharedPar)):
        return has_prob_choice(term.left) or has_prob_choice(term.right)
    return False


class PriorityOrder:
    """A strict partial order on action labels, closed under transitivity."""

    def __init__(self, pairs: tuple[tuple[str, str], ...] | list[tuple[str, str]] = ()):
        above: dict[str, set[str]] = {}
        for high, low in pairs:
            above.setdefault(high, set()).add(low)
        changed = True
        while changed:
            changed = False
            for high, lows in above.items():
                extra = set()
                for low in lows:
                    extra |= above.get(low, set())
                if not extra <= lows:
                    lows |= extra
                    changed = True
        for high, lows in above.items():
            if high in lows:
                raise ValueError(f"priority order has a cycle through {high!r}")
        self._above = {high: frozenset(lows) for high, lows in above.items()}
        self.pairs = frozenset(
            (high, low) for high, lows in self._above.items() for low in lows
        )

    def higher(self, a: str, b: str) -> bool:
        """True when a has strictly higher priority than b."""
        return b in self._above.get(a, ())

    def __repr__(self) -> str:
        body = ", ".join(f"{h} > {l}" for h, l in sorted(self.pairs))
        return f"PriorityOrder({body})"


EMPTY_ORDER = PriorityOrder()


def _render_branch(label: str, sub: Term) -> str:
    if label == OMEGA:
        return OMEGA
    if isinstance(sub, Empty):
        return label
    return f"{label}->{_render_tight(sub)}"


def _render_tight(term: Term) -> str:
    """Rendering for prefix targets: anything loose gets parentheses."""
    if isinstance(term, ExternalChoice) and len(term.branches) == 1:
        return _render_branch(*term.branches[0])
    if isinstance(term, (ExternalChoice, SyncPar, SharedPar)):
        return f"({render(term)})"
    return render(term)


def render(term: Term) -> str:
    """Concrete syntax; parse(render(t)) reproduces t exactly."""
    if isinstance(term, Empty):
        return "0"
    if isinstance(term, ExternalChoice):
        return " [] ".join(_render_branch(label, sub) for label, sub in term.branches)
    if isinstance(term, ProbChoice):
        inner = ", ".join(
            f"{w.numerator}/{w.denominator}:{render(sub)}" for w, sub in term.branches
        )
        return f"p{{{inner}}}"
    if isinstance(term, Priority):
        return f"prio({render(term.body)})"
    if isinstance(term, (SyncPar, SharedPar)):
        op = "||" if isinstance(term, SyncPar) else "|[]|"

        def side(sub: Term) -> str:
            if isinstance(sub, (SyncPar, SharedPar)):
                return f"({render(sub)})"
            if isinstance(sub, ExternalChoice) and len(sub.branches) > 1:
                return f"({render(sub)})"
            return render(sub)

        return f"{side(term.left)} {op} {side(term.right)}"
    raise TypeError(f"not a term: {term!r}")
