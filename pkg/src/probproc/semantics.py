"""Compilation of process terms to transition graphs.

The rules, with p -a-> p' for action steps and p ~w~> p' for weighted steps:

    sum a_i.p_i -a_i-> p_i
    p{..w_k:p_k..} ~w_k~> p_k            if p_k has no weighted step
    p{..w_k:p_k..} ~w_k*r~> p_k'         if p_k ~r~> p_k' (nested choices flatten)
    prio(p) -a-> prio(p')                if p -a-> p' and no enabled b beats a
    prio(p) ~w~> prio(p')                if p ~w~> p'
    p||q -a-> p'||q'                     if both sides step on a (lock-step)
    p||q ~w*r~> p'||q'                   if p ~w~> p' and q ~r~> q'
    p||q ~w~> p'||q                      if p ~w~> p' and q has no weighted step
    p|[]|q -a-> p'|[]|q'                 if a is shared and both sides step on a
    p|[]|q -a-> p'|[]|q                  if a unshared, p steps, q has no weighted step
    p|[]|q (weighted steps as for ||)

The synchronization set of |[]| is the set of actions occurring syntactically
in both operands, fixed when the composition is first built and kept while
the operands evolve.  A state is probabilistic exactly when it has weighted
steps; equal subterms share one graph state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .pts import Pts
from .terms import (
    EMPTY_ORDER,
    Empty,
    ExternalChoice,
    PriorityOrder,
    ProbChoice,
    Priority,
    SharedPar,
    SyncPar,
    Term,
    alphabet,
    shared_alphabet,
)


@dataclass(frozen=True)
class _Shared:
    """SharedPar with its synchronization set pinned at composition time."""

    left: object
    right: object
    sync: frozenset[str]


def _pin_sync_sets(term: Term):
    if isinstance(term, (Empty,)):
        return term
    if isinstance(term, ExternalChoice):
        return ExternalChoice(
            tuple((label, _pin_sync_sets(sub)) for label, sub in term.branches)
        )
    if isinstance(term, ProbChoice):
        return ProbChoice(
            tuple((weight, _pin_sync_sets(sub)) for weight, sub in term.branches)
        )
    if isinstance(term, Priority):
        return Priority(_pin_sync_sets(term.body))
    if isinstance(term, SyncPar):
        return SyncPar(_pin_sync_sets(term.left), _pin_sync_sets(term.right))
    if isinstance(term, SharedPar):
        return _Shared(
            _pin_sync_sets(term.left),
            _pin_sync_sets(term.right),
            shared_alphabet(term.left, term.right),
        )
    raise TypeError(f"not a term: {term!r}")


class _Compiler:
    def __init__(self, order: PriorityOrder):
        self.order = order
        self._prob_cache: dict[object, tuple[tuple[Fraction, object], ...]] = {}
        self._action_cache: dict[object, dict[str, object]] = {}

    def prob_steps(self, node) -> tuple[tuple[Fraction, object], ...]:
        if node in self._prob_cache:
            return self._prob_cache[node]
        out: list[tuple[Fraction, object]] = []
        if isinstance(node, ProbChoice):
            for weight, sub in node.branches:
                inner = self.prob_steps(sub)
                if inner:
                    out.extend((weight * r, target) for r, target in inner)
                else:
                    out.append((weight, sub))
        elif isinstance(node, Priority):
            out = [(w, Priority(t)) for w, t in self.prob_steps(node.body)]
        elif isinstance(node, SyncPar):
            lp, rp = self.prob_steps(node.left), self.prob_steps(node.right)
            if lp and rp:
                out = [(w * r, SyncPar(lt, rt)) for w, lt in lp for r, rt in rp]
            elif lp:
                out = [(w, SyncPar(lt, node.right)) for w, lt in lp]
            elif rp:
                out = [(r, SyncPar(node.left, rt)) for r, rt in rp]
        elif isinstance(node, _Shared):
            lp, rp = self.prob_steps(node.left), self.prob_steps(node.right)
            if lp and rp:
                out = [
                    (w * r, _Shared(lt, rt, node.sync)) for w, lt in lp for r, rt in rp
                ]
            elif lp:
                out = [(w, _Shared(lt, node.right, node.sync)) for w, lt in lp]
            elif rp:
                out = [(r, _Shared(node.left, rt, node.sync)) for r, rt in rp]
        result = tuple(out)
        self._prob_cache[node] = result
        return result

    def action_steps(self, node) -> dict[str, object]:
        if node in self._action_cache:
            return self._action_cache[node]
        out: dict[str, object] = {}
        if isinstance(node, ExternalChoice):
            out = dict(node.branches)
        elif isinstance(node, Priority):
            steps = self.action_steps(node.body)
            out = {
                label: Priority(target)
                for label, target in steps.items()
                if not any(self.order.higher(other, label) for other in steps)
            }
        elif isinstance(node, SyncPar):
            left, right = self.action_steps(node.left), self.action_steps(node.right)
            out = {
                label: SyncPar(left[label], right[label])
                for label in left.keys() & right.keys()
            }
        elif isinstance(node, _Shared):
            left, right = self.action_steps(node.left), self.action_steps(node.right)
            left_quiet = not self.prob_steps(node.left)
            right_quiet = not self.prob_steps(node.right)
            for label, target in left.items():
                if label in node.sync:
                    if label in right:
                        out[label] = _Shared(target, right[label], node.sync)
                elif right_quiet:
                    out[label] = _Shared(target, node.right, node.sync)
            for label, target in right.items():
                if label in node.sync:
                    continue
                if left_quiet:
                    assert label not in out, f"interleaved label {label!r} clashes"
                    out[label] = _Shared(node.left, target, node.sync)
        self._action_cache[node] = out
        return out


def compile_term(term: Term, order: PriorityOrder = EMPTY_ORDER) -> Pts:
    """The reachable transition graph of a process or test term."""
    compiler = _Compiler(order)
    root = _pin_sync_sets(term)
    ids: dict[object, int] = {root: 0}
    kinds: dict[int, str] = {}
    action_edges: list[tuple[int, str, int]] = []
    prob_edges: list[tuple[int, Fraction, int]] = []
    queue = deque([root])

    def intern(node) -> int:
        if node not in ids:
            ids[node] = len(ids)
            queue.append(node)
        return ids[node]

    while queue:
        node = queue.popleft()
        state = ids[node]
        weighted = compiler.prob_steps(node)
        if weighted:
            kinds[state] = "p"
            for weight, target in weighted:
                assert not compiler.prob_steps(target)
                prob_edges.append((state, weight, intern(target)))
        else:
            kinds[state] = "n"
            for label, target in sorted(compiler.action_steps(node).items()):
                action_edges.append((state, label, intern(target)))

    return Pts.build(
        alphabet=alphabet(term),
        kinds=kinds,
        action_edges=action_edges,
        prob_edges=prob_edges,
        root=0,
    )


def composition_warnings(term: Term) -> list[str]:
    """Flag |[]| chains whose components break the three-way sharing rule.

    Composing p, q, r is only associative when no two of the pairwise shared
    action sets overlap transitively: if p,q share actions and q,r share
    actions then p,r must not.  Violations are reported, not rejected, since
    a single composition stays meaningful.
    """
    warnings: list[str] = []

    def components(node: Term) -> list[Term]:
        if isinstance(node, SharedPar):
            return components(node.left) + components(node.right)
        return [node]

    def walk(node: Term, under_shared: bool) -> None:
        if isinstance(node, SharedPar):
            if not under_shared:
                parts = components(node)
                for a, b, c in combinations(range(len(parts)), 3):
                    ab = shared_alphabet(parts[a], parts[b])
                    bc = shared_alphabet(parts[b], parts[c])
                    ac = shared_alphabet(parts[a], parts[c])
                    if ab and bc and ac:
                        warnings.append(
                            "components %d, %d and %d of a |[]| chain share actions "
                            "pairwise (%s); the chain is not associative"
                            % (a, b, c, sorted(ab | bc | ac))
                        )
            walk(node.left, True)
            walk(node.right, True)
        elif isinstance(node, ExternalChoice):
            for _, sub in node.branches:
                walk(sub, False)
        elif isinstance(node, ProbChoice):
            for _, sub in node.branches:
                walk(sub, False)
        elif isinstance(node, Priority):
            walk(node.body, False)
        elif isinstance(node, SyncPar):
            walk(node.left, False)
            walk(node.right, False)

    walk(term, False)
    return warnings
