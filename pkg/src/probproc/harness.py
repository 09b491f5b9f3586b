"""Randomized generation and the machine-checked property suites.

Every suite draws its samples from a seeded generator, so any reported
failure replays bit-exactly from the seed carried in the report.  The
suites check, at desk scale:

  * coincidence: the ready-trace verdict and the bounded testing verdict
    agree on every sampled pair, and every distinguished pair also yields a
    synthesized, verified, probability-free witness test;
  * congruence: equivalent processes stay equivalent in every sampled
    context;
  * distributivity: probabilistic choice commutes with prefixed external
    choice and with arbitrary contexts;
  * probability axioms: menu distributions are probability distributions,
    conditional layers renormalize to one, and the chained trace
    probabilities match an independent brute-force walk of the raw graph;
  * symbolic/numeric agreement: the symbolic equality of outcome functions
    matches exact evaluation at random positive rational points.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .fixtures import (
    COIN_MACHINE_EARLY,
    COIN_MACHINE_LATE,
    MIXED_FOLLOWUP_FIRST,
    MIXED_FOLLOWUP_SECOND,
    PREFIX_DISTRIB_LEFT,
    PREFIX_DISTRIB_PEER,
    PREFIX_DISTRIB_RIGHT,
)
from .parser import parse_term
from .pts import Pts
from .ratfunc import RationalFn
from .readytrace import (
    ReadyTrace,
    UNDEFINED,
    condition_view,
    ready_trace_equivalent,
    root_view,
    trace_probability,
    view_menu_distribution,
)
from .semantics import compile_term
from .terms import (
    EMPTY_ORDER,
    alphabet,
    Empty,
    ExternalChoice,
    PriorityOrder,
    ProbChoice,
    Priority,
    SharedPar,
    SyncPar,
    Term,
    has_prob_choice,
    render,
)
from .testing import (
    count_tests,
    distinguishing_test,
    relevant_universes,
    term_action_depth,
    apply_test,
    bounded_testing_equivalent,
)

_LABEL_POOL = ("a", "b", "c", "d")


@dataclass(frozen=True)
class GenConfig:
    """Bounds for random generation; identical seed and bounds replay exactly."""

    alphabet_size: int = 3
    max_depth: int = 3
    max_branching: int = 3
    max_weight_denominator: int = 8
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.alphabet_size <= 4:
            raise ValueError("alphabet_size must be between 1 and 4")
        if not 1 <= self.max_depth <= 4:
            raise ValueError("max_depth must be between 1 and 4")
        if not 1 <= self.max_branching <= 3:
            raise ValueError("max_branching must be between 1 and 3")
        if not 2 <= self.max_weight_denominator <= 8:
            raise ValueError("max_weight_denominator must be between 2 and 8")

    @property
    def labels(self) -> tuple[str, ...]:
        return _LABEL_POOL[: self.alphabet_size]


def _random_weights(cfg: GenConfig, rng: random.Random, parts: int) -> list[Fraction]:
    total = rng.randint(parts, cfg.max_weight_denominator)
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [Fraction(bounds[i + 1] - bounds[i], total) for i in range(parts)]


def random_term(cfg: GenConfig, rng: random.Random | None = None) -> Term:
    """A random well-formed term within the bounds; deterministic per seed."""
    if rng is None:
        rng = random.Random(cfg.seed)
    return _random_term(cfg, rng, cfg.max_depth)


def _random_term(cfg: GenConfig, rng: random.Random, depth: int) -> Term:
    if depth <= 0:
        if rng.random() < 0.4:
            return Empty()
        return ExternalChoice(((rng.choice(cfg.labels), Empty()),))
    kind = rng.choices(
        ("choice", "prob", "prio", "sync", "shared", "empty"),
        weights=(5, 4, 1, 1, 1, 1),
    )[0]
    if kind == "empty":
        return Empty()
    if kind == "choice":
        width = rng.randint(1, min(cfg.max_branching, len(cfg.labels)))
        labels = rng.sample(cfg.labels, width)
        return ExternalChoice(
            tuple((label, _random_term(cfg, rng, depth - 1)) for label in sorted(labels))
        )
    if kind == "prob":
        width = rng.randint(2, max(2, cfg.max_branching))
        weights = _random_weights(cfg, rng, width)
        return ProbChoice(
            tuple((w, _random_term(cfg, rng, depth - 1)) for w in weights)
        )
    if kind == "prio":
        return Priority(_random_term(cfg, rng, depth - 1))
    sides = (_random_term(cfg, rng, depth - 1), _random_term(cfg, rng, depth - 1))
    return SyncPar(*sides) if kind == "sync" else SharedPar(*sides)


def random_priority_order(cfg: GenConfig, rng: random.Random) -> PriorityOrder:
    """A random strict partial order over the alphabet (never cyclic)."""
    ranked = list(cfg.labels)
    rng.shuffle(ranked)
    pairs = [
        (ranked[i], ranked[j])
        for i in range(len(ranked))
        for j in range(i + 1, len(ranked))
        if rng.random() < 0.3
    ]
    return PriorityOrder(tuple(pairs))


@dataclass(frozen=True)
class _Hole:
    pass


def fill_context(context, replacement: Term) -> Term:
    """Substitute the process for the unique hole of a context."""
    if isinstance(context, _Hole):
        return replacement
    if isinstance(context, ExternalChoice):
        return ExternalChoice(
            tuple((l, fill_context(s, replacement)) for l, s in context.branches)
        )
    if isinstance(context, ProbChoice):
        return ProbChoice(
            tuple((w, fill_context(s, replacement)) for w, s in context.branches)
        )
    if isinstance(context, Priority):
        return Priority(fill_context(context.body, replacement))
    if isinstance(context, SyncPar):
        return SyncPar(
            fill_context(context.left, replacement),
            fill_context(context.right, replacement),
        )
    if isinstance(context, SharedPar):
        return SharedPar(
            fill_context(context.left, replacement),
            fill_context(context.right, replacement),
        )
    return context


def random_context(cfg: GenConfig, rng: random.Random, depth: int | None = None):
    """A term with a single hole, built from all operators."""
    depth = cfg.max_depth if depth is None else depth
    if depth <= 0:
        return _Hole()
    kind = rng.choices(
        ("hole", "choice", "prob", "prio", "sync", "shared"),
        weights=(2, 3, 2, 1, 2, 2),
    )[0]
    if kind == "hole":
        return _Hole()
    if kind == "choice":
        width = rng.randint(1, min(cfg.max_branching, len(cfg.labels)))
        labels = sorted(rng.sample(cfg.labels, width))
        slot = rng.randrange(width)
        return ExternalChoice(
            tuple(
                (
                    label,
                    random_context(cfg, rng, depth - 1)
                    if i == slot
                    else _random_term(cfg, rng, depth - 1),
                )
                for i, label in enumerate(labels)
            )
        )
    if kind == "prob":
        width = rng.randint(2, max(2, cfg.max_branching))
        weights = _random_weights(cfg, rng, width)
        slot = rng.randrange(width)
        return ProbChoice(
            tuple(
                (
                    w,
                    random_context(cfg, rng, depth - 1)
                    if i == slot
                    else _random_term(cfg, rng, depth - 1),
                )
                for i, w in enumerate(weights)
            )
        )
    if kind == "prio":
        return Priority(random_context(cfg, rng, depth - 1))
    hole_side = random_context(cfg, rng, depth - 1)
    other = _random_term(cfg, rng, depth - 1)
    cls = SyncPar if kind == "sync" else SharedPar
    return cls(hole_side, other) if rng.random() < 0.5 else cls(other, hole_side)


def prefix_distribution_pair(cfg: GenConfig, rng: random.Random) -> tuple[Term, Term]:
    """Both sides of the prefixed-choice/probabilistic-choice exchange law."""
    n_actions = rng.randint(1, min(cfg.max_branching, len(cfg.labels)))
    actions = sorted(rng.sample(cfg.labels, n_actions))
    n_weights = rng.randint(2, max(2, cfg.max_branching))
    weights = _random_weights(cfg, rng, n_weights)
    subterms = {
        (i, j): _random_term(cfg, rng, max(0, cfg.max_depth - 2))
        for i in range(n_actions)
        for j in range(n_weights)
    }
    left = ExternalChoice(
        tuple(
            (
                action,
                ProbChoice(
                    tuple((w, subterms[(i, j)]) for j, w in enumerate(weights))
                ),
            )
            for i, action in enumerate(actions)
        )
    )
    right = ProbChoice(
        tuple(
            (
                w,
                ExternalChoice(
                    tuple(
                        (action, subterms[(i, j)]) for i, action in enumerate(actions)
                    )
                ),
            )
            for j, w in enumerate(weights)
        )
    )
    return left, right


def _aligned_pieces(
    cfg: GenConfig, rng: random.Random, count: int, depth: int
) -> list[Term]:
    """Random terms sharing one syntactic alphabet.

    The synchronization set of |[]| is computed from the operands' syntactic
    alphabets, so pulling a probabilistic choice out of a context only
    leaves that set unchanged when all alternatives mention the same
    actions.  The exchange law is stated for a fixed operator, hence the
    alignment here.
    """
    target = frozenset(rng.sample(cfg.labels, rng.randint(1, len(cfg.labels))))
    pool = tuple(sorted(target))
    narrowed = GenConfig(
        alphabet_size=len(pool),
        max_depth=cfg.max_depth,
        max_branching=cfg.max_branching,
        max_weight_denominator=cfg.max_weight_denominator,
        seed=cfg.seed,
    )
    pieces: list[Term] = []
    for _ in range(count):
        piece = None
        for _ in range(50):
            candidate = _random_term_with_pool(narrowed, rng, depth, pool)
            if alphabet(candidate) == target:
                piece = candidate
                break
        if piece is None:
            piece = ExternalChoice(tuple((label, Empty()) for label in pool))
        pieces.append(piece)
    return pieces


def _random_term_with_pool(cfg, rng, depth, pool) -> Term:
    if depth <= 0:
        if rng.random() < 0.3:
            return Empty()
        return ExternalChoice(((rng.choice(pool), Empty()),))
    kind = rng.choices(
        ("choice", "prob", "prio", "sync", "shared", "empty"),
        weights=(6, 3, 1, 1, 1, 1),
    )[0]
    if kind == "empty":
        return Empty()
    if kind == "choice":
        width = rng.randint(1, min(cfg.max_branching, len(pool)))
        labels = sorted(rng.sample(pool, width))
        return ExternalChoice(
            tuple(
                (label, _random_term_with_pool(cfg, rng, depth - 1, pool))
                for label in labels
            )
        )
    if kind == "prob":
        width = rng.randint(2, max(2, cfg.max_branching))
        weights = _random_weights(cfg, rng, width)
        return ProbChoice(
            tuple((w, _random_term_with_pool(cfg, rng, depth - 1, pool)) for w in weights)
        )
    if kind == "prio":
        return Priority(_random_term_with_pool(cfg, rng, depth - 1, pool))
    sides = (
        _random_term_with_pool(cfg, rng, depth - 1, pool),
        _random_term_with_pool(cfg, rng, depth - 1, pool),
    )
    return SyncPar(*sides) if kind == "sync" else SharedPar(*sides)


def context_distribution_pair(cfg: GenConfig, rng: random.Random) -> tuple[Term, Term]:
    """Both sides of pulling a probabilistic choice out of a context."""
    context = random_context(cfg, rng, depth=rng.randint(1, max(1, cfg.max_depth - 1)))
    width = rng.randint(2, max(2, cfg.max_branching))
    weights = _random_weights(cfg, rng, width)
    pieces = _aligned_pieces(cfg, rng, width, max(0, cfg.max_depth - 2))
    inner = ProbChoice(tuple(zip(weights, pieces)))
    left = fill_context(context, inner)
    right = ProbChoice(
        tuple((w, fill_context(context, piece)) for w, piece in zip(weights, pieces))
    )
    return left, right


def equivalent_pair(cfg: GenConfig, rng: random.Random) -> tuple[Term, Term]:
    """A pair equal by construction, using only the proved exchange laws."""
    if rng.random() < 0.5:
        return prefix_distribution_pair(cfg, rng)
    return context_distribution_pair(cfg, rng)


# --- reports -----------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    seed: int
    samples: int = 0
    passes: int = 0
    failures: list = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: dict) -> None:
        self.samples += 1
        if ok:
            self.passes += 1
        else:
            self.failures.append(detail)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "samples": self.samples,
            "passes": self.passes,
            "failures": self.failures,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "ok": self.ok,
        }


def _budget_depth(left: Pts, right: Pts, budget: int = 1500) -> int:
    """Largest test depth whose full enumeration stays within the budget."""
    full = max(left.action_depth, right.action_depth) + 1
    depth = 1
    for candidate in range(1, full + 1):
        if count_tests(relevant_universes(left, right, candidate), candidate) > budget:
            break
        depth = candidate
    return depth


def check_coincidence(
    cfg: GenConfig, n_samples: int = 200, budget: int = 1500
) -> CheckReport:
    """Ready-trace and bounded testing verdicts must agree on every pair.

    Distinguished pairs must additionally yield a synthesized witness test
    with no probabilistic branching whose outcomes verifiably differ.
    """
    rng = random.Random(cfg.seed)
    report = CheckReport(name="coincidence", seed=cfg.seed)
    started = time.monotonic()

    pinned = [
        (parse_term(COIN_MACHINE_EARLY), parse_term(COIN_MACHINE_LATE)),
        (parse_term(MIXED_FOLLOWUP_FIRST), parse_term(MIXED_FOLLOWUP_SECOND)),
    ]

    for index in range(n_samples):
        sample_seed = rng.getrandbits(64)
        sub = random.Random(sample_seed)
        order = random_priority_order(cfg, sub)
        if index < len(pinned):
            left_term, right_term = pinned[index]
        elif index % 2 == 0:
            left_term, right_term = equivalent_pair(cfg, sub)
        else:
            left_term = _random_term(cfg, sub, cfg.max_depth)
            right_term = _random_term(cfg, sub, cfg.max_depth)
        left = compile_term(left_term, order)
        right = compile_term(right_term, order)

        trace_verdict = ready_trace_equivalent(left, right)
        detail = {
            "sample_seed": sample_seed,
            "left": render(left_term),
            "right": render(right_term),
            "ready_trace_equivalent": trace_verdict.equivalent,
        }
        if trace_verdict.equivalent:
            depth = _budget_depth(left, right, budget)
            test_verdict = bounded_testing_equivalent(left, right, depth=depth)
            detail["testing_depth"] = depth
            if not test_verdict.equivalent:
                detail["error"] = "testing found a witness for a ready-trace-equivalent pair"
                detail["witness"] = render(test_verdict.test)
                report.record(False, detail)
                continue
            report.record(True, detail)
        else:
            witness = distinguishing_test(left, right)
            if witness is None:
                detail["error"] = "no witness synthesized for a distinguished pair"
                report.record(False, detail)
                continue
            if has_prob_choice(witness):
                detail["error"] = "synthesized witness uses probabilistic choice"
                detail["witness"] = render(witness)
                report.record(False, detail)
                continue
            compiled = compile_term(witness)
            if apply_test(left, compiled) == apply_test(right, compiled):
                detail["error"] = "synthesized witness does not distinguish"
                detail["witness"] = render(witness)
                report.record(False, detail)
                continue
            needed = term_action_depth(witness)
            found = None
            for depth in range(1, needed + 1):
                test_verdict = bounded_testing_equivalent(left, right, depth=depth)
                if not test_verdict.equivalent:
                    found = test_verdict
                    break
            if found is None:
                detail["error"] = "enumeration found no witness up to the synthesized depth"
                detail["witness"] = render(witness)
                report.record(False, detail)
                continue
            detail["witness"] = render(found.test)
            report.record(True, detail)

    report.elapsed_seconds = time.monotonic() - started
    return report


def check_congruence(cfg: GenConfig, n_samples: int = 200) -> CheckReport:
    """Equivalent processes must stay equivalent inside random contexts."""
    rng = random.Random(cfg.seed)
    report = CheckReport(name="congruence", seed=cfg.seed)
    started = time.monotonic()

    for index in range(n_samples):
        sample_seed = rng.getrandbits(64)
        sub = random.Random(sample_seed)
        if index == 0:
            left_term = parse_term(PREFIX_DISTRIB_LEFT)
            right_term = parse_term(PREFIX_DISTRIB_RIGHT)
            context = SharedPar(_Hole(), parse_term(PREFIX_DISTRIB_PEER))
            order = EMPTY_ORDER
        else:
            left_term, right_term = equivalent_pair(cfg, sub)
            context = random_context(cfg, sub, depth=sub.randint(0, cfg.max_depth - 1))
            order = random_priority_order(cfg, sub)
        wrapped_left = fill_context(context, left_term)
        wrapped_right = fill_context(context, right_term)
        verdict = ready_trace_equivalent(
            compile_term(wrapped_left, order), compile_term(wrapped_right, order)
        )
        detail = {
            "sample_seed": sample_seed,
            "left": render(wrapped_left),
            "right": render(wrapped_right),
        }
        if not verdict.equivalent:
            detail["error"] = verdict.describe()
        report.record(verdict.equivalent, detail)

    report.elapsed_seconds = time.monotonic() - started
    return report


def check_distributivity(cfg: GenConfig, n_samples: int = 200) -> CheckReport:
    """Probabilistic choice must commute with prefixing and with contexts."""
    rng = random.Random(cfg.seed)
    report = CheckReport(name="distributivity", seed=cfg.seed)
    started = time.monotonic()

    pinned = [
        (parse_term("a->p{1/2:b, 1/2:c}"), parse_term("p{1/2:a->b, 1/2:a->c}")),
        (parse_term("p{1:a->b}"), parse_term("a->b")),
        (parse_term(COIN_MACHINE_LATE), parse_term(COIN_MACHINE_EARLY)),
    ]
    for left_term, right_term in pinned:
        verdict = ready_trace_equivalent(compile_term(left_term), compile_term(right_term))
        detail = {"left": render(left_term), "right": render(right_term)}
        if not verdict.equivalent:
            detail["error"] = verdict.describe()
        report.record(verdict.equivalent, detail)

    for builder in (prefix_distribution_pair, context_distribution_pair):
        for _ in range(n_samples):
            sample_seed = rng.getrandbits(64)
            sub = random.Random(sample_seed)
            left_term, right_term = builder(cfg, sub)
            order = random_priority_order(cfg, sub)
            verdict = ready_trace_equivalent(
                compile_term(left_term, order), compile_term(right_term, order)
            )
            detail = {
                "sample_seed": sample_seed,
                "law": builder.__name__,
                "left": render(left_term),
                "right": render(right_term),
            }
            if not verdict.equivalent:
                detail["error"] = verdict.describe()
            report.record(verdict.equivalent, detail)

    report.elapsed_seconds = time.monotonic() - started
    return report


def raw_trace_probability(pts: Pts, trace: ReadyTrace) -> Fraction:
    """Brute-force joint probability by walking the raw graph directly.

    Independent of the conditioning machinery: it follows probabilistic
    edges by weight and the trace's chosen actions, scoring a path 1 when
    every observed menu matches and 0 otherwise.
    """

    def go(state: int, index: int) -> Fraction:
        if pts.kind(state) == "p":
            return sum(
                (weight * go(target, index) for weight, target in pts.prob_successors(state)),
                Fraction(0),
            )
        if pts.menu(state) != trace.menus[index]:
            return Fraction(0)
        if index == len(trace.menus) - 1:
            return Fraction(1)
        return go(pts.action_successor(state, trace.actions[index]), index + 1)

    return go(pts.root, 0)


def check_probability_axioms(cfg: GenConfig, n_samples: int = 200) -> CheckReport:
    """Distribution laws of the observation probabilities, per sampled term.

    Checks that every menu distribution is a probability distribution, that
    each conditional layer renormalizes to one, and that the chained trace
    probability equals the brute-force joint walk exactly.
    """
    rng = random.Random(cfg.seed)
    report = CheckReport(name="probability_axioms", seed=cfg.seed)
    started = time.monotonic()

    for _ in range(n_samples):
        sample_seed = rng.getrandbits(64)
        sub = random.Random(sample_seed)
        term = _random_term(cfg, sub, cfg.max_depth)
        pts = compile_term(term, random_priority_order(cfg, sub))
        detail = {"sample_seed": sample_seed, "term": render(term)}
        problems: list[str] = []

        def check_view(view, prefix_menus, prefix_actions):
            dist = view_menu_distribution(pts, view)
            total = sum(dist.values(), Fraction(0))
            if total != 1:
                problems.append(f"menu distribution sums to {total} after {prefix_actions}")
            if any(not (0 < p <= 1) for p in dist.values()):
                problems.append(f"menu probability outside (0,1] after {prefix_actions}")
            for menu, p in sorted(dist.items(), key=lambda kv: str(kv[0])):
                trace = ReadyTrace(prefix_menus + (menu,), prefix_actions)
                joint = trace_probability(pts, trace)
                brute = raw_trace_probability(pts, trace)
                if joint is UNDEFINED or joint != brute:
                    problems.append(
                        f"trace {trace.render()}: chained {joint} vs brute-force {brute}"
                    )
                if len(prefix_menus) + 1 < cfg.max_depth + 1:
                    for action in sorted(menu):
                        check_view(
                            condition_view(pts, view, menu, action),
                            prefix_menus + (menu,),
                            prefix_actions + (action,),
                        )

        check_view(root_view(pts), (), ())
        if problems:
            detail["error"] = problems[:5]
        report.record(not problems, detail)

    report.elapsed_seconds = time.monotonic() - started
    return report


def random_ratfunc(cfg: GenConfig, rng: random.Random, depth: int = 3) -> RationalFn:
    """A random expression over variables, non-negative scalars, +, * and /."""
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return RationalFn.var(rng.choice(cfg.labels))
        return RationalFn.scalar(
            Fraction(rng.randint(0, 6), rng.randint(1, 6))
        )
    op = rng.choice(("add", "mul", "div"))
    left = random_ratfunc(cfg, rng, depth - 1)
    if op == "add":
        return left + random_ratfunc(cfg, rng, depth - 1)
    if op == "mul":
        return left * random_ratfunc(cfg, rng, depth - 1)
    for _ in range(10):
        right = random_ratfunc(cfg, rng, depth - 1)
        if not right.is_zero():
            return left / right
    return left


def check_symbolic_numeric(
    cfg: GenConfig, n_pairs: int = 1000, points_per_pair: int = 100
) -> CheckReport:
    """Symbolic equality must match exact evaluation at random positive points."""
    rng = random.Random(cfg.seed)
    report = CheckReport(name="symbolic_numeric", seed=cfg.seed)
    started = time.monotonic()

    for index in range(n_pairs):
        sample_seed = rng.getrandbits(64)
        sub = random.Random(sample_seed)
        f = random_ratfunc(cfg, sub)
        if index % 2 == 0:
            g = random_ratfunc(cfg, sub)
        else:
            # Same function in a different shape: multiply by q/q.
            q = random_ratfunc(cfg, sub, depth=2)
            if q.is_zero():
                q = RationalFn.one()
            g = (f * q) / q
        names = sorted(f.variables() | g.variables())
        symbolically_equal = f == g
        detail = {"sample_seed": sample_seed, "f": str(f), "g": str(g)}
        agree = True
        found_difference = False
        for _ in range(points_per_pair):
            point = {
                name: Fraction(sub.randint(1, 40), sub.randint(1, 40))
                for name in names
            }
            fv, gv = f.evaluate(point), g.evaluate(point)
            if symbolically_equal and fv != gv:
                agree = False
                detail["error"] = f"equal functions differ at {point}"
                break
            if not symbolically_equal and fv != gv:
                found_difference = True
                break
        if not symbolically_equal and not found_difference:
            agree = False
            detail["error"] = "no distinguishing point found for unequal functions"
        report.record(agree, detail)

    report.elapsed_seconds = time.monotonic() - started
    return report


_ALL_CHECKS = {
    "coincidence": check_coincidence,
    "congruence": check_congruence,
    "distributivity": check_distributivity,
    "axioms": check_probability_axioms,
    "symbolic-numeric": check_symbolic_numeric,
}


def run_checks(
    cfg: GenConfig, n_samples: int = 200, only: str | None = None
) -> dict[str, CheckReport]:
    """Run the named suite (or all of them) and return reports by name."""
    names = [only] if only else list(_ALL_CHECKS)
    out: dict[str, CheckReport] = {}
    for name in names:
        if name not in _ALL_CHECKS:
            raise ValueError(f"unknown check {name!r}; choose from {sorted(_ALL_CHECKS)}")
        out[name] = _ALL_CHECKS[name](cfg, n_samples)
    return out
