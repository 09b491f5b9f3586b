"""Testing semantics: outcomes, enumeration, bounded search, synthesis."""

import random
from fractions import Fraction

from probproc.fixtures import (
    COIN_MACHINE_EARLY,
    COIN_MACHINE_LATE,
    COIN_PROBE_TEST,
    COIN_USER_TEST,
    MIXED_FOLLOWUP_FIRST,
    MIXED_FOLLOWUP_PROBE,
    MIXED_FOLLOWUP_SECOND,
)
from probproc.harness import GenConfig, random_term
from probproc.parser import parse_term, parse_test
from probproc.pts import Pts
from probproc.ratfunc import RationalFn
from probproc.readytrace import ready_trace_equivalent
from probproc.semantics import compile_term
from probproc.terms import has_prob_choice, render
from probproc.testing import (
    count_tests,
    distinguishing_test,
    iter_tests,
    term_action_depth,
    apply_test,
    bounded_testing_equivalent,
)

F = Fraction
var = RationalFn.var
scalar = RationalFn.scalar
half = scalar(F(1, 2))


def graph(text: str) -> Pts:
    return compile_term(parse_term(text))


def run(process_text: str, test_text: str) -> RationalFn:
    return apply_test(graph(process_text), compile_term(parse_test(test_text)))


def test_user_guessing_wins_half_the_time():
    assert run(COIN_MACHINE_EARLY, COIN_USER_TEST) == half
    assert run(COIN_MACHINE_LATE, COIN_USER_TEST) == half


def test_one_sided_probe_yields_symbolic_outcome():
    h, t = var("h"), var("t")
    expected = (h + scalar(2) * t) / (scalar(2) * (h + t))
    early = run(COIN_MACHINE_EARLY, COIN_PROBE_TEST)
    late = run(COIN_MACHINE_LATE, COIN_PROBE_TEST)
    assert early == expected
    assert late == expected
    assert early == late
    assert str(early) == "(h + 2*t) / (2*h + 2*t)"


def test_disjoint_menus_score_zero():
    assert run("a->0", "b->w") == RationalFn.zero()


def test_probabilistic_test_mixes_outcomes():
    # test-side branching mixes outcomes once the process side is settled
    assert run("a->0", "p{1/2:a->w, 1/2:b->w}") == half
    # when both sides branch, the process side resolves first
    both = run("p{1/2:a->0, 1/2:b->0}", "p{1/2:a->w, 1/2:b->w}")
    # by hand: each process branch meets the halved test arms, scoring 1/2
    assert both == half


def test_success_beside_other_branches_dominates():
    assert run("a->b->0", "a->0 [] w") == RationalFn.one()
    assert run("0", "a->w [] w") == RationalFn.one()


def test_success_test_scores_one_everywhere():
    rng = random.Random(3)
    cfg = GenConfig(alphabet_size=3, max_depth=3, seed=3)
    success_graph = compile_term(parse_test("w"))
    for _ in range(50):
        pts = compile_term(random_term(cfg, rng))
        assert apply_test(pts, success_graph) == RationalFn.one()


def test_outcome_at_all_ones_is_a_probability():
    rng = random.Random(5)
    cfg = GenConfig(alphabet_size=2, max_depth=3, seed=5)
    probes = [compile_term(t) for t in iter_tests(("a", "b"), 2)]
    for _ in range(40):
        pts = compile_term(random_term(cfg, rng))
        for probe in probes[:12]:
            value = apply_test(pts, probe).evaluate(
                {name: 1 for name in pts.alphabet}
            )
            assert 0 <= value <= 1


def _hand_unrolled_outcomes():
    """The two mixed-followup outcomes computed step by step, without the
    outcome recursion: each synchronization contributes label/sum(common),
    success contributes one, and the root mixes its halves."""
    a, b = var("a"), var("b")
    common = a + b

    # first machine, branch {a,b}: a succeeds at once, b then c succeeds
    first_ab = (a / common) * scalar(1) + (b / common) * scalar(1)
    # first machine, branch {b,e}: only b is offered by the probe, then d
    # meets c->w and scores zero
    first_be = scalar(1) * RationalFn.zero()
    first = half * first_ab + half * first_be

    # second machine, branch {a,b}: a succeeds, b then d meets c->w: zero
    second_ab = (a / common) * scalar(1) + (b / common) * RationalFn.zero()
    # second machine, branch {b,e}: b then c succeeds
    second_be = scalar(1) * scalar(1)
    second = half * second_ab + half * second_be
    return first, second


def test_probe_outcomes_match_hand_unrolled_oracle():
    first, second = _hand_unrolled_outcomes()
    assert first == half
    a, b = var("a"), var("b")
    assert second == half * (a / (a + b)) + half
    assert run(MIXED_FOLLOWUP_FIRST, MIXED_FOLLOWUP_PROBE) == first
    assert run(MIXED_FOLLOWUP_SECOND, MIXED_FOLLOWUP_PROBE) == second
    assert first != second


def test_enumeration_singleton_alphabet_depth_one():
    tests = [render(t) for t in iter_tests(("a",), 1)]
    assert tests == ["w", "a->w"]


def test_enumeration_two_letters_depth_one():
    tests = [render(t) for t in iter_tests(("a", "b"), 1)]
    assert tests == ["w", "a->w", "b->w", "a->w [] b->w"]


def test_enumeration_empty_alphabet():
    assert [render(t) for t in iter_tests((), 3)] == ["w"]


def test_enumeration_counts_and_uniqueness():
    alphabet = ("a", "b")
    for depth in (1, 2, 3):
        tests = list(iter_tests(alphabet, depth))
        assert len(tests) == count_tests((frozenset(alphabet),) * depth, depth)
        assert len(set(tests)) == len(tests)
    assert len(list(iter_tests(alphabet, 2))) == 25


def test_enumeration_respects_per_level_universes():
    from probproc.testing import _iter_tests

    universes = (frozenset({"a"}), frozenset(), frozenset({"b"}))
    tests = [render(t) for t in _iter_tests(universes, 3)]
    # nothing can continue below the empty middle level
    assert tests == ["w", "a->w"]
    assert count_tests(universes, 3) == 2


def test_bounded_equivalence_of_coin_machines():
    verdict = bounded_testing_equivalent(graph(COIN_MACHINE_EARLY), graph(COIN_MACHINE_LATE), depth=3)
    assert verdict.equivalent
    assert verdict.depth == 3


def test_bounded_equivalence_finds_the_published_probe():
    verdict = bounded_testing_equivalent(
        graph(MIXED_FOLLOWUP_FIRST), graph(MIXED_FOLLOWUP_SECOND), depth=2
    )
    assert not verdict.equivalent
    assert render(verdict.test) == MIXED_FOLLOWUP_PROBE
    assert verdict.left_result == half
    a, b = var("a"), var("b")
    assert verdict.right_result == half * (a / (a + b)) + half


def test_bounded_equivalence_is_reflexive():
    machine = graph(COIN_MACHINE_EARLY)
    for depth in (1, 2, 4):
        assert bounded_testing_equivalent(machine, machine, depth=depth).equivalent


def test_default_depth_is_action_depth_plus_one():
    verdict = bounded_testing_equivalent(graph("a->b->0"), graph("a->c->0"))
    assert verdict.depth == 3
    assert not verdict.equivalent


def test_bounded_equivalence_across_different_alphabets():
    verdict = bounded_testing_equivalent(graph("a->0"), graph("b->0"), depth=1)
    assert not verdict.equivalent
    assert render(verdict.test) == "a->w"
    assert verdict.left_result == RationalFn.one()
    assert verdict.right_result == RationalFn.zero()


def test_synthesis_on_the_mixed_pair():
    left, right = graph(MIXED_FOLLOWUP_FIRST), graph(MIXED_FOLLOWUP_SECOND)
    witness = distinguishing_test(left, right)
    assert witness is not None
    assert not has_prob_choice(witness)
    compiled = compile_term(witness)
    assert apply_test(left, compiled) != apply_test(right, compiled)


def test_synthesis_returns_none_for_equivalent_processes():
    machine = graph(COIN_MACHINE_EARLY)
    assert distinguishing_test(machine, machine) is None
    assert distinguishing_test(machine, graph(COIN_MACHINE_LATE)) is None


def test_synthesis_base_case_probes_outside_the_menu():
    # menu distributions differ at {a}: probing b alone separates them
    left = graph("a->0")
    right = graph("p{1/2:a->0, 1/2:b->0}")
    witness = distinguishing_test(left, right)
    assert witness is not None
    assert render(witness) == "b->w"


def _numeric_outcome(process: Pts, test: Pts, point: dict) -> F:
    """Independent oracle: the outcome recursion evaluated directly with
    Fractions at a fixed point, bypassing the symbolic engine entirely."""
    from probproc.pts import OMEGA

    def run(s: int, t: int) -> F:
        if test.kind(t) == "n" and OMEGA in test.menu(t):
            return F(1)
        if process.kind(s) == "p":
            return sum(
                (w * run(s2, t) for w, s2 in process.prob_successors(s)), F(0)
            )
        if test.kind(t) == "p":
            return sum((w * run(s, t2) for w, t2 in test.prob_successors(t)), F(0))
        common = sorted((process.menu(s) & test.menu(t)) - {OMEGA})
        if not common:
            return F(0)
        total = sum(point[label] for label in common)
        return sum(
            (point[label] / total)
            * run(process.action_successor(s, label), test.action_successor(t, label))
            for label in common
        )

    return run(process.root, test.root)


def test_symbolic_outcome_matches_independent_numeric_recursion():
    rng = random.Random(19)
    cfg = GenConfig(alphabet_size=3, max_depth=3, seed=19)
    probes = list(iter_tests(("a", "b", "c"), 2))
    checked = 0
    for _ in range(40):
        pts = compile_term(random_term(cfg, rng))
        for probe_term in rng.sample(probes, 15):
            probe = compile_term(probe_term)
            symbolic = apply_test(pts, probe)
            for _ in range(3):
                point = {
                    name: F(rng.randint(1, 30), rng.randint(1, 30))
                    for name in ("a", "b", "c")
                }
                assert symbolic.evaluate(
                    {k: v for k, v in point.items() if k in symbolic.variables()}
                ) == _numeric_outcome(pts, probe, point)
                checked += 1
    assert checked >= 1000


def test_every_enumerated_test_can_succeed():
    # tests that cannot reach success score zero everywhere and are omitted
    from probproc.pts import OMEGA

    for probe_term in iter_tests(("a", "b"), 2):
        compiled = compile_term(probe_term)
        reaches = any(label == OMEGA for _, label, _ in compiled.action_edges)
        assert reaches


def test_tests_may_use_every_operator():
    # test terms admit the full grammar, not just choices
    outcome = run("a->b->0", "prio(a->w) || a->w")
    assert outcome == RationalFn.one()
    # second arm continues with c, which the process cannot follow
    mixed = run("a->b->0", "p{1/2:a->w, 1/2:(a->c->w |[]| a->0)}")
    assert mixed == half


def test_synthesis_agrees_with_ready_trace_verdicts_on_random_pairs():
    rng = random.Random(11)
    cfg = GenConfig(alphabet_size=2, max_depth=3, seed=11)
    seen_distinguished = 0
    for _ in range(60):
        left = compile_term(random_term(cfg, rng))
        right = compile_term(random_term(cfg, rng))
        witness = distinguishing_test(left, right)
        equivalent = ready_trace_equivalent(left, right).equivalent
        assert (witness is None) == equivalent
        if witness is not None:
            seen_distinguished += 1
            assert not has_prob_choice(witness)
            compiled = compile_term(witness)
            assert apply_test(left, compiled) != apply_test(right, compiled)
            assert term_action_depth(witness) >= 1
    assert seen_distinguished > 20
