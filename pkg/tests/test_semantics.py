"""Compilation rules: flattening, priority, both parallels, state sharing."""

import random
from fractions import Fraction

from probproc.fixtures import GAME_GUESSER, GAME_TOSSER
from probproc.harness import GenConfig, random_priority_order, random_term
from probproc.parser import parse_priority, parse_term, parse_test
from probproc.pts import OMEGA, Pts, tree_signature, validate
from probproc.semantics import compile_term, composition_warnings
from probproc.terms import SharedPar, alphabet

F = Fraction


def compiled(text: str, order=None, test=False) -> Pts:
    term = (parse_test if test else parse_term)(text)
    return compile_term(term, order) if order else compile_term(term)


def test_empty_process_is_one_deadlocked_state():
    graph = compiled("0")
    assert graph.kinds == {0: "n"}
    assert graph.menu(0) == frozenset()


def test_nested_probabilistic_choice_flattens():
    graph = compiled("p{1/2:a->0, 1/2:p{1/2:b->0, 1/2:c->0}}")
    weights = sorted(w for w, _ in graph.prob_successors(graph.root))
    assert weights == [F(1, 4), F(1, 4), F(1, 2)]
    assert validate(graph) == []


def test_equal_weighted_branches_merge():
    graph = compiled("p{1/2:a->0, 1/2:a->0}")
    assert graph.prob_successors(graph.root) == ((F(1), graph.root + 1),)


def test_priority_drops_dominated_actions():
    order = parse_priority("a > b")
    graph = compiled("prio(a->0 [] b->0)", order)
    assert graph.menu(graph.root) == frozenset({"a"})
    # incomparable actions both survive
    graph = compiled("prio(a->0 [] b->0)")
    assert graph.menu(graph.root) == frozenset({"a", "b"})
    # priority applies at every later step as well
    order = parse_priority("b > c")
    graph = compiled("prio(a->(b->0 [] c->0))", order)
    after = graph.action_successor(graph.root, "a")
    assert graph.menu(after) == frozenset({"b"})


def test_priority_on_deadlock_is_deadlock():
    graph = compiled("prio(0)", parse_priority("a > b"))
    assert graph.menu(graph.root) == frozenset()


def test_priority_passes_probabilistic_steps_through():
    graph = compiled("prio(p{1/3:a->0, 2/3:b->0})", parse_priority("a > b"))
    assert graph.kind(graph.root) == "p"
    menus = {graph.menu(t) for _, t in graph.prob_successors(graph.root)}
    assert menus == {frozenset({"a"}), frozenset({"b"})}


def test_lockstep_parallel_synchronizes_everything():
    graph = compiled("(a->b->0) || (a->c->0)")
    assert graph.menu(graph.root) == frozenset({"a"})
    after = graph.action_successor(graph.root, "a")
    assert graph.menu(after) == frozenset()  # b and c cannot synchronize


def test_lockstep_parallel_multiplies_weights():
    graph = compiled("p{1/2:a->0, 1/2:b->0} || p{1/3:a->0, 2/3:c->0}")
    weights = sorted(w for w, _ in graph.prob_successors(graph.root))
    assert weights == [F(1, 6), F(1, 6), F(1, 3), F(1, 3)]
    assert validate(graph) == []


def test_one_sided_probabilistic_step():
    graph = compiled("p{1/2:a->0, 1/2:b->0} || (a->0)")
    assert graph.kind(graph.root) == "p"
    assert sorted(w for w, _ in graph.prob_successors(graph.root)) == [F(1, 2), F(1, 2)]


def test_shared_parallel_synchronizes_only_shared_actions():
    graph = compiled("(a->x->0) |[]| (a->y->0)")
    # a is shared; x and y are not and interleave afterwards
    assert graph.menu(graph.root) == frozenset({"a"})
    after = graph.action_successor(graph.root, "a")
    assert graph.menu(after) == frozenset({"x", "y"})


def test_shared_parallel_blocks_interleaving_beside_probabilistic_peer():
    # The left x-step must wait while the right side resolves its choice.
    graph = compiled("(x->0) |[]| p{1/2:a->0, 1/2:b->0}")
    assert graph.kind(graph.root) == "p"
    for _, target in graph.prob_successors(graph.root):
        assert "x" in graph.menu(target)


def test_shared_parallel_sync_set_fixed_at_composition():
    # After the right side does its only shared action, the leftover left
    # action stays blocked: the synchronization set does not shrink.
    graph = compiled("(a->a->0) |[]| (a->b->0)")
    after_a = graph.action_successor(graph.root, "a")
    assert graph.menu(after_a) == frozenset({"b"})  # second a still needs both
    after_b = graph.action_successor(after_a, "b")
    assert graph.menu(after_b) == frozenset()


def test_game_composition_matches_drawn_tree():
    composed = compile_term(
        SharedPar(parse_term(GAME_TOSSER), parse_term(GAME_GUESSER))
    )
    assert validate(composed) == []

    kinds = {0: "p"}
    action_edges = []
    prob_edges = [(0, F(1, 2), 1), (0, F(1, 2), 10)]
    # coin says head: guess g1 wins, guess g2 dead-ends after rev
    for i in (1, 10):
        kinds.update({i + j: "n" for j in range(9)})
    action_edges += [
        (1, "wrt", 2), (2, "g1", 3), (2, "g2", 4),
        (3, "rev", 5), (4, "rev", 6), (5, "head", 7), (7, "ok", 8),
        (10, "wrt", 11), (11, "g1", 12), (11, "g2", 13),
        (12, "rev", 14), (13, "rev", 15), (15, "tail", 16), (16, "ok", 17),
    ]
    kinds = {s: k for s, k in kinds.items() if s in
             {0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 16, 17}}
    expected = Pts.build(
        alphabet={"wrt", "rev", "head", "tail", "g1", "g2", "ok"},
        kinds=kinds,
        action_edges=action_edges,
        prob_edges=prob_edges,
        root=0,
    )
    assert validate(expected) == []
    assert tree_signature(composed) == tree_signature(expected)


def test_tests_compile_with_success_edges():
    graph = compiled("h->p->w [] t->w", test=True)
    assert validate(graph, allow_success=True) == []
    assert OMEGA not in graph.alphabet
    after_t = graph.action_successor(graph.root, "t")
    assert OMEGA in graph.menu(after_t)


def test_compiled_random_terms_always_validate():
    rng = random.Random(4)
    cfg = GenConfig(alphabet_size=3, max_depth=4, seed=4)
    for _ in range(500):
        term = random_term(cfg, rng)
        order = random_priority_order(cfg, rng)
        graph = compile_term(term, order)
        assert validate(graph) == []
        assert graph.is_acyclic
        assert graph.alphabet == alphabet(term)


def test_composition_warning_on_pairwise_sharing_chain():
    term = parse_term("(a->b->0 |[]| b->c->0) |[]| c->a->0")
    warnings = composition_warnings(term)
    assert len(warnings) == 1 and "associative" in warnings[0]
    assert composition_warnings(parse_term("a->0 |[]| a->0")) == []
    # sharing p,q and q,r without p,r sharing is allowed
    chain = parse_term("(a->0 |[]| a->b->0) |[]| b->0")
    assert composition_warnings(chain) == []
