"""Strategy trees, the exhaustive verifier, the shipped strategies and
their lifted versions, and the mutation suite."""

from __future__ import annotations

import random

import pytest

from helpers import (
    g3_report,
    g3_split_report,
    g4_report,
    gamma_prime_report,
    gamma_report,
    random_hypergraph,
)
from posgames.constructions import (
    gamma_rho,
    gen_g3,
    gen_gamma,
    split_pendant,
)
from posgames.core import Hypergraph, Position, Side
from posgames.mb import solve_winner
from posgames.strategy import (
    BoundedWin,
    Claim,
    ReplyClass,
    Respond,
    StrategyTree,
    WinNow,
    audit_coverage,
    bounded_win,
    build_g3_strategy,
    build_gamma_strategy,
    conjugate,
    iter_nodes,
    lift_g4,
    lift_gamma_prime,
    lift_split,
    named_mutations,
    replace_first,
    verify_maker_strategy,
)


def _tiny_board() -> Hypergraph:
    return Hypergraph(3, [(0, 1, 2)])


# ---------------------------------------------------------------------------
# tree plumbing


def test_iter_nodes_visits_shared_subtree_once():
    shared = Claim(2, None)
    root = Respond(
        (
            (ReplyClass("a", frozenset((0,))), shared),
            (ReplyClass("b", frozenset((1,))), shared),
        ),
        None,
    )
    nodes = list(iter_nodes(root))
    assert nodes.count(shared) == 1
    assert nodes[0] is root


def test_replace_first_prefers_branches_over_default():
    root = Respond(
        ((ReplyClass("a", frozenset((0,))), Claim(1, None)),),
        Claim(1, None),
    )
    new, found = replace_first(
        root,
        lambda n: isinstance(n, Claim) and n.vertex == 1,
        lambda n: Claim(2, None),
    )
    assert found
    assert new.branches[0][1].vertex == 2
    assert new.default.vertex == 1


def test_conjugate_rejects_non_automorphism():
    s = build_g3_strategy()
    perm = list(range(15))
    perm[3], perm[9] = perm[9], perm[3]
    with pytest.raises(ValueError):
        conjugate(s, perm)


def test_conjugated_pentagon_strategy_still_verifies():
    s = conjugate(build_gamma_strategy(), gamma_rho())
    report = verify_maker_strategy(gen_gamma(), s)
    assert report.verified


# ---------------------------------------------------------------------------
# bounded win


def test_bounded_win_one_move():
    h = Hypergraph(2, [(0,), (1,)])
    p = Position(h)
    assert bounded_win(p, 1)
    assert not bounded_win(p, 0)


def test_bounded_win_needs_three_on_tree_board():
    h = gen_g3()
    p = Position.make(h, [0, 2], [3, 4])
    assert bounded_win(p, 3)
    assert not bounded_win(p, 2)


def test_bounded_win_validates_arguments():
    h = _tiny_board()
    with pytest.raises(ValueError):
        bounded_win(Position(h), -1)
    with pytest.raises(ValueError):
        bounded_win(Position.make(h, [0], [], Side.A), 1)


# ---------------------------------------------------------------------------
# verifier failure kinds on hand-made trees


def test_verifier_reports_leaf_without_win():
    h = Hypergraph(2, [(0, 1)])
    s = StrategyTree(h, Side.A, Claim(0, None))
    report = verify_maker_strategy(h, s)
    assert not report.verified
    assert report.counterexample.kind == "leaf_without_win"


def test_verifier_reports_occupied_claim():
    h = _tiny_board()
    s = StrategyTree(h, Side.A, Claim(0, Respond((), Claim(0, None))))
    report = verify_maker_strategy(h, s)
    assert not report.verified
    assert report.counterexample.kind == "occupied_claim"


def test_verifier_reports_uncovered_reply():
    h = _tiny_board()
    s = StrategyTree(h, Side.A, Claim(0, Respond((), None)))
    report = verify_maker_strategy(h, s)
    assert not report.verified
    assert report.counterexample.kind == "uncovered_reply"


def test_verifier_reports_ill_formed_win_assertion():
    h = Hypergraph(2, [(0, 1)])
    s = StrategyTree(h, Side.A, Claim(0, WinNow(0)))
    report = verify_maker_strategy(h, s)
    assert not report.verified
    assert report.counterexample.kind == "ill_formed"


def test_verifier_rejects_board_mismatch():
    with pytest.raises(ValueError):
        verify_maker_strategy(gen_g3(), build_gamma_strategy())
    with pytest.raises(ValueError):
        verify_maker_strategy(
            gen_gamma(), build_gamma_strategy(), first_mover=Side.A
        )


def test_winning_claim_accepts_matching_assertion():
    h = Hypergraph(3, [(0, 1), (0, 2)])
    root = Claim(0, Respond(
        ((ReplyClass("one", frozenset((1,))), Claim(2, WinNow(1))),),
        Claim(1, WinNow(0)),
    ))
    report = verify_maker_strategy(h, StrategyTree(h, Side.A, root))
    assert report.verified


def test_winning_claim_rejects_wrong_assertion():
    h = Hypergraph(3, [(0, 1), (0, 2)])
    root = Claim(0, Respond(
        ((ReplyClass("one", frozenset((1,))), Claim(2, WinNow(0))),),
        Claim(1, WinNow(0)),
    ))
    report = verify_maker_strategy(h, StrategyTree(h, Side.A, root))
    assert not report.verified
    assert report.counterexample.kind == "leaf_without_win"


# ---------------------------------------------------------------------------
# shipped strategies


def test_tree_board_strategy_verifies():
    report = g3_report()
    assert report.verified
    assert report.counterexample is None


def test_pentagon_strategy_verifies():
    report = gamma_report()
    assert report.verified
    assert report.lines_checked > 0


def test_pentagon_opening_coverage_is_complete():
    coverage = audit_coverage(build_gamma_strategy())
    assert len(coverage) == 35
    assert all(name is not None for name in coverage.values())


def test_gadget_board_lift_verifies():
    report = gamma_prime_report()
    assert report.verified


def test_apex_board_lift_verifies():
    report = g4_report()
    assert report.verified
    assert report.lines_checked < 10**7


def test_split_lift_verifies_on_tree_board():
    report = g3_split_report()
    assert report.verified


def test_split_lift_single_edge_board():
    h = Hypergraph(1, [(0,)])
    s = StrategyTree(h, Side.A, Claim(0, None))
    assert verify_maker_strategy(h, s).verified
    lifted = lift_split(s, h)
    report = verify_maker_strategy(split_pendant(h), lifted)
    assert report.verified


def test_lift_validations():
    with pytest.raises(ValueError):
        lift_gamma_prime(build_g3_strategy())
    with pytest.raises(ValueError):
        lift_g4(build_gamma_strategy())
    with pytest.raises(ValueError):
        lift_split(build_g3_strategy(), gen_gamma())


# ---------------------------------------------------------------------------
# cross-check against the exact solver


def _synthesize_maker_node(h: Hypergraph, ra: int, rb: int):
    """A winning Maker move from (ra, rb), as a script, via the solver."""
    taken = ra | rb
    for v in range(h.vertex_count):
        if taken >> v & 1:
            continue
        ra2 = ra | 1 << v
        if any(mask & ~ra2 == 0 for mask in h.edge_masks):
            return Claim(v, None)
        if solve_winner(Position(h, ra2, rb)) is Side.A:
            return Claim(v, _synthesize_breaker_node(h, ra2, rb))
    raise AssertionError("solver promised a Maker win but no move works")


def _synthesize_breaker_node(h: Hypergraph, ra: int, rb: int):
    branches = []
    taken = ra | rb
    for v in range(h.vertex_count):
        if taken >> v & 1:
            continue
        child = _synthesize_maker_node(h, ra, rb | 1 << v)
        branches.append((ReplyClass(f"v{v}", frozenset((v,))), child))
    return Respond(tuple(branches), None)


def test_solver_synthesized_strategies_verify():
    rng = random.Random(4107)
    verified = 0
    while verified < 8:
        h = random_hypergraph(rng, max_vertices=8, max_edges=5)
        if solve_winner(Position(h)) is not Side.A:
            continue
        root = _synthesize_maker_node(h, 0, 0)
        s = StrategyTree(h, Side.A, root)
        assert verify_maker_strategy(h, s).verified
        verified += 1


# ---------------------------------------------------------------------------
# mutations


def test_every_mutation_is_rejected():
    mutations = named_mutations()
    assert len(mutations) == 20
    names = [name for name, _, _ in mutations]
    assert len(set(names)) == 20
    for name, board, tree in mutations:
        report = verify_maker_strategy(board, tree)
        assert not report.verified, name
        assert report.counterexample is not None, name


def test_counterexamples_are_deterministic():
    mutations = {name: (board, tree) for name, board, tree in named_mutations()}
    board, tree = mutations["wrong-win-assertion"]
    first = verify_maker_strategy(board, tree)
    second = verify_maker_strategy(board, tree)
    assert first.counterexample == second.counterexample
    assert first.lines_checked == second.lines_checked
