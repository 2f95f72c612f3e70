"""Hand-scripted Maker strategies for the pentagon and column boards.

``build_gamma_strategy`` plays Breaker-first on ``gen_gamma()``: Maker
answers the opening by taking a hub, then runs one of four forcing lines
whose every claim carries an immediate threat; deviations are discharged
by two-move bounded wins.  Opponent moves on a spoke tip ``t`` are
classified as if they sat on the spoke's hub when nobody holds it, else on
the spoke's ``x`` — at each scripted decision point the hub occupancy is
path-determined, so the redirection resolves into the reply classes at
build time.

``build_g3_strategy`` plays Maker-first on ``gen_g3()``: two hub claims
split the board and a three-move bounded win finishes either half.
"""

from __future__ import annotations

from ..constructions import (
    compose_perms,
    gamma_rho,
    gamma_sigma,
    gamma_t,
    gamma_w,
    gamma_x,
    gen_g3,
    gen_gamma,
)
from ..core import Hypergraph, Side
from .nodes import (
    BoundedWin,
    Claim,
    Node,
    ReplyClass,
    Respond,
    StrategyTree,
    WinNow,
    conjugate,
)

__all__ = ["build_g3_strategy", "build_gamma_strategy"]


def _long_edge(i: int) -> int:
    """Edge index of e_i in gen_gamma()."""
    return 15 + (i - 1)


def _redirects(claimed: frozenset) -> dict:
    """Classification target for each free spoke tip: the spoke's hub when
    nobody holds it, otherwise the spoke's x-vertex."""
    out = {}
    for i in range(1, 6):
        for j in range(1, 4):
            t = gamma_t(i, j)
            if t in claimed:
                continue
            w = gamma_w(i)
            out[t] = w if w not in claimed else gamma_x(i, j)
    return out


def _expand_class(base: set, claimed: frozenset) -> frozenset:
    """Add to ``base`` every spoke tip whose redirection lands in it."""
    redirect = _redirects(claimed)
    return frozenset(base) | {t for t, target in redirect.items() if target in base}


def _forced_line(board: Hypergraph, steps, final: int, win_edge: int) -> Node:
    """A chain of claims, each expecting one forced reply (any other reply
    must lose to a two-move bounded win), ending in a claim that completes
    ``win_edge``."""
    node: Node = Claim(final, WinNow(win_edge))
    for v, reply in reversed(steps):
        cls = ReplyClass(board.names.get(reply, str(reply)), frozenset((reply,)))
        node = Claim(v, Respond(((cls, node),), BoundedWin(2)))
    return node


def _conj(board: Hypergraph, node: Node, perm) -> Node:
    return conjugate(StrategyTree(board, Side.B, node), perm).root


def build_gamma_strategy() -> StrategyTree:
    """Maker's winning reply strategy on gen_gamma() with Breaker first."""
    board = gen_gamma()
    w, x, t = gamma_w, gamma_x, gamma_t

    def line(steps, final, win_edge):
        return _forced_line(board, steps, final, win_edge)

    # Canonical lines, written for the opening handled below; every other
    # opening is this picture rotated/reflected.
    line_a = line(
        [(x(2, 1), t(2, 1)), (x(2, 2), t(2, 2)), (x(5, 1), x(3, 3)),
         (w(5), t(5, 1)), (x(5, 3), t(5, 3))],
        x(4, 2),
        _long_edge(2),
    )
    line_b = line(
        [(x(2, 2), t(2, 2)), (x(2, 3), t(2, 3)), (x(4, 1), x(1, 2)),
         (w(4), t(4, 1)), (x(4, 3), t(4, 3)), (x(3, 2), x(1, 1)),
         (w(3), t(3, 2)), (x(3, 3), t(3, 3))],
        x(5, 1),
        _long_edge(5),
    )
    line_c = line(
        [(x(2, 1), t(2, 1)), (x(2, 3), t(2, 3)), (x(4, 1), x(1, 2)),
         (w(4), t(4, 1)), (x(4, 2), t(4, 2))],
        x(5, 3),
        _long_edge(2),
    )
    line_d = line(
        [(x(2, 2), t(2, 2)), (x(2, 3), t(2, 3)), (x(1, 2), x(4, 1)),
         (w(1), t(1, 2)), (x(1, 3), t(1, 3)), (x(5, 2), x(3, 1)),
         (w(5), t(5, 2)), (x(5, 1), t(5, 1))],
        x(3, 3),
        _long_edge(5),
    )

    toward_e4 = {x(4, 1), x(1, 2), x(2, 3), w(4)}
    toward_e2 = {x(2, 1), x(4, 2), x(5, 3)}

    # Opening on a hub (or a tip redirected to one): Maker takes the next
    # hub round the pentagon.
    hub_claimed = frozenset((w(1), w(2)))
    case_hub = Claim(
        w(2),
        Respond(
            (
                (ReplyClass("toward-e4", _expand_class(toward_e4, hub_claimed)), line_a),
                (ReplyClass("toward-e2", _expand_class(toward_e2, hub_claimed)), line_b),
            ),
            line_c,
        ),
    )

    # Opening on an x-vertex: same hub answer; the second branch must avoid
    # the long edge through the opening vertex, so it runs line_d instead.
    spoke_claimed = frozenset((x(1, 1), w(2)))
    case_spoke = Claim(
        w(2),
        Respond(
            (
                (ReplyClass("toward-e4", _expand_class(toward_e4, spoke_claimed)), line_a),
                (ReplyClass("toward-e2", _expand_class(toward_e2, spoke_claimed)), line_d),
            ),
            line_c,
        ),
    )

    rho = gamma_rho()
    sigma = gamma_sigma()

    def rho_pow(k: int):
        perm = list(range(35))
        for _ in range(k % 5):
            perm = compose_perms(rho, perm)
        return perm

    branches = []
    for i in range(1, 6):
        cls = frozenset((w(i), t(i, 1), t(i, 2), t(i, 3)))
        branches.append(
            (ReplyClass(f"hub-w{i}", cls), _conj(board, case_hub, rho_pow(i - 1)))
        )
    for i in range(1, 6):
        branches.append(
            (
                ReplyClass(f"spoke-x{i}1", frozenset((x(i, 1),))),
                _conj(board, case_spoke, rho_pow(i - 1)),
            )
        )
    for i in range(1, 6):
        branches.append(
            (
                ReplyClass(f"spoke-x{i}2", frozenset((x(i, 2),))),
                _conj(board, case_spoke, rho_pow((i - 3) % 5)),
            )
        )
    for i in range(1, 6):
        branches.append(
            (
                ReplyClass(f"spoke-x{i}3", frozenset((x(i, 3),))),
                _conj(board, case_spoke, compose_perms(rho_pow((i - 2) % 5), sigma)),
            )
        )
    root = Respond(tuple(branches), None)
    return StrategyTree(board, Side.B, root)


def build_g3_strategy() -> StrategyTree:
    """Maker's winning first-player strategy on gen_g3().

    Claim hub v1; if Breaker commits to the right half, take hub v2 and
    finish on the left within three moves, otherwise mirror on the right.
    """
    board = gen_g3()
    finish_left = Claim(1, Respond((), BoundedWin(3)))
    finish_right = Claim(2, Respond((), BoundedWin(3)))
    right_half = ReplyClass("right-half", frozenset((2, 9, 10, 11, 12, 13, 14)))
    root = Claim(0, Respond(((right_half, finish_left),), finish_right))
    return StrategyTree(board, Side.A, root)
