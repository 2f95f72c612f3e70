"""Lifting a verified base-board strategy to the derived boards.

``lift_gamma_prime`` replays a pentagon strategy on the gadget board: real
moves on surviving pentagon vertices carry over unchanged, a move anywhere
in a gadget counts as a move on that spoke's tip, and completing a spoke
hands control to a scripted six-move gadget endgame.

``lift_g4`` wraps a gadget-board strategy in the apex opening: Maker walks
the apex chain while Breaker answers in the matching region, and enters the
first copy Breaker neglects.

``lift_split`` replays a strategy for ``h`` on ``split_pendant(h)``: each
opponent move on a pendant is answered on its twin, and completing a base
edge ends with a claim of whichever pendant survives.
"""

from __future__ import annotations

from ..constructions import (
    G4_COPY_OFFSETS,
    g4_s,
    g4_v,
    gadget_y,
    gadget_z,
    gamma_t,
    gamma_w,
    gamma_x,
    gen_g4,
    gen_gamma,
    gen_gamma_prime,
    split_pendant,
)
from ..core import Hypergraph, Side
from .layers import Layer
from .nodes import (
    BoundedWin,
    Claim,
    ClaimFirstFree,
    EnterLayer,
    Node,
    ReplyClass,
    Respond,
    StrategyTree,
    WinNow,
    iter_nodes,
)

__all__ = ["lift_g4", "lift_gamma_prime", "lift_split"]

_APEX_MASK = ((1 << 7) - 1) << 555


def _block_mask(g: int) -> int:
    """Gadget-board mask of the ten fresh vertices of spoke ``g`` (0..14)."""
    return ((1 << 10) - 1) << (35 + 10 * g)


def _pentagon_translate(p: int, va: int, vb: int) -> int | None:
    """Gadget-board vertex -> pentagon vertex.

    Hubs and x-vertices carry over; a spoke tip or anything in its gadget
    counts as the tip.  When the tip is already spoken for, the move counts
    as a free x-vertex instead (lowest spoke position, then lowest hub), and
    as a pass if none is left.
    """
    if p < 20:
        return p
    g = p - 20 if p < 35 else (p - 35) // 10
    tip = 20 + g
    taken = va | vb
    if not (taken >> tip) & 1:
        return tip
    for j in range(3):
        for i in range(5):
            xv = 5 + 3 * i + j
            if not (taken >> xv) & 1:
                return xv
    return None


def _pentagon_relevance(va: int, vb: int) -> int:
    """Gadget interiors whose state can still matter.

    The pentagon vertices themselves travel in the layer's own (va, vb)
    state, so only gadget interiors need raw-board relevance.  A gadget's
    interior only matters while its spoke can still complete *and* its tip
    already belongs to Maker: any opponent move into a gadget with a free
    tip claims the tip itself, so such gadgets stay empty and
    interchangeable until the tip is spoken for.
    """
    rel = 0
    for g in range(15):
        triple = (1 << (g // 3)) | (1 << (5 + g)) | (1 << (20 + g))
        if not vb & triple and (va >> (20 + g)) & 1:
            rel |= _block_mask(g)
    return rel


def _gadget_endgame(i: int, j: int) -> Node:
    """Scripted finish inside gadget (i, j) once its spoke is complete.

    Maker owns w, x and t, so the three edges pairing consecutive y's are
    one move from double duty; whatever Breaker does first, two forced
    trades leave both z-edges of one parity open.
    """

    def y(k: int) -> int:
        return gadget_y(i, j, k)

    def z(k: int) -> int:
        return gadget_z(i, j, k)

    def chain(steps, final: int) -> Node:
        node: Node = Claim(final, Respond((), BoundedWin(2)))
        for v, reply in reversed(steps):
            cls = ReplyClass(f"y{i}{j}{reply - gadget_y(i, j, 1) + 1}",
                             frozenset((reply,)))
            node = Claim(v, Respond(((cls, node),), BoundedWin(2)))
        return node

    to_odd_a = chain([(y(3), y(4)), (y(5), y(6))], y(1))
    to_even_c = chain([(y(6), y(5)), (y(2), y(1))], y(4))
    to_even_d = chain([(y(5), y(6)), (y(1), y(2))], y(3))
    to_even_e = chain([(y(4), y(3)), (y(2), y(1))], y(6))
    to_odd_f = chain([(y(3), y(4)), (y(1), y(2))], y(5))
    default = chain([(y(4), y(3)), (y(6), y(5))], y(2))
    return Respond(
        (
            (ReplyClass("even-pair", frozenset((y(2), z(3), z(4)))), to_odd_a),
            (ReplyClass("y3", frozenset((y(3),))), to_even_c),
            (ReplyClass("y4", frozenset((y(4),))), to_even_d),
            (ReplyClass("y5", frozenset((y(5),))), to_even_e),
            (ReplyClass("y6", frozenset((y(6),))), to_odd_f),
        ),
        default,
    )


def lift_gamma_prime(s: StrategyTree) -> StrategyTree:
    """Lift a pentagon strategy (Breaker first) to the gadget board."""
    base = gen_gamma()
    if s.board != base:
        raise ValueError("expected a strategy for the pentagon board")
    if s.first_mover is not Side.B:
        raise ValueError("expected a strategy with Breaker moving first")
    for node in iter_nodes(s.root):
        if isinstance(node, WinNow) and not 0 <= node.edge < 20:
            raise ValueError(
                "base strategy must win on spoke or long edges only"
            )
    target = gen_gamma_prime()
    node_rel = dict(s.node_relevance or {})
    endgames = {}
    for i in range(1, 6):
        for j in range(1, 4):
            g = 3 * (i - 1) + (j - 1)
            endgame = _gadget_endgame(i, j)
            mask = (
                _block_mask(g)
                | (1 << gamma_w(i))
                | (1 << gamma_x(i, j))
                | (1 << gamma_t(i, j))
            )
            for n in iter_nodes(endgame):
                if isinstance(n, Respond):
                    node_rel[id(n)] = mask
            endgames[g] = endgame
    layer = Layer(
        name="pentagon-over-gadgets",
        board=base,
        embed=tuple(range(35)),
        translate=_pentagon_translate,
        win_edges={15 + k: 105 + k for k in range(5)},
        on_win=endgames,
        stateful=True,
        relevance=_pentagon_relevance,
        dynamic_groups=tuple(
            (gamma_t(i, j),)
            + tuple(gadget_y(i, j, k) for k in range(1, 7))
            + tuple(gadget_z(i, j, k) for k in range(1, 5))
            for i in range(1, 6)
            for j in range(1, 4)
        ),
    )
    return StrategyTree(target, Side.B, EnterLayer(layer, s.root), node_rel)


def lift_g4(s: StrategyTree) -> StrategyTree:
    """Wrap a gadget-board strategy (Breaker first) in the apex opening."""
    base = gen_gamma_prime()
    if s.board != base:
        raise ValueError("expected a strategy for the gadget board")
    if s.first_mover is not Side.B:
        raise ValueError("expected a strategy with Breaker moving first")
    target = gen_g4()
    node_rel = dict(s.node_relevance or {})
    copy_masks = []
    copy_layers = []
    for c in range(3):
        off = G4_COPY_OFFSETS[c]

        def translate(p: int, va: int, vb: int, off=off) -> int | None:
            q = p - off
            return q if 0 <= q < 185 else None

        copy_layers.append(
            Layer(
                name=f"copy-{c + 1}",
                board=base,
                embed=tuple(range(off, off + 185)),
                translate=translate,
                win_edges={l: 110 * c + l for l in range(110)},
                stateful=False,
                relevance=lambda va, vb: 0,
            )
        )
        copy_masks.append(((1 << 185) - 1) << off | (1 << g4_s(c + 1)))
    nxt: Node = Claim(g4_v(4), WinNow(330))
    for c in (3, 2, 1):
        region = frozenset(
            range(G4_COPY_OFFSETS[c - 1], G4_COPY_OFFSETS[c - 1] + 185)
        ) | {g4_s(c)}
        enter = Claim(g4_s(c), EnterLayer(copy_layers[c - 1], s.root))
        respond = Respond(((ReplyClass(f"region-{c}", region), nxt),), enter)
        rel = _APEX_MASK
        for cc in range(c, 4):
            rel |= copy_masks[cc - 1]
        node_rel[id(respond)] = rel
        nxt = Claim(g4_v(c), respond)
    return StrategyTree(target, Side.A, nxt, node_rel)


def lift_split(s: StrategyTree, h: Hypergraph) -> StrategyTree:
    """Replay a strategy for ``h`` on the pendant-split of ``h``."""
    if s.board != h:
        raise ValueError("strategy board does not match the base hypergraph")
    target = split_pendant(h)
    n = h.vertex_count
    answers = {}
    on_win = {}
    for e in range(len(h.edges)):
        xe, ye = n + 2 * e, n + 2 * e + 1
        answers[xe] = ye
        answers[ye] = xe
        on_win[e] = Respond((), ClaimFirstFree((xe, ye)))
    layer = Layer(
        name="pendant-split",
        board=h,
        embed=tuple(range(n)),
        translate=lambda p, va, vb: p if p < n else None,
        on_win=on_win,
        answers=answers,
        stateful=True,
    )
    return StrategyTree(
        target,
        s.first_mover,
        EnterLayer(layer, s.root),
        dict(s.node_relevance or {}),
    )
