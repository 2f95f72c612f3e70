"""Scripted Maker-strategy trees.

A strategy is a finite tree (shared subtrees make it a DAG) of four node
kinds: Maker claims, opponent-reply dispatches, explicit win assertions, and
entries into virtual layers (used by the lifting constructions).  Trees are
immutable; surgery helpers rebuild the spine.

Verification semantics live in :mod:`posgames.strategy.verifier`; the key
convention to know when reading scripts is that a line ends successfully the
moment a real edge is fully Maker-claimed (checked after every claim), so a
final ``Claim(v, WinNow(e))`` acts as "claim v, which completes e".
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Union

from ..core import Hypergraph, Side, is_automorphism

__all__ = [
    "Claim",
    "ClaimFirstFree",
    "Respond",
    "ReplyClass",
    "BoundedWin",
    "WinNow",
    "EnterLayer",
    "Node",
    "StrategyTree",
    "iter_nodes",
    "replace_first",
    "conjugate",
]


@dataclass(frozen=True)
class ReplyClass:
    """A named set of opponent replies (in the coordinates of the board the
    surrounding script plays on)."""

    name: str
    vertices: frozenset

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


@dataclass(frozen=True)
class BoundedWin:
    """Default rule: Maker completes an edge within k of his own moves; the
    verifier discharges it by exhaustive search."""

    k: int = 2


@dataclass(frozen=True)
class WinNow:
    """Assert that the given edge (of the script's board) is now fully
    Maker-claimed.  Reached only if the completing claim somehow failed to
    end the line, so it doubles as a tripwire for broken scripts."""

    edge: int


@dataclass(frozen=True)
class Claim:
    """Maker claims a vertex.  ``then`` may be None when the claim must end
    the line by completing an edge."""

    vertex: int
    then: "Node | None" = None


@dataclass(frozen=True)
class ClaimFirstFree:
    """Maker claims the first listed vertex that is still unclaimed (used by
    leaf adapters whose exact target depends on earlier exchanges)."""

    vertices: tuple
    then: "Node | None" = None


@dataclass(frozen=True)
class Respond:
    """Opponent to move: dispatch on the (translated) reply.  ``default``
    handles replies outside every branch: a node, a BoundedWin rule, or None
    (in which case an unlisted reply is a verification failure)."""

    branches: tuple  # of (ReplyClass, Node)
    default: "Node | BoundedWin | None" = None


@dataclass(frozen=True, eq=False)
class EnterLayer:
    """Switch to a virtual layer and run ``then`` (a node scripted on the
    layer's board) inside it."""

    layer: "object"
    then: "Node"


Node = Union[Claim, ClaimFirstFree, Respond, WinNow, EnterLayer]


@dataclass(frozen=True, eq=False)
class StrategyTree:
    """A complete scripted strategy: the board it plays on, who moves first,
    and the root node.  ``node_relevance`` optionally maps id(node) to a
    vertex mask (in the node's own board coordinates) that bounds which
    claims matter below that node; the verifier uses it to collapse
    equivalent opponent deviations."""

    board: Hypergraph
    first_mover: Side
    root: Node
    node_relevance: dict | None = None


def iter_nodes(node: Node) -> Iterator[Node]:
    """All nodes reachable from ``node`` (each shared subtree visited once),
    in deterministic depth-first order."""
    seen: set[int] = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        yield n
        if isinstance(n, (Claim, ClaimFirstFree, EnterLayer)):
            if n.then is not None:
                stack.append(n.then)
        elif isinstance(n, Respond):
            if isinstance(n.default, (Claim, ClaimFirstFree, Respond, WinNow, EnterLayer)):
                stack.append(n.default)
            for _cls, child in reversed(n.branches):
                stack.append(child)


def replace_first(node: Node, pred: Callable[[Node], bool], repl: Callable[[Node], Node]):
    """Rebuild the tree with the first node satisfying ``pred`` (depth-first,
    branches in listed order before defaults) replaced by ``repl(node)``.
    Returns (new_root, found)."""
    if pred(node):
        return repl(node), True
    if isinstance(node, (Claim, ClaimFirstFree, EnterLayer)):
        if node.then is None:
            return node, False
        child, hit = replace_first(node.then, pred, repl)
        return (replace(node, then=child) if hit else node), hit
    if isinstance(node, Respond):
        new_branches = []
        for i, (cls, child) in enumerate(node.branches):
            sub, hit = replace_first(child, pred, repl)
            if hit:
                new_branches = list(node.branches)
                new_branches[i] = (cls, sub)
                return replace(node, branches=tuple(new_branches)), True
        if isinstance(node.default, (Claim, ClaimFirstFree, Respond, WinNow, EnterLayer)):
            sub, hit = replace_first(node.default, pred, repl)
            if hit:
                return replace(node, default=sub), True
    return node, False


def conjugate(s: StrategyTree, perm) -> StrategyTree:
    """Relabel a strategy through a board automorphism: claim vertices,
    reply classes and win-edge indices all map through ``perm``.  The
    verification verdict is invariant.  Layers are kept as-is (the built-in
    layers commute with board automorphisms); any node-relevance table is
    dropped (it is an optimization hint, not part of the strategy)."""
    if not is_automorphism(s.board, perm):
        raise ValueError("permutation is not an automorphism of the board")
    perm = list(perm)
    edge_sets = {frozenset(e): i for i, e in enumerate(s.board.edges)}
    cache: dict[int, Node] = {}

    def conv(node: Node | None) -> Node | None:
        if node is None:
            return None
        got = cache.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Claim):
            out: Node = Claim(perm[node.vertex], conv(node.then))
        elif isinstance(node, ClaimFirstFree):
            out = ClaimFirstFree(tuple(perm[v] for v in node.vertices), conv(node.then))
        elif isinstance(node, WinNow):
            image = frozenset(perm[v] for v in s.board.edges[node.edge])
            out = WinNow(edge_sets[image])
        elif isinstance(node, Respond):
            branches = tuple(
                (ReplyClass(c.name, frozenset(perm[v] for v in c.vertices)), conv(child))
                for c, child in node.branches
            )
            default = node.default
            if isinstance(default, (Claim, ClaimFirstFree, Respond, WinNow, EnterLayer)):
                default = conv(default)
            out = Respond(branches, default)
        elif isinstance(node, EnterLayer):
            out = EnterLayer(node.layer, conv(node.then))
        else:  # pragma: no cover - exhaustive
            raise TypeError(f"unknown node {node!r}")
        cache[id(node)] = out
        return out

    return StrategyTree(s.board, s.first_mover, conv(s.root), None)
