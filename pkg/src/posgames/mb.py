"""Exact Maker-Breaker solver.

Maker (side A) and Breaker (side B) alternately claim free vertices; Maker
wins on fully claiming an edge, Breaker wins otherwise.

The search works on the *reduced game*: a position is summarized by the set
of residual edge masks (Breaker-free edges, shrunk by Maker's claims), which
is a complete description of the game value.  Residual sets are canonicalized
(duplicates and dominated supersets dropped, claims outside every live edge
ignored), so transpositions collapse aggressively.  All reductions used are
value-preserving; optional certificates give independently checkable
Breaker-win proofs.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .constructions import reduce_lemma21
from .core import Hypergraph, Position, Side, iter_bits

__all__ = [
    "MBOptions",
    "Certificate",
    "SolveReport",
    "Pairing",
    "solve_mb",
    "es_potential",
    "find_pairing",
    "verify_pairing",
    "maker_root_restriction",
    "check_certificate",
    "check_report",
]


@dataclass(frozen=True)
class MBOptions:
    """Solver switches.  Every combination yields the same verdict; the
    switches only control pruning and which certificate can be produced."""

    use_es_certificate: bool = True
    use_pairing_certificate: bool = True
    use_lemma21: bool = True
    use_lemma22: bool = True
    node_limit: int | None = None
    worker_count: int = 1


@dataclass(frozen=True)
class Certificate:
    """A self-contained win proof.  Kinds: ``erdos_selfridge``, ``pairing``,
    ``completed_edge``, ``all_blocked``, ``reduction``."""

    kind: str
    payload: dict


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a solve.  ``winner`` is None only when ``exhausted`` is set
    (the node limit was hit before the value was established)."""

    winner: Side | None
    first_mover: Side
    nodes_expanded: int
    elapsed_ms: int
    certificate: Certificate | None = None
    exhausted: bool = False


@dataclass
class Pairing:
    """Disjoint vertex pairs covering every edge: Breaker answers inside the
    touched pair, so every edge permanently keeps a Breaker vertex."""

    pairs: list[tuple[int, int]]
    edge_cover: dict[int, tuple[int, int]]


class _Exhausted(Exception):
    pass


class _Budget:
    """Node counter with an optional cap; lock-guarded when shared."""

    __slots__ = ("limit", "count", "_lock")

    def __init__(self, limit: int | None, threaded: bool):
        self.limit = limit
        self.count = 0
        self._lock = threading.Lock() if threaded else None

    def spend(self) -> None:
        if self._lock is None:
            self.count += 1
            if self.limit is not None and self.count > self.limit:
                raise _Exhausted()
        else:
            with self._lock:
                self.count += 1
                if self.limit is not None and self.count > self.limit:
                    raise _Exhausted()


# ---------------------------------------------------------------------------
# Residual-mask machinery.
# ---------------------------------------------------------------------------


def _canon(masks) -> tuple[int, ...]:
    """Canonical residual set: deduplicated, supersets of other residuals
    dropped (they can neither be completed first nor blocked separately),
    sorted by (size, value)."""
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        if any(o & m == o for o in kept):
            continue
        kept.append(m)
    return tuple(kept)


def _ordered_vertices(masks) -> list[int]:
    """Candidate moves: vertices of live edges, most urgent first (weight
    2^-size per incident edge), index ascending as the tie-break."""
    score: dict[int, int] = {}
    for m in masks:
        w = 1 << max(0, 12 - m.bit_count())
        for v in iter_bits(m):
            score[v] = score.get(v, 0) + w
    return sorted(score, key=lambda v: (-score[v], v))


def _es_below_half(masks) -> bool:
    """Integer-exact test of sum(2^-size) < 1/2 over the residual set."""
    k = max(m.bit_count() for m in masks)
    total = sum(1 << (k - m.bit_count()) for m in masks)
    return 2 * total < (1 << k)


def _lemma22_vertex(masks) -> int | None:
    """In a residual set with an edge {x, y} where x lies in no other edge,
    Maker may restrict the current move to y without changing the value."""
    deg: dict[int, int] = {}
    for m in masks:
        for v in iter_bits(m):
            deg[v] = deg.get(v, 0) + 1
    for m in masks:
        if m.bit_count() == 2:
            lo = m & -m
            a = lo.bit_length() - 1
            b = (m ^ lo).bit_length() - 1
            da, db = deg[a] == 1, deg[b] == 1
            if da and db:
                return a
            if da:
                return b
            if db:
                return a
    return None


def _expand(masks, to_move, opts):
    """Shortcut or expand one node.  Returns ("win", side) or
    ("moves", [(vertex, canonical child), ...])."""
    if to_move is Side.A:
        if masks[0].bit_count() == 1:
            return "win", Side.A
        if opts.use_es_certificate and _es_below_half(masks):
            return "win", Side.B
        forced = _lemma22_vertex(masks) if opts.use_lemma22 else None
        cands = [forced] if forced is not None else _ordered_vertices(masks)
        moves = []
        for v in cands:
            bit = 1 << v
            child = [m & ~bit if m & bit else m for m in masks]
            if any(c == 0 for c in child):
                return "win", Side.A
            moves.append((v, _canon(child)))
        return "moves", moves
    threats = [m for m in masks if m.bit_count() == 1]
    if len(threats) >= 2:
        return "win", Side.A
    if len(threats) == 1:
        cands = [threats[0].bit_length() - 1]
    else:
        cands = _ordered_vertices(masks)
    moves = []
    for v in cands:
        bit = 1 << v
        moves.append((v, tuple(m for m in masks if not m & bit)))
    return "moves", moves


def _value(masks, to_move, memo, budget, opts) -> Side:
    if not masks:
        return Side.B
    key = (masks, to_move)
    hit = memo.get(key)
    if hit is not None:
        return hit
    budget.spend()
    kind, data = _expand(masks, to_move, opts)
    if kind == "win":
        memo[key] = data
        return data
    result = to_move.other()
    for _v, child in data:
        if _value(child, to_move.other(), memo, budget, opts) is to_move:
            result = to_move
            break
    memo[key] = result
    return result


# ---------------------------------------------------------------------------
# Certificates.
# ---------------------------------------------------------------------------


def es_potential(p: Position) -> Fraction:
    """Sum over Breaker-free edges of 2^-(vertices not yet claimed by Maker),
    exactly.  Below 1/2 with Maker to move on a residual-fresh position, it
    certifies a Breaker win."""
    total = Fraction(0)
    for m in p.board.edge_masks:
        if m & p.b_mask:
            continue
        total += Fraction(1, 1 << (m & ~p.a_mask).bit_count())
    return total


def find_pairing(h: Hypergraph) -> Pairing | None:
    """Search for disjoint pairs covering every edge via bipartite matching
    (two copies of every edge against the vertex set, augmenting paths).
    Always succeeds on n-uniform boards of maximum degree at most n/2."""
    owner: dict[int, int] = {}

    def assign(copy: int, visited: set) -> bool:
        for v in h.edges[copy // 2]:
            if v in visited:
                continue
            visited.add(v)
            if v not in owner or assign(owner[v], visited):
                owner[v] = copy
                return True
        return False

    for copy in range(2 * len(h.edges)):
        if not assign(copy, set()):
            return None
    matched: dict[int, int] = {}
    for v, copy in owner.items():
        matched[copy] = v
    pairs = []
    cover = {}
    for e in range(len(h.edges)):
        x, y = matched[2 * e], matched[2 * e + 1]
        pair = (min(x, y), max(x, y))
        pairs.append(pair)
        cover[e] = pair
    return Pairing(pairs, cover)


def verify_pairing(h: Hypergraph, pr: Pairing) -> bool:
    """Check the pairing proves a Breaker win: every edge is assigned a pair
    of two distinct vertices inside it, listed in ``pairs``, and distinct
    pairs share no vertex."""
    if set(pr.edge_cover) != set(range(len(h.edges))):
        return False
    listed = {tuple(p) for p in pr.pairs}
    used: set[int] = set()
    for pair in {tuple(p) for p in pr.edge_cover.values()}:
        if len(pair) != 2 or pair[0] == pair[1] or pair not in listed:
            return False
        if pair[0] in used or pair[1] in used:
            return False
        used.update(pair)
    for e, pair in pr.edge_cover.items():
        if not set(pair) <= set(h.edges[e]):
            return False
    return True


def maker_root_restriction(h: Hypergraph) -> int | None:
    """If some 2-edge {x, y} has degree(x) = 1, Maker (to move) may restrict
    the current move to y.  Scans edges in index order; when both vertices
    have degree 1 the lower-indexed one is returned."""
    deg = h.degrees()
    for e in h.edges:
        if len(e) == 2:
            a, b = e
            da, db = deg[a] == 1, deg[b] == 1
            if da and db:
                return a
            if da:
                return b
            if db:
                return a
    return None


def check_certificate(
    h: Hypergraph, cert: Certificate, winner: Side, first_mover: Side
) -> bool:
    """Independently validate a certificate against the board it was
    issued for."""
    if cert.kind == "all_blocked":
        return winner is Side.B and not h.edges
    if cert.kind == "completed_edge":
        idx = cert.payload.get("edge")
        return (
            winner is Side.A
            and first_mover is Side.A
            and isinstance(idx, int)
            and 0 <= idx < len(h.edges)
            and len(h.edges[idx]) == 1
        )
    if cert.kind == "erdos_selfridge":
        if winner is not Side.B or first_mover is not Side.A:
            return False
        pot = es_potential(Position(h))
        return pot < Fraction(1, 2) and cert.payload.get("potential") == str(pot)
    if cert.kind == "pairing":
        if winner is not Side.B:
            return False
        pairs = [tuple(p) for p in cert.payload.get("pairs", [])]
        cover = {
            int(k): tuple(v) for k, v in cert.payload.get("edge_cover", {}).items()
        }
        return verify_pairing(h, Pairing(pairs, cover))
    if cert.kind == "reduction":
        if winner is not Side.B:
            return False
        reduced, pairs = reduce_lemma21(h)
        if [list(p) for p in pairs] != cert.payload.get("pairs"):
            return False
        sub = cert.payload.get("sub_certificate")
        if sub is not None:
            return check_certificate(
                reduced, Certificate(sub["kind"], sub["payload"]), Side.B, first_mover
            )
        redo = solve_mb(reduced, first_mover, MBOptions(use_lemma21=False))
        return redo.winner is Side.B
    return False


def check_report(h: Hypergraph, report: SolveReport) -> bool:
    """Validate a report's certificate (reports without one don't check)."""
    if report.certificate is None or report.winner is None:
        return False
    return check_certificate(h, report.certificate, report.winner, report.first_mover)


# ---------------------------------------------------------------------------
# Top-level solve.
# ---------------------------------------------------------------------------


def solve_winner(p: Position, opts: MBOptions | None = None) -> Side | None:
    """Game value from an arbitrary position (None only on node-limit
    exhaustion).  Used by tests and the strategy tooling; certificates are
    the business of :func:`solve_mb`."""
    opts = opts or MBOptions()
    masks = []
    for m in p.board.edge_masks:
        if m & p.b_mask:
            continue
        r = m & ~p.a_mask
        if r == 0:
            return Side.A
        masks.append(r)
    budget = _Budget(opts.node_limit, False)
    try:
        return _value(_canon(masks), p.to_move(), {}, budget, opts)
    except _Exhausted:
        return None


def solve_mb(
    h: Hypergraph, first_mover: Side = Side.A, opts: MBOptions | None = None
) -> SolveReport:
    """Decide the Maker-Breaker game on ``h`` with the designated first
    mover.  The verdict is exact for every option combination; options only
    select which shortcut certificates may be attached."""
    opts = opts or MBOptions()
    if opts.worker_count < 1:
        raise ValueError("worker_count must be positive")
    start = time.perf_counter()

    def report(winner, nodes, cert=None, exhausted=False):
        ms = int((time.perf_counter() - start) * 1000)
        return SolveReport(winner, first_mover, nodes, ms, cert, exhausted)

    if not h.edges:
        return report(Side.B, 0, Certificate("all_blocked", {}))

    if first_mover is Side.A:
        for idx, e in enumerate(h.edges):
            if len(e) == 1:
                return report(
                    Side.A, 0, Certificate("completed_edge", {"edge": idx, "vertex": e[0]})
                )

    if opts.use_pairing_certificate:
        pr = find_pairing(h)
        if pr is not None:
            payload = {
                "pairs": [list(p) for p in pr.pairs],
                "edge_cover": {k: list(v) for k, v in pr.edge_cover.items()},
            }
            return report(Side.B, 0, Certificate("pairing", payload))

    if opts.use_lemma21:
        reduced, pairs = reduce_lemma21(h)
        if pairs:
            sub = solve_mb(reduced, first_mover, opts)
            if sub.exhausted:
                return report(None, sub.nodes_expanded, exhausted=True)
            if sub.winner is Side.B:
                payload = {
                    "pairs": [list(p) for p in pairs],
                    "sub_certificate": (
                        {"kind": sub.certificate.kind, "payload": sub.certificate.payload}
                        if sub.certificate
                        else None
                    ),
                }
                return report(Side.B, sub.nodes_expanded, Certificate("reduction", payload))
            # One-directional: a Maker win on the reduction is not projected
            # back; fall through to the full board.

    if first_mover is Side.A and opts.use_es_certificate:
        pot = es_potential(Position(h))
        if pot < Fraction(1, 2):
            return report(
                Side.B, 0, Certificate("erdos_selfridge", {"potential": str(pot)})
            )

    masks0 = _canon(h.edge_masks)
    budget = _Budget(opts.node_limit, opts.worker_count > 1)
    memo: dict = {}
    try:
        budget.spend()
        kind, data = _expand(masks0, first_mover, opts)
        if kind == "win":
            return report(data, budget.count)
        other = first_mover.other()
        if opts.worker_count == 1:
            for _v, child in data:
                if _value(child, other, memo, budget, opts) is first_mover:
                    return report(first_mover, budget.count)
            return report(other, budget.count)
        with ThreadPoolExecutor(max_workers=opts.worker_count) as pool:
            futures = [
                pool.submit(_value, child, other, memo, budget, opts)
                for _v, child in data
            ]
            exhausted = False
            values = []
            for f in futures:
                try:
                    values.append(f.result())
                except _Exhausted:
                    exhausted = True
            if first_mover in values:
                return report(first_mover, budget.count)
            if exhausted:
                return report(None, budget.count, exhausted=True)
            return report(other, budget.count)
    except _Exhausted:
        return report(None, budget.count, exhausted=True)
