"""Flips (Whitehead moves) on inner and pending edges, with path transport.

An inner flip at Z rotates the edge inside its quadrilateral.  With ccw
orders (Z, A, B) at one endpoint and (Z, C, D) at the other, the flipped
graph carries (Z, D, A) and (Z, B, C), and the coordinates move by

    A += phi(Z),  B -= phi(-Z),  C += phi(Z),  D -= phi(-Z),  Z -> -Z,

phi(x) = log(1 + e^x), contributions accumulating per position so an edge
occupying two positions collects both deltas (all coincidence rules follow).
A pending flip rolls the dot-vertex across its vertex: with ccw order
(Z, Y1, Y2) the flipped order is (Y1, Z, Y2) and

    Y1 -= phi(-2Z),  Y2 += phi(2Z),  Z -> -Z.

Transport rewrites a path by the local case table.  Crossings of an inner
edge keep it (diagonal side pattern) or drop it (same-new-vertex pattern);
direct corner turns gain a traversal.  At a flipped pending edge, bounces
between the two neighbor sides trade places with direct corner turns, while
same-side bounces survive.  Turn letters are recomputed from the flipped
cyclic orders, so an incorrect rewrite cannot silently validate.

The Poisson pairing transforms by the exact pushforward of the coordinate
map; ``pushforward_wp`` evaluates it in closed form (every sigmoid term
must cancel, leaving an integer matrix), which is the content of the
preserved-bracket lemma and is asserted exactly in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .fatgraph import FatGraph
from .geodesic import PathWord, Step, WordError
from .poisson import PoissonMatrix
from .ring import Vars


class MoveError(ValueError):
    """Flip requested on an edge of the wrong kind, or an invalid rewrite."""


@dataclass(frozen=True)
class CoordinateUpdate:
    """One additive contribution: edge += sign * phi(arg_sign * arg_mult * Z)."""

    edge: str
    sign: int
    arg_sign: int
    arg_mult: int


@dataclass(frozen=True)
class FlipResult:
    """A performed flip: the new graph plus the exact coordinate rewrite."""

    graph: FatGraph
    edge: str
    kind: str  # "inner" or "pending"
    updates: tuple  # of CoordinateUpdate
    old_graph: FatGraph
    corners: tuple  # inner: (A, B, C, D) halves; pending: (Y1, Y2) halves

    def apply_coordinates(self, values: Mapping[str, float]) -> dict:
        """Numeric image of a coordinate assignment under the flip."""
        out = dict(values)
        z = values[self.edge]
        for upd in self.updates:
            out[upd.edge] = out[upd.edge] + upd.sign * math.log1p(
                math.exp(upd.arg_sign * upd.arg_mult * z)
            )
        out[self.edge] = -z
        return out

    def describe(self) -> str:
        lines = [f"flip {self.kind} {self.edge}: {self.edge} -> -{self.edge}"]
        for upd in self.updates:
            op = "+" if upd.sign > 0 else "-"
            mult = "" if upd.arg_mult == 1 else str(upd.arg_mult)
            sign = "-" if upd.arg_sign < 0 else ""
            lines.append(f"  {upd.edge} {op}= log(1 + e^({sign}{mult}{self.edge}))")
        return "\n".join(lines)


def flip_inner(g: FatGraph, edge: str) -> FlipResult:
    """Whitehead move on an inner edge with distinct endpoints.

    With ccw orders (Z, su, pu) at one endpoint and (Z, sw, pw) at the
    other (s = successor, p = predecessor of Z), the predecessor sides
    gain phi(Z) and the successor sides lose phi(-Z); contracting Z and
    re-expanding along the other diagonal regroups the quad as
    (Z, pu, sw) and (Z, pw, su).  Verified against the exact segment
    identities of the path transport (see tests).
    """
    if g.is_pending(edge):
        raise MoveError(f"{edge} is pending; use flip_pending")
    u, w = g.endpoints(edge)
    if u == w:
        raise MoveError(f"{edge} is a loop; flips need distinct endpoints")
    hu, hw = (edge, 0), (edge, 1)
    su, pu = g.succ(hu), g.pred(hu)
    sw, pw = g.succ(hw), g.pred(hw)
    order = dict(g.order)
    order[u] = (hu, pu, sw)
    order[w] = (hw, pw, su)
    new_graph = FatGraph(order, g.pending)
    updates = (
        CoordinateUpdate(pu[0], +1, +1, 1),
        CoordinateUpdate(su[0], -1, -1, 1),
        CoordinateUpdate(pw[0], +1, +1, 1),
        CoordinateUpdate(sw[0], -1, -1, 1),
    )
    return FlipResult(new_graph, edge, "inner", updates, g, (pu, su, pw, sw))


def flip_pending(g: FatGraph, edge: str) -> FlipResult:
    """Whitehead move rolling the dot-vertex of a pending edge."""
    if not g.is_pending(edge):
        raise MoveError(f"{edge} is inner; use flip_inner")
    h = g.pending_attachment(edge)
    v = g.vertex_of(h)
    Y1, Y2 = g.succ(h), g.pred(h)
    order = dict(g.order)
    order[v] = (Y1, h, Y2)
    new_graph = FatGraph(order, g.pending)
    updates = (
        CoordinateUpdate(Y1[0], -1, -1, 2),
        CoordinateUpdate(Y2[0], +1, +1, 2),
    )
    return FlipResult(new_graph, edge, "pending", updates, g, (Y1, Y2))


# -- path transport ------------------------------------------------------------


def _itinerary(word: PathWord):
    """Traversals (edge, invert, entry half) and the passage after each."""
    g = word.graph
    traversals = []
    passages = []
    for step in word.steps:
        if step.invert:
            entry = (step.edge, 0)
            incoming = (step.edge, 0)
        else:
            entry = (step.edge, 0 if step.direction > 0 else 1)
            incoming = g.partner(entry)
        dep = g.succ(incoming) if step.turn == "R" else g.pred(incoming)
        traversals.append((step.edge, step.invert, entry))
        passages.append((incoming, dep))
    return traversals, passages


def _word_from_tokens(graph: FatGraph, tokens) -> PathWord:
    """Tokens alternate ("T", edge, invert, entry) and ("P", in, out)."""
    if not tokens or len(tokens) % 2 != 0:
        raise MoveError("transport produced an unpaired token stream")
    steps = []
    for k in range(0, len(tokens), 2):
        t = tokens[k]
        p = tokens[k + 1]
        if t[0] != "T" or p[0] != "P":
            raise MoveError("transport produced a misaligned token stream")
        _, edge, invert, entry = t
        _, incoming, dep = p
        if graph.succ(incoming) == dep:
            turn = "R"
        elif graph.pred(incoming) == dep:
            turn = "L"
        else:
            raise MoveError(f"passage {incoming} -> {dep} is not a single turn")
        direction = 1 if entry[1] == 0 else -1
        steps.append(Step(edge, turn, 1 if invert else direction, invert))
    return PathWord(graph, steps)


def transport_path(word: PathWord, fr: FlipResult) -> PathWord:
    """Rewrite a closed word across a flip.

    The transported word is valid on the flipped graph and its geodesic
    function at the transformed coordinates equals the original's at the
    original coordinates.
    """
    if word.graph.order != fr.old_graph.order:
        raise MoveError("word does not live on the flipped graph")
    trav, psg = _itinerary(word)
    n = len(trav)
    Z = fr.edge

    def is_flip_traversal(k):
        return trav[k][0] == Z

    start = next((k for k in range(n) if not is_flip_traversal(k)), None)
    if start is None:
        raise MoveError("word lives entirely on the flipped edge")

    if fr.kind == "inner":
        pu, su, pw, sw = fr.corners
        z0, z1 = (Z, 0), (Z, 1)
        # in the flipped graph pu and sw sit with z0, pw and su with z1
        enter_half = {pu: z0, sw: z0, pw: z1, su: z1}
        drop_pairs = {(pu, sw), (sw, pu), (su, pw), (pw, su)}
        keep_pairs = {(pu, pw), (pw, pu), (su, sw), (sw, su)}
        corner_u = {(pu, su), (su, pu)}
        corner_w = {(pw, sw), (sw, pw)}
        bounce = False
    else:
        Y1, Y2 = fr.corners
        z0 = z1 = (Z, 0)
        enter_half = {Y1: z0, Y2: z0}
        drop_pairs = {(Y1, Y2), (Y2, Y1)}
        keep_pairs = {(Y1, Y1), (Y2, Y2)}
        corner_u = {(Y1, Y2), (Y2, Y1)}
        corner_w = set()
        bounce = True

    def crossing_tokens(x, y):
        """Tokens replacing passage(x->Z), traversal Z, passage(Z->y)."""
        if (x, y) in drop_pairs:
            return [("P", x, y)]
        if (x, y) in keep_pairs:
            hin = enter_half[x]
            hout = hin if bounce else (Z, 1 - hin[1])
            return [("P", x, hin), ("T", Z, bounce, hin), ("P", hout, y)]
        raise MoveError(f"unexpected side pattern {x} -> {y} at the flipped edge")

    def corner_tokens(x, y):
        """Tokens replacing a direct corner passage(x -> y)."""
        hin = enter_half[x]
        hout = hin if bounce else (Z, 1 - hin[1])
        return [("P", x, hin), ("T", Z, bounce, hin), ("P", hout, y)]

    tokens = []
    pos = start
    while True:
        edge, invert, entry = trav[pos]
        tokens.append(("T", edge, invert, entry))
        p_in, p_out = psg[pos]
        nxt = (pos + 1) % n
        if is_flip_traversal(nxt):
            y = psg[nxt][1]
            tokens.extend(crossing_tokens(p_in, y))
            pos = (nxt + 1) % n
        else:
            if (p_in, p_out) in corner_u or (p_in, p_out) in corner_w:
                tokens.extend(corner_tokens(p_in, p_out))
            else:
                tokens.append(("P", p_in, p_out))
            pos = nxt
        if pos == start:
            break
    return _word_from_tokens(fr.graph, tokens)


# -- exact pushforward of the Poisson pairing -------------------------------------


def pushforward_wp(fr: FlipResult, pm: PoissonMatrix) -> PoissonMatrix:
    """Image of the edge pairing under the flip's coordinate map.

    New coordinates are e' = e + sum_k s_k phi(a_k m Z) (and Z' = -Z), so
    {e', f'} expands into the old pairing plus sigmoid-weighted terms; the
    terms in sigma(x) and sigma(-x) must combine through sigma(x) +
    sigma(-x) = 1 into constants.  A non-constant remainder means the move
    is not a Poisson map and raises.
    """
    names = pm.vars.names
    z = fr.edge
    # linear description: new_e = old_e + sum contributions; Z -> -Z
    contribs: dict = {e: [] for e in names}
    for upd in fr.updates:
        contribs[upd.edge].append(upd)

    def brk(a: str, b: str) -> int:
        return pm.pairing(a, b)

    n = len(names)
    out = [[0] * n for _ in range(n)]
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if i == j:
                continue
            sz_a = -1 if a == z else 1
            sz_b = -1 if b == z else 1
            const = Fraction(sz_a * sz_b * brk(a, b))
            # sigma coefficients keyed by the (signed) argument of phi
            sig: dict = {}
            for upd in contribs.get(b, ()):  # {a, phi-part of b'}
                coeff = sz_a * upd.sign * upd.arg_sign * upd.arg_mult * brk(a, z)
                key = upd.arg_sign * upd.arg_mult
                sig[key] = sig.get(key, 0) + coeff
            for upd in contribs.get(a, ()):  # {phi-part of a', b}
                coeff = sz_b * upd.sign * upd.arg_sign * upd.arg_mult * brk(z, b)
                key = upd.arg_sign * upd.arg_mult
                sig[key] = sig.get(key, 0) + coeff
            # {phi-part, phi-part} vanishes since {Z, Z} = 0
            total = const
            for mult in {abs(k) for k in sig}:
                plus = sig.get(mult, 0)
                minus = sig.get(-mult, 0)
                if plus != minus:
                    raise MoveError(
                        f"flip is not a Poisson map on ({a}, {b}): "
                        f"sigma({mult}Z) terms do not cancel"
                    )
                total += plus  # sigma(x) + sigma(-x) = 1
            if total.denominator != 1:
                raise MoveError("pushforward pairing is not integral")
            out[i][j] = int(total)
    return PoissonMatrix(Vars(names), out)
