"""Spines of bordered surfaces: trivalent fatgraphs with pending edges.

A graph is stored through its half-edges.  Edge ``e`` has halves ``(e, 0)``
and ``(e, 1)``; for a pending edge half 0 sits at the trivalent vertex and
half 1 at the dot-vertex (an explicit valence-1 vertex named ``dot.e``).
Each trivalent vertex carries a counterclockwise cyclic order of its three
half-edges; slot numbers in the text format index into this order.

Faces are the orbits of ``h -> next_at_vertex(partner(h))``.  Walking a face
passes a pending edge twice (down one side of the dot-vertex and back up the
other), which is exactly the multiplicity with which pending coordinates
enter boundary sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Malformed graph data (validation or parse failure)."""


Half = tuple  # (edge name, 0 or 1)


def dot_vertex(edge: str) -> str:
    return f"dot.{edge}"


@dataclass(frozen=True)
class SurfaceSignature:
    """Genus, boundary count and marked points per boundary component."""

    genus: int
    boundary: int
    delta: tuple

    def __post_init__(self):
        if self.boundary <= 0:
            raise GraphError("a spine needs at least one boundary component")
        if len(self.delta) != self.boundary or any(d < 0 for d in self.delta):
            raise GraphError("delta must list marked points for every boundary component")
        total = sum(self.delta)
        if 2 * self.genus - 2 + self.boundary + (total + 1) // 2 <= 0:
            raise GraphError("signature violates the hyperbolicity constraint")

    @property
    def edge_count(self) -> int:
        return 6 * self.genus - 6 + 3 * self.boundary + 2 * sum(self.delta)

    def sorted_delta(self) -> tuple:
        return tuple(sorted(self.delta, reverse=True))


def double_signature(sig: SurfaceSignature) -> tuple:
    """(genus, holes) of the doubled surface.

    Each boundary with an odd number of marked points contributes one hole
    of the double, each even one contributes two.  With no marked points at
    all the double degenerates into two disjoint clones; the formula is
    still reported but callers should treat that case separately
    (see is_degenerate_double).
    """
    odd = sum(1 for d in sig.delta if d % 2 == 1)
    ghat = 2 * sig.genus - 1 + (sum(sig.delta) + odd) // 2
    shat = 2 * sig.boundary - odd
    return ghat, shat


def is_degenerate_double(sig: SurfaceSignature) -> bool:
    return sum(sig.delta) == 0


@dataclass(frozen=True)
class Face:
    """One boundary walk: half-edges in order, with edge multiplicities."""

    halves: tuple

    def edge_walk(self) -> tuple:
        return tuple(h[0] for h in self.halves)

    def multiplicity(self) -> dict:
        out: dict = {}
        for e in self.edge_walk():
            out[e] = out.get(e, 0) + 1
        return out

    def pending_edges(self, graph: "FatGraph") -> set:
        return {e for e in self.edge_walk() if e in graph.pending}

    def coordinate_sum(self) -> dict:
        """Edge multiplicities of the boundary sum (pending edges twice)."""
        return self.multiplicity()


class FatGraph:
    """Validated immutable fatgraph.

    ``order`` maps each trivalent vertex to its ccw tuple of three halves.
    Dot-vertices are kept explicitly with a single half.
    """

    def __init__(self, order: Mapping[str, Sequence[Half]], pending: Iterable[str]):
        self.order = {v: tuple(hs) for v, hs in order.items()}
        self.pending = frozenset(pending)
        self.at_vertex = {}
        for v, hs in self.order.items():
            for h in hs:
                if h in self.at_vertex:
                    raise GraphError(f"half-edge {h} placed at two vertices")
                self.at_vertex[h] = v
        edges = sorted({h[0] for h in self.at_vertex})
        self.edges = tuple(edges)
        self._validate()

    # -- construction -----------------------------------------------------

    @staticmethod
    def build(inner, pending) -> "FatGraph":
        """Build from slot declarations.

        ``inner``: iterable of (name, v1, slot1, v2, slot2);
        ``pending``: iterable of (name, v, slot).  Slots are 0..2 and give
        the ccw position at the trivalent vertex.
        """
        slots: dict = {}

        def place(vertex, slot, half):
            if not 0 <= slot <= 2:
                raise GraphError(f"slot {slot} out of range at vertex {vertex}")
            key = (vertex, slot)
            if key in slots:
                raise GraphError(f"duplicate slot {slot} at vertex {vertex}")
            slots[key] = half

        names = set()
        pend = []
        for name, v1, s1, v2, s2 in inner:
            if name in names:
                raise GraphError(f"duplicate edge name {name}")
            names.add(name)
            place(v1, s1, (name, 0))
            place(v2, s2, (name, 1))
        for name, v, s in pending:
            if name in names:
                raise GraphError(f"duplicate edge name {name}")
            names.add(name)
            place(v, s, (name, 0))
            pend.append(name)

        vertices = sorted({v for v, _ in slots})
        order = {}
        for v in vertices:
            hs = [slots.get((v, s)) for s in range(3)]
            if any(h is None for h in hs):
                raise GraphError(f"vertex {v} does not have all three slots filled")
            order[v] = tuple(hs)
        for name in pend:
            order[dot_vertex(name)] = ((name, 1),)
        return FatGraph(order, pend)

    def _validate(self):
        for v, hs in self.order.items():
            if v.startswith("dot."):
                if len(hs) != 1:
                    raise GraphError(f"dot-vertex {v} must have valence 1")
            elif len(hs) != 3:
                raise GraphError(f"vertex {v} must have valence 3")
        for e in self.edges:
            for k in (0, 1):
                if (e, k) not in self.at_vertex:
                    raise GraphError(f"edge {e} is missing half {k}")
        for e in self.pending:
            if self.at_vertex[(e, 1)] != dot_vertex(e):
                raise GraphError(f"pending edge {e} must end at its dot-vertex")
        # connectivity over half-edge adjacency
        if self.edges:
            seen = set()
            stack = [self.at_vertex[(self.edges[0], 0)]]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                for h in self.order[v]:
                    stack.append(self.at_vertex[(h[0], 1 - h[1])])
            if seen != set(self.order):
                raise GraphError("graph is not connected")

    # -- combinatorial queries ---------------------------------------------

    def is_pending(self, edge: str) -> bool:
        return edge in self.pending

    @property
    def inner_edges(self) -> tuple:
        return tuple(e for e in self.edges if e not in self.pending)

    def trivalent_vertices(self) -> list:
        return [v for v in self.order if not v.startswith("dot.")]

    def vertex_of(self, half: Half) -> str:
        return self.at_vertex[half]

    def partner(self, half: Half) -> Half:
        return (half[0], 1 - half[1])

    def succ(self, half: Half) -> Half:
        hs = self.order[self.at_vertex[half]]
        return hs[(hs.index(half) + 1) % len(hs)]

    def pred(self, half: Half) -> Half:
        hs = self.order[self.at_vertex[half]]
        return hs[(hs.index(half) - 1) % len(hs)]

    def pending_attachment(self, edge: str) -> Half:
        """The half of a pending edge at its trivalent vertex."""
        if edge not in self.pending:
            raise GraphError(f"{edge} is not a pending edge")
        return (edge, 0)

    def endpoints(self, edge: str) -> tuple:
        return (self.at_vertex[(edge, 0)], self.at_vertex[(edge, 1)])

    # -- faces and signature -------------------------------------------------

    def trace_faces(self) -> list:
        """Boundary walks as orbits of half -> succ(partner(half))."""
        remaining = set(self.at_vertex)
        faces = []
        while remaining:
            start = min(remaining)
            walk = []
            h = start
            while True:
                walk.append(h)
                remaining.discard(h)
                h = self.succ(self.partner(h))
                if h == start:
                    break
            faces.append(Face(tuple(walk)))
        return faces

    def signature(self) -> SurfaceSignature:
        faces = self.trace_faces()
        v = len(self.order)
        e = len(self.edges)
        f = len(faces)
        chi = v - e + f
        if chi % 2 != 0:
            raise GraphError("inconsistent Euler characteristic")
        genus = (2 - chi) // 2
        delta = tuple(len(face.pending_edges(self)) for face in faces)
        return SurfaceSignature(genus, f, delta)

    # -- text format -----------------------------------------------------------

    def serialize(self) -> str:
        lines = []
        placed = set()
        for v in sorted(self.trivalent_vertices()):
            for slot, h in enumerate(self.order[v]):
                e, k = h
                if e in placed:
                    continue
                if e in self.pending:
                    lines.append(f"pedge {e} {v} {slot}")
                    placed.add(e)
                else:
                    v2 = self.at_vertex[(e, 1 - k)]
                    slot2 = self.order[v2].index((e, 1 - k))
                    if k == 0:
                        lines.append(f"edge {e} {v} {slot} {v2} {slot2}")
                    else:
                        lines.append(f"edge {e} {v2} {slot2} {v} {slot}")
                    placed.add(e)
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str, source: str = "<graph>") -> "FatGraph":
        inner = []
        pending = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                if tokens[0] == "edge":
                    if len(tokens) != 6:
                        raise GraphError("expected: edge <name> <v1> <slot1> <v2> <slot2>")
                    inner.append((tokens[1], tokens[2], int(tokens[3]), tokens[4], int(tokens[5])))
                elif tokens[0] == "pedge":
                    if len(tokens) != 4:
                        raise GraphError("expected: pedge <name> <v> <slot>")
                    pending.append((tokens[1], tokens[2], int(tokens[3])))
                else:
                    raise GraphError(f"unknown declaration {tokens[0]!r}")
            except (GraphError, ValueError) as exc:
                raise GraphError(f"{source}:{lineno}: {exc}") from None
        try:
            return FatGraph.build(inner, pending)
        except GraphError as exc:
            raise GraphError(f"{source}: {exc}") from None

    def __repr__(self) -> str:
        return (
            f"FatGraph({len(self.trivalent_vertices())} vertices, "
            f"{len(self.edges)} edges, {len(self.pending)} pending)"
        )


# -- standard constructors ------------------------------------------------------


def standard_graph(kind: str, n: int = 0) -> FatGraph:
    """Construct a named spine.

    ``a_n``: disc with n marked points (n >= 3): a chain of n-2 trivalent
    vertices carrying pending edges Z1..Zn and inner edges Y2..Y(n-2).

    ``d_n``: annulus with n marked points on one boundary (n >= 2): a ring
    of n vertices with ring edges Y1..Yn and pending edges Z1..Zn.

    ``annulus_one_marked``: one vertex, loop edge Y, pending edge Z.
    """
    if kind == "annulus_one_marked":
        return FatGraph.build([("Y", "v1", 0, "v1", 1)], [("Z", "v1", 2)])
    if kind == "a_n":
        if n < 3:
            raise GraphError("a_n needs n >= 3")
        if n == 3:
            return FatGraph.build([], [("Z1", "v1", 0), ("Z2", "v1", 1), ("Z3", "v1", 2)])
        inner = []
        pending = []
        # v1 ccw: (Y2, Z1, Z2); middle vk ccw: (Y(k+1), Yk, Z(k+1));
        # v(n-2) ccw: (Y(n-2), Z(n-1), Zn).
        pending.append(("Z1", "v1", 1))
        pending.append(("Z2", "v1", 2))
        for k in range(2, n - 2):
            pending.append((f"Z{k + 1}", f"v{k}", 2))
        pending.append((f"Z{n - 1}", f"v{n - 2}", 1))
        pending.append((f"Z{n}", f"v{n - 2}", 2))
        # inner chain edges Y2..Y(n-2): Yk joins v(k-1) to vk.  It occupies
        # slot 0 at its left endpoint (middle vertex ccw order is
        # (Y(k+1), Yk, Z(k+1))) and slot 1 at a middle right endpoint, but
        # slot 0 at the final vertex whose ccw order is (Y(n-2), Z(n-1), Zn).
        for k in range(2, n - 1):
            right_slot = 0 if k == n - 2 else 1
            inner.append((f"Y{k}", f"v{k - 1}", 0, f"v{k}", right_slot))
        return FatGraph.build(inner, pending)
    if kind == "d_n":
        if n < 2:
            raise GraphError("d_n needs n >= 2")
        inner = []
        pending = []
        for i in range(1, n + 1):
            pending.append((f"Z{i}", f"v{i}", 0))
            j = i % n + 1
            # vi ccw: (Zi, Yi, Y(i-1)); Yi runs from vi (slot 1) to v(i+1) (slot 2)
            inner.append((f"Y{i}", f"v{i}", 1, f"v{j}", 2))
        return FatGraph.build(inner, pending)
    raise GraphError(f"unknown standard graph kind {kind!r}")


@dataclass(frozen=True)
class DoubleResult:
    """Outcome of gluing two clones of a spine along its pending edges."""

    graph: FatGraph
    glued: tuple  # names of the former pending edges, now ordinary edges
    copy_names: tuple  # (suffix of copy 0, suffix of copy 1)

    def copy_edge(self, edge: str, copy: int) -> str:
        if edge in self.glued:
            return edge
        return f"{edge}{self.copy_names[copy]}"

    def doubled_values(self, values: Mapping[str, float]) -> dict:
        """Coordinates on the double: clones keep Z, glued edges carry 2Z."""
        out = {}
        for e, x in values.items():
            if e in self.glued:
                out[e] = 2.0 * x
            else:
                out[self.copy_edge(e, 0)] = x
                out[self.copy_edge(e, 1)] = x
        return out


def double_graph(g: FatGraph) -> DoubleResult:
    """Glue two clones of ``g`` along pending edges, dropping dot-vertices.

    Each pending edge and its twin fuse into one ordinary edge joining the
    two copies; it carries twice the original shear coordinate.  With no
    pending edges the double is two disjoint clones, which is rejected as
    degenerate.
    """
    if not g.pending:
        raise GraphError("graph with no pending edges has a degenerate double")
    suffixes = ("@0", "@1")

    def cv(v: str, c: int) -> str:
        return f"{v}{suffixes[c]}"

    inner = []
    pending: list = []
    for e in g.inner_edges:
        v0 = g.at_vertex[(e, 0)]
        v1 = g.at_vertex[(e, 1)]
        s0 = g.order[v0].index((e, 0))
        s1 = g.order[v1].index((e, 1))
        for c in (0, 1):
            inner.append((f"{e}{suffixes[c]}", cv(v0, c), s0, cv(v1, c), s1))
    for e in sorted(g.pending):
        v = g.at_vertex[(e, 0)]
        s = g.order[v].index((e, 0))
        inner.append((e, cv(v, 0), s, cv(v, 1), s))
    doubled = FatGraph.build(inner, pending)
    return DoubleResult(doubled, tuple(sorted(g.pending)), suffixes)
