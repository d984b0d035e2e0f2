"""Path words on fatgraphs and their classical and quantum traces.

A closed word is a cyclic sequence of steps.  An inner step traverses an
edge and then turns left or right; turning right departs along the ccw
successor of the incoming half-edge, turning left along its predecessor.
A pending-edge visit is a single combined step: the path runs down to the
dot-vertex, inverts there, returns, and then turns.  Its matrix is

    X_Z F X_Z = X_{2Z},

so ill-formed half-inversions cannot be written.  The holonomy of a word is
the product of the step matrices (first step rightmost); its trace is the
geodesic function, a Laurent polynomial in e^{Z_i} and e^{Y_j/2} with
positive integer coefficients, defined up to an overall projective sign
which is normalized away.

Quantum traces are computed by multiplying step matrices whose entries are
quantum-torus monomials and then correcting the trace monomial by monomial:
the product assigns every index path j a term q^{s_j} :e^{m_j}:, and within
each group of equal exponent vectors the powers are re-centered about their
midrange.  Singleton groups become plain Weyl monomials, which recovers the
zero-correction ordering of graph-simple words, while repeated monomials
keep their relative offsets (the (q^2 + q^-2) pair of the triangle-algebra
element G_1232, the (q + q^-1) pairs of annulus generators).  The result is
Hermitian by construction and is verified against the full set of quantum
algebra relations in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .fatgraph import FatGraph, GraphError
from .ring import LaurentElem, TorusContext, TorusElem, Vars


class WordError(ValueError):
    """A path word that is not a valid closed walk on its graph."""


@dataclass(frozen=True)
class Step:
    """One move of a path: traverse ``edge`` (or invert at it), then turn.

    ``direction`` is +1 to enter the edge at half 0 and -1 for half 1;
    it is ignored for pending visits, which always depart from and return
    to the trivalent attachment.  ``turn`` is "L" or "R".  ``invert`` marks
    a combined pending-edge visit.
    """

    edge: str
    turn: str
    direction: int = 1
    invert: bool = False

    def __post_init__(self):
        if self.turn not in ("L", "R"):
            raise WordError(f"turn must be L or R, got {self.turn!r}")
        if self.direction not in (1, -1):
            raise WordError("direction must be +1 or -1")

    def token(self) -> str:
        d = "+" if self.direction > 0 else "-"
        t = f"!{self.turn}" if self.invert else self.turn
        return f"{self.edge}:{d}:{t}"


class PathWord:
    """Validated closed path word over a fatgraph."""

    def __init__(self, graph: FatGraph, steps: Sequence[Step]):
        self.graph = graph
        self.steps = tuple(steps)
        if not self.steps:
            raise WordError("empty word")
        self._validate()

    def _entry_half(self, step: Step):
        if step.invert:
            return (step.edge, 0)
        return (step.edge, 0 if step.direction > 0 else 1)

    def _validate(self):
        g = self.graph
        for step in self.steps:
            if step.edge not in g.at_vertex and (step.edge, 0) not in g.at_vertex:
                raise WordError(f"unknown edge {step.edge}")
            if step.invert and not g.is_pending(step.edge):
                raise WordError(f"inversion on non-pending edge {step.edge}")
            if not step.invert and g.is_pending(step.edge):
                raise WordError(
                    f"pending edge {step.edge} can only be visited with an inversion"
                )
        # walk and check incidences
        for i, step in enumerate(self.steps):
            nxt = self.steps[(i + 1) % len(self.steps)]
            dep = self._departure(step)
            if dep != self._entry_half(nxt):
                raise WordError(
                    f"step {i} departs along {dep}, but the next step enters at "
                    f"{self._entry_half(nxt)}"
                )

    def _departure(self, step: Step):
        """Half-edge along which the path leaves after this step's turn."""
        g = self.graph
        if step.invert:
            incoming = (step.edge, 0)
        else:
            start = (step.edge, 0 if step.direction > 0 else 1)
            incoming = g.partner(start)
        return g.succ(incoming) if step.turn == "R" else g.pred(incoming)

    def __len__(self) -> int:
        return len(self.steps)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PathWord)
            and self.graph is other.graph
            and self.steps == other.steps
        )

    def __hash__(self) -> int:
        return hash(self.steps)

    def token_string(self) -> str:
        return ",".join(s.token() for s in self.steps)

    def __repr__(self) -> str:
        return f"PathWord({self.token_string()})"

    # -- structural queries --------------------------------------------------

    def inversion_count(self) -> int:
        return sum(1 for s in self.steps if s.invert)

    def inversion_edges(self) -> set:
        return {s.edge for s in self.steps if s.invert}

    def edge_multiplicities(self) -> dict:
        """Strand counts along each edge (a pending visit runs twice)."""
        out: dict = {}
        for s in self.steps:
            out[s.edge] = out.get(s.edge, 0) + (2 if s.invert else 1)
        return out

    def is_graph_simple(self) -> bool:
        """No inner edge twice, at most one inversion per pending edge."""
        mult: dict = {}
        for s in self.steps:
            mult[s.edge] = mult.get(s.edge, 0) + 1
        return all(v == 1 for v in mult.values())

    def rotated(self, k: int) -> "PathWord":
        k %= len(self.steps)
        return PathWord(self.graph, self.steps[k:] + self.steps[:k])

    def repeated(self, n: int) -> "PathWord":
        if n < 1:
            raise ValueError("need n >= 1")
        return PathWord(self.graph, self.steps * n)

    def homotopy_key(self):
        """Cyclic-rotation and reversal invariant key of the step pattern."""
        seq = tuple((s.edge, s.invert) for s in self.steps)
        best = None
        for cand_seq in (seq, tuple(reversed(seq))):
            for k in range(len(cand_seq)):
                rot = cand_seq[k:] + cand_seq[:k]
                if best is None or rot < best:
                    best = rot
        return best

    @staticmethod
    def from_moves(graph: FatGraph, moves: Sequence[tuple]) -> "PathWord":
        """Build a word from (edge, turn, invert) triples, deriving directions.

        The walk starts by entering the first edge at half 0; if that fails
        to close, the other orientation is tried.
        """
        last = None
        for first_dir in (1, -1):
            try:
                steps = []
                dirn = first_dir
                for i, (edge, turn, invert) in enumerate(moves):
                    step = Step(edge, turn, 1 if invert else dirn, invert)
                    steps.append(step)
                    if step.invert:
                        incoming = (step.edge, 0)
                    else:
                        start = (step.edge, 0 if step.direction > 0 else 1)
                        incoming = graph.partner(start)
                    dep = graph.succ(incoming) if turn == "R" else graph.pred(incoming)
                    nxt_edge, _, nxt_invert = moves[(i + 1) % len(moves)]
                    if dep[0] != nxt_edge:
                        raise WordError(
                            f"turn at step {i} leads to edge {dep[0]}, not {nxt_edge}"
                        )
                    if nxt_invert and dep != (nxt_edge, 0):
                        raise WordError(
                            f"step {i} does not reach the pending attachment of {nxt_edge}"
                        )
                    dirn = 1 if dep[1] == 0 else -1
                return PathWord(graph, steps)
            except WordError as exc:
                last = exc
        raise last


# -- 2x2 matrices over any ring with +, -, * ------------------------------------


def mat_mul(m1, m2):
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )


def mat_trace(m):
    return m[0] + m[3]


def _laurent_consts(vars: Vars):
    one = vars.one()
    zero = vars.zero()
    neg = -one
    L = (zero, one, neg, neg)
    R = (one, one, neg, zero)
    F = (zero, one, neg, zero)
    return L, R, F


def edge_matrix(vars: Vars, edge: str, doubled: bool) -> tuple:
    """X_Z (or X_{2Z} for a combined pending visit) over the Laurent ring."""
    half = 2 if doubled else 1  # exponent of e^{Z/2}, in half units
    up = vars.monomial_twice({edge: half})
    down = vars.monomial_twice({edge: -half})
    zero = vars.zero()
    return (zero, -up, down, zero)


def holonomy_matrix(word: PathWord, vars: Vars | None = None):
    """Product of step matrices over the Laurent ring, first step rightmost."""
    g = word.graph
    vars = vars or Vars(g.edges)
    L, R, F = _laurent_consts(vars)
    prod = None
    for step in word.steps:
        x = edge_matrix(vars, step.edge, step.invert)
        t = R if step.turn == "R" else L
        m = mat_mul(t, x)
        prod = m if prod is None else mat_mul(m, prod)
    return prod


def holonomy_trace(word: PathWord, vars: Vars | None = None) -> LaurentElem:
    """Geodesic function of a closed word, sign-normalized to be positive."""
    tr = mat_trace(holonomy_matrix(word, vars))
    return _normalize_sign(tr)


def _normalize_sign(tr: LaurentElem) -> LaurentElem:
    if tr.terms and all(c < 0 for c in tr.terms.values()):
        return -tr
    return tr


def quantum_edge_matrix(context: TorusContext, edge: str, doubled: bool) -> tuple:
    half = 2 if doubled else 1
    vec_up = context.vars.exponent_twice({edge: half})
    vec_dn = context.vars.exponent_twice({edge: -half})
    up = TorusElem(context, {vec_up: 1})
    dn = TorusElem(context, {vec_dn: 1})
    zero = context.zero()
    return (zero, -up, dn, zero)


def quantum_holonomy_matrix(word: PathWord, context: TorusContext):
    one = context.one()
    zero = context.zero()
    L = (zero, one, -one, -one)
    R = (one, one, -one, zero)
    prod = None
    for step in word.steps:
        x = quantum_edge_matrix(context, step.edge, step.invert)
        t = R if step.turn == "R" else L
        m = mat_mul(t, x)
        prod = m if prod is None else mat_mul(m, prod)
    return prod


class OrderingError(ArithmeticError):
    """The monomial-wise q-corrections do not close to a Hermitian element."""


def quantum_trace(word: PathWord, context: TorusContext) -> TorusElem:
    """Quantum geodesic of a closed word, in Weyl normal form.

    The raw quantum matrix product carries a per-term q-anomaly; the
    correction keeps only the relative q-offsets inside each group of
    equal trace monomials (re-centered about the midrange), which is zero
    for the singleton groups of graph-simple words.  The output is checked
    to be Hermitian with the expected classical limit.
    """
    raw = mat_trace(quantum_holonomy_matrix(word, context))
    classical = holonomy_trace(word, context.vars)
    # projective sign: the matrix product may be globally negated
    flip = bool(raw.terms) and all(
        c <= 0 for qc in raw.terms.values() for c in qc.powers.values()
    )
    if flip:
        raw = -raw
    corrected = {}
    for vec, qc in raw.terms.items():
        powers = sorted(qc.powers)
        if any(c < 0 for c in qc.powers.values()):
            raise OrderingError(f"mixed signs in the q-anomaly of {vec}")
        shift = (powers[0] + powers[-1])
        if shift % 2 != 0:
            raise OrderingError(f"midrange of the q-anomaly of {vec} is not integral")
        centered = qc.shift(-shift // 2)
        if centered.conjugate() != centered:
            raise OrderingError(f"q-corrections of {vec} are not Hermitian")
        corrected[vec] = centered
    out = TorusElem(context, corrected)
    if out.classical_limit() != classical:
        raise OrderingError("quantum trace does not reduce to the classical trace")
    return out


def power_trace(word: PathWord, n: int, vars: Vars | None = None) -> LaurentElem:
    """Trace of the n-fold concatenation via the trace recurrence.

    tr(P^n) = p_n(tr P) where p_0 = 2, p_1 = t, p_k = t p_{k-1} - p_{k-2}
    for unit-determinant matrices, i.e. 2 T_n(t/2) with Chebyshev T_n.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    vars = vars or Vars(word.graph.edges)
    t = mat_trace(holonomy_matrix(word, vars))
    p_prev = vars.const(2)
    p_cur = t
    for _ in range(n - 1):
        p_prev, p_cur = p_cur, t * p_cur - p_prev
    return _normalize_sign(p_cur)


# -- numeric holonomy ------------------------------------------------------------

_L_NUM = (0.0, 1.0, -1.0, -1.0)
_R_NUM = (1.0, 1.0, -1.0, 0.0)


def numeric_matrix(word: PathWord, values: Mapping[str, float]):
    """Float holonomy matrix at an assignment of edge coordinates."""
    prod = None
    for step in word.steps:
        z = values[step.edge]
        e = math.exp(z if step.invert else z / 2.0)
        x = (0.0, -e, 1.0 / e, 0.0)
        t = _R_NUM if step.turn == "R" else _L_NUM
        m = mat_mul(t, x)
        prod = m if prod is None else mat_mul(m, prod)
    return prod


def numeric_trace(word: PathWord, values: Mapping[str, float]) -> float:
    return abs(mat_trace(numeric_matrix(word, values)))


def mobius_apply(m, x: float) -> float:
    a, b, c, d = m
    return (a * x + b) / (c * x + d)


def proper_length(value: float) -> float:
    """Hyperbolic length from a geodesic function value: 2 arccosh(v / 2)."""
    if value < 2.0:
        raise ValueError(f"geodesic function value {value} is below 2")
    return 2.0 * math.acosh(value / 2.0)


# -- multicurves --------------------------------------------------------------


@dataclass(frozen=True)
class DotLoop:
    """A loop homeomorphic to winding around one dot-vertex: tr F = 0."""

    edge: str


@dataclass(frozen=True)
class OpenStrand:
    """A non-closed curve; ``windows`` lists the pending edges at its ends."""

    windows: tuple


@dataclass(frozen=True)
class Multicurve:
    """Weighted components: PathWord, DotLoop or OpenStrand entries."""

    components: tuple  # of (component, weight)

    def __post_init__(self):
        for comp, weight in self.components:
            if weight < 1:
                raise ValueError("weights must be >= 1")
            if not isinstance(comp, (PathWord, DotLoop, OpenStrand)):
                raise TypeError(f"unsupported component {comp!r}")


VALID = "valid"
VANISHING = "vanishing"
INVALID = "invalid"


def multicurve_check(m: Multicurve, graph: FatGraph | None = None):
    """Classify a multicurve and compute its function when it is valid.

    Returns (status, function-or-None).  ``vanishing``: some component winds
    a single dot-vertex (its trace is tr F = 0, killing the product).
    ``invalid``: odd number of strand ends at some window, or two components
    cross.  Crossing detection is combinatorial: distinct closed components
    sharing an inversion window always cross; on a one-boundary spine two
    distinct components cross exactly when their window sets interleave
    along the boundary; on multi-boundary spines distinct inverting
    components wind the same hole and cross.
    """
    words = []
    for comp, weight in m.components:
        if isinstance(comp, DotLoop):
            return VANISHING, None
        if isinstance(comp, OpenStrand):
            continue
        words.append((comp, weight))
    graph = graph or (words[0][0].graph if words else None)

    ends: dict = {}
    for comp, weight in m.components:
        if isinstance(comp, OpenStrand):
            for w in comp.windows:
                ends[w] = ends.get(w, 0) + weight
    if any(v % 2 for v in ends.values()):
        return INVALID, None

    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if _cross(words[i][0], words[j][0]):
                return INVALID, None

    if not words:
        return VALID, None
    vars = Vars(graph.edges)
    total = vars.one()
    for comp, weight in words:
        total = total * holonomy_trace(comp, vars) ** weight
    return VALID, total


def _cross(w1: PathWord, w2: PathWord) -> bool:
    if w1.homotopy_key() == w2.homotopy_key():
        return False
    inv1, inv2 = w1.inversion_edges(), w2.inversion_edges()
    if inv1 & inv2:
        return True
    g = w1.graph
    faces = g.trace_faces()
    if len(faces) == 1:
        boundary = [e for e in _dedup(faces[0].edge_walk()) if e in g.pending]
        return _interleave(boundary, inv1, inv2)
    return bool(inv1) and bool(inv2)


def _dedup(seq):
    seen = set()
    out = []
    for x in seq:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _interleave(cycle, set1, set2) -> bool:
    if not set1 or not set2:
        return False
    marks = [1 if e in set1 else 2 if e in set2 else 0 for e in cycle]
    marks = [m for m in marks if m]
    # sets interleave iff the cyclic mark pattern switches more than twice
    switches = sum(
        1 for i in range(len(marks)) if marks[i] != marks[(i + 1) % len(marks)]
    )
    return switches > 2


# -- lifts to the doubled surface -------------------------------------------------


def lift_word(word: PathWord, dbl) -> list:
    """Lift a closed word to the glued double of its graph.

    Each inversion crosses the corresponding glued edge into the mirror
    copy; turn letters copy verbatim.  A word with an even number of
    inversions lifts to two disjoint closed curves (one per starting
    copy), each with the same geodesic function; an odd word lifts to a
    single curve of doubled length whose function is G^2 - 2.  Both facts
    are exact consequences of X_Z F X_Z = X_{2Z} and are checked
    numerically in the tests.
    """
    even = word.inversion_count() % 2 == 0
    lifts = []
    for start_copy in ([0, 1] if even else [0]):
        steps = []
        copy = start_copy
        passes = 1 if even else 2
        for _ in range(passes):
            for step in word.steps:
                if step.invert:
                    direction = 1 if copy == 0 else -1
                    steps.append(Step(step.edge, step.turn, direction, False))
                    copy = 1 - copy
                else:
                    name = dbl.copy_edge(step.edge, copy)
                    steps.append(Step(name, step.turn, step.direction, False))
        lifts.append(PathWord(dbl.graph, steps))
    return lifts


# -- word text syntax -----------------------------------------------------------


@dataclass(frozen=True)
class RawWord:
    """A literal matrix word (used for paper-style based words).

    ``factors`` lists (kind, payload) pairs in path order, where kind is
    "edge" (payload: edge name, plain X), "turn" (payload "L"/"R") or "F".
    """

    graph: FatGraph
    factors: tuple

    def trace(self, vars: Vars | None = None) -> LaurentElem:
        vars = vars or Vars(self.graph.edges)
        L, R, F = _laurent_consts(vars)
        prod = None
        for kind, payload in self.factors:
            if kind == "edge":
                m = edge_matrix(vars, payload, False)
            elif kind == "turn":
                m = R if payload == "R" else L
            else:
                m = F
            prod = m if prod is None else mat_mul(m, prod)
        return _normalize_sign(mat_trace(prod))


def parse_word(graph: FatGraph, text: str):
    """Parse comma-separated ``edge:dir:turn`` steps.

    The turn field is L or R for an inner traversal, !L or !R for a
    combined pending-edge visit, or a bare ! to mark a traversal that
    closes through the dot-vertex (paper-style basing; such words are
    evaluated literally as matrix products).  Returns a PathWord when all
    steps carry turns, otherwise a RawWord.
    """
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise WordError("empty word")
    parsed = []
    bare = False
    for tok in tokens:
        parts = tok.split(":")
        if len(parts) != 3:
            raise WordError(f"malformed step {tok!r} (expected edge:dir:turn)")
        edge, d, conn = parts
        if d not in ("+", "-"):
            raise WordError(f"direction must be + or - in {tok!r}")
        if conn not in ("L", "R", "!L", "!R", "!"):
            raise WordError(f"turn must be L, R, !L, !R or ! in {tok!r}")
        if conn == "!":
            bare = True
        parsed.append((edge, 1 if d == "+" else -1, conn))
    if not bare:
        steps = [
            Step(edge, conn[-1], dirn, invert=conn.startswith("!"))
            for edge, dirn, conn in parsed
        ]
        return PathWord(graph, steps)
    factors = []
    for edge, _, conn in parsed:
        factors.append(("edge", edge))
        if conn == "!":
            continue  # closes through the dot-vertex, no matrix inserted
        if conn.startswith("!"):
            factors.append(("F", None))
            factors.append(("edge", edge))
        factors.append(("turn", conn[-1]))
    return RawWord(graph, tuple(factors))
