"""Weil-Petersson pairing on edges and brackets of geodesic functions.

At every trivalent vertex with ccw-ordered incident edges (e1, e2, e3) each
cyclic pair contributes +1 to {Z_{e_i}, Z_{e_{i+1}}}; pending edges count
like any other, and an edge incident twice contributes once per half-edge
occurrence (so the annulus-with-one-marked-point pairing cancels to zero).
The sign convention is fixed by the printed ring-graph relations
{Y_i, Y_{i-1}} = 1, {Z_i, Y_i} = 1, {Z_i, Y_{i-1}} = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fatgraph import FatGraph
from .ring import LaurentElem, MismatchedContext, TorusContext, Vars


class PoissonMatrix:
    """Antisymmetric integer pairing over an ordered edge list."""

    __slots__ = ("vars", "matrix")

    def __init__(self, vars: Vars, matrix: Sequence[Sequence[int]]):
        self.vars = vars
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(vars)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix size must match the edge list")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError("pairing must be antisymmetric")
                if abs(rows[i][j]) > 2:
                    raise ValueError("pairing entries lie in {0, +-1, +-2}")
        self.matrix = rows

    def pairing(self, a: str, b: str) -> int:
        return self.matrix[self.vars.index[a]][self.vars.index[b]]

    def omega_quarters(self, u: tuple, v: tuple) -> int:
        """Bilinear form on twice-exponent tuples, in quarter units."""
        total = 0
        for a, ua in enumerate(u):
            if not ua:
                continue
            row = self.matrix[a]
            for b, vb in enumerate(v):
                if vb:
                    total += ua * vb * row[b]
        return total

    def torus_context(self) -> TorusContext:
        return TorusContext(self.vars, self.matrix)

    def kernel(self) -> list:
        """Rational basis of the kernel, as exponent tuples of Fractions."""
        n = len(self.vars)
        rows = [[Fraction(x) for x in row] for row in self.matrix]
        pivots = []
        r = 0
        for c in range(n):
            pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][c] != 0:
                    factor = rows[i][c]
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        basis = []
        free = [c for c in range(n) if c not in pivots]
        for c in free:
            vec = [Fraction(0)] * n
            vec[c] = Fraction(1)
            for i, pc in enumerate(pivots):
                vec[pc] = -rows[i][c]
            basis.append(tuple(vec))
        return basis

    def corank(self) -> int:
        return len(self.kernel())

    def in_kernel(self, vec: Sequence) -> bool:
        fr = [Fraction(x) for x in vec]
        return all(
            sum(row[j] * fr[j] for j in range(len(fr))) == 0 for row in self.matrix
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PoissonMatrix)
            and self.vars == other.vars
            and self.matrix == other.matrix
        )

    def __repr__(self) -> str:
        return f"PoissonMatrix({self.vars.names})"


def wp_matrix(g: FatGraph) -> PoissonMatrix:
    """Edge pairing summed over trivalent vertices and cyclic edge pairs."""
    vars = Vars(g.edges)
    n = len(vars)
    m = [[0] * n for _ in range(n)]
    for v in g.trivalent_vertices():
        hs = g.order[v]
        for i in range(3):
            a = vars.index[hs[i][0]]
            b = vars.index[hs[(i + 1) % 3][0]]
            m[a][b] += 1
            m[b][a] -= 1
    return PoissonMatrix(vars, m)


def bracket(f: LaurentElem, g: LaurentElem, pm: PoissonMatrix) -> LaurentElem:
    """{e^u, e^v} = omega(u, v) e^{u+v}, extended bilinearly.

    Individual monomial pairs may contribute quarter-integral multiples of
    omega; they are accumulated exactly and the total per monomial must come
    out an integer (it always does for traces of closed words).
    """
    if f.vars != pm.vars or g.vars != pm.vars:
        raise MismatchedContext("bracket arguments must share the pairing's edges")
    acc: dict = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            quarters = pm.omega_quarters(u, v)
            if quarters == 0:
                continue
            w = tuple(x + y for x, y in zip(u, v))
            s = acc.get(w, 0) + a * b * quarters
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
    out = {}
    for w, s in acc.items():
        if s % 4 != 0:
            raise ValueError("bracket coefficient is not an integer")
        out[w] = s // 4
    return LaurentElem(f.vars, out)


@dataclass(frozen=True)
class CasimirReport:
    corank: int
    boundary_count: int
    face_sums_central: bool
    kernel_dimension_matches: bool

    @property
    def ok(self) -> bool:
        return self.face_sums_central and self.kernel_dimension_matches


def casimir_check(g: FatGraph) -> CasimirReport:
    """Check the boundary sums span the center and its dimension equals s."""
    pm = wp_matrix(g)
    faces = g.trace_faces()
    central = True
    for face in faces:
        mult = face.coordinate_sum()
        vec = [mult.get(e, 0) for e in pm.vars.names]
        if not pm.in_kernel(vec):
            central = False
    return CasimirReport(
        corank=pm.corank(),
        boundary_count=len(faces),
        face_sums_central=central,
        kernel_dimension_matches=pm.corank() == len(faces),
    )
