"""Freeway measures, foliation-shear coordinates and tropical flips.

Blowing up each trivalent vertex into a little trigon turns the spine into
a freeway; a transverse measure is determined by its values on the long
branches (the edges), with short-branch values recovered from the coupling
equations and allowed to be negative.  The foliation-shear coordinate of an
edge is the signed half-difference of its neighbours' measures,

    zeta_e = 1/2 * sum over trivalent ends h of e of
             (mu(predecessor of h) - mu(successor of h)),

pending edges contributing only at their attachment.  The predecessor
sides are the ones gaining phi(Z) under a flip, and this orientation is
the one for which flipping the graph commutes with recomputing zeta from
a transported curve (checked in the tests); a double strand diving down
a pending edge and wrapping its dot-vertex from the predecessor side
carries zeta = +2 there.  The coordinates obey
one face condition per boundary component: the edge walk of each face sums
to zero (pending edges counted twice by the walk itself).

Tropical flips are the piecewise-linear shadows of the classical ones: the
same positional bookkeeping with phi_H(x) = (x + |x|)/2 = max(x, 0) in
place of log(1 + e^x).  Everything is exact rational except the explicit
projective-limit check relating phi to phi_H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .fatgraph import FatGraph
from .geodesic import PathWord
from .moves import FlipResult, MoveError, flip_inner, flip_pending


class FoliationError(ValueError):
    pass


def _as_fraction_map(graph: FatGraph, values: Mapping[str, object]) -> dict:
    out = {}
    for e in graph.edges:
        if e not in values:
            raise FoliationError(f"missing measure/coordinate for edge {e}")
        out[e] = Fraction(values[e])
    return out


@dataclass(frozen=True)
class FreewayMeasure:
    """Transverse measure on long branches (edges); may be negative."""

    graph: FatGraph
    long_branches: dict

    @staticmethod
    def of(graph: FatGraph, values: Mapping[str, object]) -> "FreewayMeasure":
        return FreewayMeasure(graph, _as_fraction_map(graph, values))

    def short_branches(self) -> dict:
        """Short-branch values per (vertex, ccw position) from the coupling
        equations mu(e_i) = s_{i-1,i} + s_{i,i+1} at each trigon."""
        out = {}
        for v in self.graph.trivalent_vertices():
            e1, e2, e3 = (h[0] for h in self.graph.order[v])
            m1, m2, m3 = (self.long_branches[e] for e in (e1, e2, e3))
            out[(v, 0)] = (m1 + m2 - m3) / 2  # between slots 0 and 1
            out[(v, 1)] = (m2 + m3 - m1) / 2
            out[(v, 2)] = (m3 + m1 - m2) / 2
        return out

    def couples(self) -> bool:
        shorts = self.short_branches()
        for v in self.graph.trivalent_vertices():
            for k, h in enumerate(self.graph.order[v]):
                if shorts[(v, (k - 1) % 3)] + shorts[(v, k)] != self.long_branches[h[0]]:
                    return False
        return True

    @staticmethod
    def of_curve(word: PathWord) -> "FreewayMeasure":
        """Strand counts of a closed curve carried by the freeway."""
        mult = word.edge_multiplicities()
        values = {e: mult.get(e, 0) for e in word.graph.edges}
        return FreewayMeasure.of(word.graph, values)


@dataclass(frozen=True)
class FoliationShear:
    """Foliation-shear coordinates, exact rationals, one per edge."""

    graph: FatGraph
    zeta: dict

    @staticmethod
    def of(graph: FatGraph, values: Mapping[str, object]) -> "FoliationShear":
        return FoliationShear(graph, _as_fraction_map(graph, values))

    def face_sums(self) -> list:
        """Boundary sums of the coordinates; the face walk passes pending
        edges twice, giving them their doubled multiplicity."""
        sums = []
        for face in self.graph.trace_faces():
            total = Fraction(0)
            for e, k in face.coordinate_sum().items():
                total += k * self.zeta[e]
            sums.append(total)
        return sums

    def satisfies_face_conditions(self) -> bool:
        return all(s == 0 for s in self.face_sums())


def shear_from_measure(m: FreewayMeasure, g: FatGraph | None = None) -> FoliationShear:
    """Foliation-shear coordinates of a measure on the long branches."""
    g = g or m.graph
    mu = m.long_branches
    zeta = {}
    for e in g.edges:
        total = Fraction(0)
        ends = [(e, 0)] if g.is_pending(e) else [(e, 0), (e, 1)]
        for h in ends:
            total += mu[g.pred(h)[0]] - mu[g.succ(h)[0]]
        zeta[e] = total / 2
    return FoliationShear(g, zeta)


def tropical_apply(fr: FlipResult, shear: FoliationShear) -> FoliationShear:
    """Piecewise-linear coordinate image of a flip: phi -> phi_H."""
    zeta = dict(shear.zeta)
    z = zeta[fr.edge]
    for upd in fr.updates:
        zeta[upd.edge] = zeta[upd.edge] + upd.sign * max(
            upd.arg_sign * upd.arg_mult * z, Fraction(0)
        )
    zeta[fr.edge] = -z
    return FoliationShear(fr.graph, zeta)


def tropical_flip_inner(shear: FoliationShear, edge: str) -> tuple:
    """Flip an inner edge tropically; returns (FlipResult, new shear)."""
    fr = flip_inner(shear.graph, edge)
    return fr, tropical_apply(fr, shear)


def tropical_flip_pending(shear: FoliationShear, edge: str) -> tuple:
    """Flip a pending edge tropically; returns (FlipResult, new shear)."""
    fr = flip_pending(shear.graph, edge)
    return fr, tropical_apply(fr, shear)


@dataclass(frozen=True)
class LimitRow:
    lam: float
    deviation: float
    bound: float

    @property
    def within(self) -> bool:
        return self.deviation <= self.bound + 1e-300


def tropical_limit_check(x: float, lambdas: Iterable[float]) -> list:
    """Deviation of phi(lambda x)/lambda from phi_H(x) per lambda.

    The exact deviation is log(1 + e^{-lambda |x|})/lambda for x != 0 and
    log(2)/lambda at x = 0; each row carries the log(2)/lambda bound, so
    the O(1/lambda) convergence is explicit.
    """
    rows = []
    prev = None
    for lam in lambdas:
        if prev is not None and lam <= prev:
            raise FoliationError("lambda values must increase")
        prev = lam
        if x == 0.0:
            dev = math.log(2.0) / lam
        else:
            dev = math.log1p(math.exp(-lam * abs(x))) / lam
        rows.append(LimitRow(lam, dev, math.log(2.0) / lam))
    return rows
