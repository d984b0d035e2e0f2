import random
from fractions import Fraction

import pytest

from shearalg.algebras import a_n_word, build_generators, d_n_word
from shearalg.fatgraph import standard_graph
from shearalg.geodesic import PathWord, holonomy_trace
from shearalg.poisson import PoissonMatrix, bracket, casimir_check, wp_matrix
from shearalg.ring import LaurentElem, Vars


def test_wp_examples(annulus, a3):
    pm = wp_matrix(annulus)
    assert pm.pairing("Z", "Y") == 0  # the two vertex contributions cancel
    pm3 = wp_matrix(a3)
    assert pm3.pairing("Z1", "Z2") == 1
    assert pm3.pairing("Z2", "Z3") == 1
    assert pm3.pairing("Z3", "Z1") == 1
    d4 = standard_graph("d_n", 4)
    pm4 = wp_matrix(d4)
    for i in range(1, 5):
        j = i % 4 + 1  # ring successor
        prev = (i - 2) % 4 + 1
        assert pm4.pairing(f"Y{i}", f"Y{prev}") == 1
        assert pm4.pairing(f"Z{i}", f"Y{i}") == 1
        assert pm4.pairing(f"Z{i}", f"Y{prev}") == -1
        assert pm4.pairing(f"Z{i}", f"Z{j}") == 0


def test_entries_bounded():
    for kind, n in (("a_n", 5), ("d_n", 4), ("annulus_one_marked", 0)):
        pm = wp_matrix(standard_graph(kind, n))
        assert all(abs(x) <= 2 for row in pm.matrix for x in row)


def test_bracket_antisymmetry_leibniz_jacobi():
    rng = random.Random(23)
    v = Vars(["a", "b", "c", "d"])
    pm = PoissonMatrix(v, [[0, 1, 0, -1], [-1, 0, 2, 0], [0, -2, 0, 1], [1, 0, -1, 0]])

    def rand_elem():
        # integral exponents keep monomial brackets integral for any pairing
        out = v.zero()
        for _ in range(rng.randint(1, 3)):
            out = out + v.monomial_twice(
                {n: 2 * rng.randint(-1, 1) for n in v.names}, rng.randint(-2, 2)
            )
        return out

    for _ in range(20):
        f, g, h = rand_elem(), rand_elem(), rand_elem()
        assert bracket(f, g, pm) == -bracket(g, f, pm)
        assert bracket(f, f, pm).is_zero()
        assert bracket(f, g * h, pm) == bracket(f, g, pm) * h + g * bracket(f, h, pm)
        jac = (
            bracket(bracket(f, g, pm), h, pm)
            + bracket(bracket(g, h, pm), f, pm)
            + bracket(bracket(h, f, pm), g, pm)
        )
        assert jac.is_zero()


def test_triangle_algebra_brackets(a3):
    v = Vars(a3.edges)
    pm = wp_matrix(a3)
    G = {
        (i, j): holonomy_trace(a_n_word(a3, 3, i, j), v)
        for i, j in ((1, 2), (2, 3), (1, 3))
    }
    assert bracket(G[(1, 2)], G[(2, 3)], pm) == G[(1, 2)] * G[(2, 3)] - 2 * G[(1, 3)]
    assert bracket(G[(2, 3)], G[(1, 3)], pm) == G[(2, 3)] * G[(1, 3)] - 2 * G[(1, 2)]
    assert bracket(G[(1, 3)], G[(1, 2)], pm) == G[(1, 3)] * G[(1, 2)] - 2 * G[(2, 3)]


def test_four_marked_disc_brackets(a4):
    v = Vars(a4.edges)
    pm = wp_matrix(a4)
    G = {
        (i, j): holonomy_trace(a_n_word(a4, 4, i, j), v)
        for i in range(1, 5)
        for j in range(i + 1, 5)
    }
    lhs = bracket(G[(1, 3)], G[(2, 4)], pm)
    assert lhs == 2 * G[(1, 2)] * G[(3, 4)] - 2 * G[(1, 4)] * G[(2, 3)]
    assert bracket(G[(1, 2)], G[(3, 4)], pm).is_zero()
    assert bracket(G[(1, 4)], G[(2, 3)], pm).is_zero()


def test_casimir_corpus():
    for kind, ns in (("a_n", (3, 4, 5, 6)), ("d_n", (2, 3, 4, 5)), ("annulus_one_marked", (0,))):
        for n in ns:
            g = standard_graph(kind, n)
            report = casimir_check(g)
            assert report.face_sums_central, (kind, n)
            assert report.kernel_dimension_matches, (kind, n)


def test_annulus_kernel_is_everything(annulus):
    pm = wp_matrix(annulus)
    assert pm.corank() == 2
    report = casimir_check(annulus)
    assert report.boundary_count == 2


def test_d4_casimirs_exactly():
    d4 = standard_graph("d_n", 4)
    pm = wp_matrix(d4)
    ring = [1 if e.startswith("Y") else 0 for e in pm.vars.names]
    marked = [1 if e.startswith("Y") else 2 for e in pm.vars.names]
    assert pm.in_kernel(ring)
    assert pm.in_kernel(marked)
    assert pm.corank() == 2


def test_boundary_parallel_functions_are_central():
    for n in (2, 3, 4):
        g = standard_graph("d_n", n)
        v = Vars(g.edges)
        pm = wp_matrix(g)
        ring_moves = [(f"Y{k}", "L", False) for k in range(1, n)] + [(f"Y{n}", "L", False)]
        curve_hole = PathWord.from_moves(g, ring_moves)
        boundary_moves = []
        for k in range(1, n + 1):
            boundary_moves.append((f"Z{k}", "R", True))
            boundary_moves.append((f"Y{k}", "R", False))
        curve_marked = PathWord.from_moves(g, boundary_moves)
        f_hole = holonomy_trace(curve_hole, v)
        f_marked = holonomy_trace(curve_marked, v)
        gens = build_generators("d_n", n, "classical", graph=g)
        for key in gens.pairs():
            assert bracket(f_hole, gens[key], pm).is_zero(), (n, key, "hole")
            assert bracket(f_marked, gens[key], pm).is_zero(), (n, key, "marked")


def test_classical_annulus_relations_match_quantum_limits(d3):
    # first-order limits of the quantum families, n = 3
    import itertools

    M = build_generators("d_n", 3, "classical", graph=d3)
    G = M.entries
    pm = M.pm
    for j, k, l in itertools.permutations(range(1, 4), 3):
        if ((j - k) % 3 > 0 and (l - j) % 3 > 0 and ((j - k) % 3 + (l - j) % 3 + (k - l) % 3 == 3)):
            assert bracket(G[(j, l)], G[(k, j)], pm) == 2 * G[(k, l)] - G[(j, l)] * G[(k, j)]
    for j, l in itertools.permutations(range(1, 4), 2):
        assert bracket(G[(j, l)], G[(l, j)], pm) == 2 * (
            G[(l, l)] * G[(l, l)] - G[(j, j)] * G[(j, j)]
        )
        assert bracket(G[(j, j)], G[(l, l)], pm) == G[(j, l)] - G[(l, j)]
        assert bracket(G[(j, j)], G[(l, j)], pm) == 2 * G[(l, l)] - G[(j, j)] * G[(l, j)]
