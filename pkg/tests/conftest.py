import random

import pytest

from shearalg.fatgraph import standard_graph
from shearalg.geodesic import PathWord, Step


def random_closed_words(graph, count, seed, max_len=10):
    """Generate distinct valid closed words by random non-backtracking walks."""
    rng = random.Random(seed)
    halves = [
        (e, k)
        for e in graph.edges
        for k in (0, 1)
        if not (graph.is_pending(e) and k == 1)
    ]
    found = {}
    attempts = 0
    while len(found) < count and attempts < 20000:
        attempts += 1
        start = rng.choice(halves)
        if graph.is_pending(start[0]):
            start = (start[0], 0)
        entry = start
        steps = []
        for _ in range(rng.randint(1, max_len)):
            edge = entry[0]
            invert = graph.is_pending(edge)
            incoming = (edge, 0) if invert else graph.partner(entry)
            turn = rng.choice("LR")
            dep = graph.succ(incoming) if turn == "R" else graph.pred(incoming)
            steps.append(
                Step(edge, turn, 1 if (invert or entry[1] == 0) else -1, invert)
            )
            entry = (dep[0], 0) if graph.is_pending(dep[0]) else dep
            if entry == start and steps:
                try:
                    w = PathWord(graph, steps)
                    found.setdefault(w.homotopy_key(), w)
                except Exception:
                    pass
                break
    return list(found.values())[:count]


def random_values(graph, rng, lo=-1.5, hi=1.5):
    return {e: rng.uniform(lo, hi) for e in graph.edges}


@pytest.fixture
def annulus():
    return standard_graph("annulus_one_marked")


@pytest.fixture
def a3():
    return standard_graph("a_n", 3)


@pytest.fixture
def a4():
    return standard_graph("a_n", 4)


@pytest.fixture
def d2():
    return standard_graph("d_n", 2)


@pytest.fixture
def d3():
    return standard_graph("d_n", 3)
