import pytest

from shearalg.fatgraph import (
    FatGraph,
    GraphError,
    SurfaceSignature,
    double_graph,
    double_signature,
    is_degenerate_double,
    standard_graph,
)

ALL_STANDARD = [
    ("annulus_one_marked", 0),
    ("a_n", 3),
    ("a_n", 4),
    ("a_n", 5),
    ("a_n", 6),
    ("a_n", 7),
    ("d_n", 2),
    ("d_n", 3),
    ("d_n", 4),
    ("d_n", 5),
    ("d_n", 6),
]


def test_annulus_faces_and_signature(annulus):
    sums = [f.coordinate_sum() for f in annulus.trace_faces()]
    assert {"Y": 1} in sums and {"Y": 1, "Z": 2} in sums
    sig = annulus.signature()
    assert (sig.genus, sig.boundary, sig.sorted_delta()) == (0, 2, (1, 0))
    assert len(annulus.edges) == sig.edge_count == 2


def test_a3_single_face(a3):
    faces = a3.trace_faces()
    assert len(faces) == 1
    assert faces[0].coordinate_sum() == {"Z1": 2, "Z2": 2, "Z3": 2}
    sig = a3.signature()
    assert (sig.genus, sig.boundary, sig.delta) == (0, 1, (3,))


def test_d4_faces(d3):
    d4 = standard_graph("d_n", 4)
    sums = [f.coordinate_sum() for f in d4.trace_faces()]
    ring = {f"Y{i}": 1 for i in range(1, 5)}
    marked = dict(ring)
    marked.update({f"Z{i}": 2 for i in range(1, 5)})
    assert ring in sums and marked in sums
    assert len(d4.edges) == 8


def test_an_structure():
    for n in (3, 4, 5, 6):
        g = standard_graph("a_n", n)
        sig = g.signature()
        assert (sig.genus, sig.boundary, sig.delta) == (0, 1, (n,))
        assert len(g.edges) == 2 * n - 3 == sig.edge_count
        assert len(g.pending) == n
    with pytest.raises(GraphError):
        standard_graph("a_n", 2)
    with pytest.raises(GraphError):
        standard_graph("d_n", 1)


def test_euler_and_edge_count_all_standard():
    for kind, n in ALL_STANDARD:
        g = standard_graph(kind, n)
        sig = g.signature()
        faces = g.trace_faces()
        v = len(g.order)
        assert v - len(g.edges) + len(faces) == 2 - 2 * sig.genus
        assert len(faces) == sig.boundary
        assert len(g.edges) == sig.edge_count


def test_signature_validation():
    with pytest.raises(GraphError):
        SurfaceSignature(0, 2, (0, 0))  # unmarked annulus is not hyperbolic
    with pytest.raises(GraphError):
        SurfaceSignature(0, 1, (2,))
    sig = SurfaceSignature(1, 1, (0,))
    assert sig.edge_count == 3


def test_double_signature_values():
    assert double_signature(SurfaceSignature(0, 2, (1, 0))) == (0, 3)
    assert double_signature(SurfaceSignature(0, 1, (3,))) == (1, 1)
    assert double_signature(SurfaceSignature(1, 1, (0,))) == (1, 2)
    assert is_degenerate_double(SurfaceSignature(1, 1, (0,)))
    assert not is_degenerate_double(SurfaceSignature(0, 1, (3,)))


def test_double_graph_matches_formula_corpus():
    for kind, n in ALL_STANDARD:
        g = standard_graph(kind, n)
        ghat, shat = double_signature(g.signature())
        dbl = double_graph(g)
        dsig = dbl.graph.signature()
        assert (dsig.genus, dsig.boundary) == (ghat, shat), (kind, n)
        assert not dbl.graph.pending
        assert dsig.delta == (0,) * shat


def test_double_graph_rejects_no_pending():
    g = FatGraph.parse(
        """
        edge a v1 0 v2 0
        edge b v1 1 v2 2
        edge c v1 2 v2 1
        """
    )
    with pytest.raises(GraphError):
        double_graph(g)


def test_doubled_values():
    g = standard_graph("annulus_one_marked")
    dbl = double_graph(g)
    vals = dbl.doubled_values({"Y": 0.5, "Z": 2.0})
    assert vals["Z"] == 4.0 and vals["Y@0"] == 0.5 and vals["Y@1"] == 0.5


def test_parse_round_trip_and_errors(a4):
    text = a4.serialize()
    g2 = FatGraph.parse(text)
    assert g2.order == a4.order and g2.pending == a4.pending
    with pytest.raises(GraphError, match="duplicate slot"):
        FatGraph.parse("edge Y v1 0 v1 0\npedge Z v1 2\n")
    with pytest.raises(GraphError, match="slots"):
        FatGraph.parse("pedge Z v1 0\n")
    with pytest.raises(GraphError, match="unknown declaration"):
        FatGraph.parse("vertex v1\n")
    with pytest.raises(GraphError, match="connected"):
        FatGraph.parse(
            "edge Y v1 0 v1 1\npedge Z v1 2\n"
            "edge W u1 0 u1 1\npedge X u1 2\n"
        )
    with pytest.raises(GraphError):
        FatGraph.parse("edge Y v1 0 v1 1 extra\n")


def test_comments_and_blank_lines():
    g = FatGraph.parse("# spine of the once-marked annulus\n\nedge Y v1 0 v1 1  # loop\npedge Z v1 2\n")
    assert set(g.edges) == {"Y", "Z"}
