"""
Tests for termgraph export component
"""

import xml.etree.ElementTree as ET

import networkx as nx
import pytest

from src.shared.errors.errors import ParameterError
from src.termgraph.export.export import export_graph, import_graph_records
from src.termgraph.graph.graph import canonical_graph


def _sample():
    return canonical_graph({"b": "location", "a": "pathology", "c": None},
                           [("b", "a", 1.25), ("c", "b", 0.5)])


@pytest.mark.parametrize("fmt", ["dot", "graphml", "records"])
def test_empty_graph_exports(fmt):
    data = export_graph(nx.Graph(), fmt)
    if fmt == "graphml":
        ET.fromstring(data)
    elif fmt == "dot":
        assert data == b"graph terms {\n}\n"
    else:
        assert data == b""


def test_dot_has_single_weighted_edge():
    g = canonical_graph({"a": None, "b": None}, [("a", "b", 2.0)])
    lines = export_graph(g, "dot").decode().splitlines()
    edges = [line for line in lines if "--" in line]
    assert edges == ['  "a" -- "b" [weight=2.0];']


def test_graphml_carries_attributes():
    root = ET.fromstring(export_graph(_sample(), "graphml"))
    names = {key.get("attr.name") for key in root.iter("{http://graphml.graphdrawing.org/xmlns}key")}
    assert {"weight", "category"} <= names
    parsed = nx.parse_graphml(export_graph(_sample(), "graphml").decode())
    assert parsed["a"]["b"]["weight"] == 1.25


def test_records_round_trip_and_ordering():
    g = _sample()
    data = export_graph(g, "records")
    lines = data.decode().splitlines()
    assert '"term": "a"' in lines[0]
    assert '"type": "edge"' in lines[-1]
    back = import_graph_records(data)
    assert nx.utils.graphs_equal(back, g)
    assert export_graph(back, "records") == data


def test_unknown_format():
    with pytest.raises(ParameterError):
        export_graph(_sample(), "png")
