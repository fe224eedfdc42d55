"""
Tests for the trust graph: document loading, generation, subnetworks and pruning
"""

from itertools import permutations

import pytest
from pydantic import ValidationError

from src.graph import (
    GraphError,
    GraphFormatError,
    InvalidPathError,
    PathLimitExceeded,
    UnknownNodeError,
    dump_graph,
    extract_subnetwork,
    generate_graph,
    graph_from_edge_list,
    iter_simple_paths,
    load_graph,
    neighbors_pruned,
    read_graph,
    write_graph,
)
from src.models import GeneratorSpec, QoTDistribution, QoTWeights, UniformRange
from tests.conftest import make_graph

DIAMOND_DOCUMENT = """\
# four participants, two routes from 1 to 4
node 1 0.5
node 2 0.7
node 3 0.5
node 4 0.5
edge 1 2 0.9 0.8
edge 2 4 0.7 0.6
edge 1 3 0.6 0.9
edge 3 4 0.8 0.5
"""


def brute_force_paths(graph, source, target, max_hops):
    """Every simple path by permutation of intermediate nodes"""
    others = [n for n in graph.nodes if n not in (source, target)]
    found = set()
    for k in range(0, max_hops):
        for middle in permutations(others, k):
            path = (source,) + middle + (target,)
            if all(graph.has_edge(u, v) for u, v in zip(path, path[1:])):
                found.add(path)
    return found


class TestLoadGraph:
    """Parsing of the line-oriented graph document"""

    def test_symmetric_closure(self):
        """A listed edge answers with identical values in both directions"""
        graph = load_graph("node A 0.1\nnode B 0.2\nedge A B 0.8 0.5\n")
        assert graph.edge_values("B", "A") == (0.8, 0.5)
        assert graph.edge_values("A", "B") == (0.8, 0.5)

    def test_diamond_document(self):
        graph = load_graph(DIAMOND_DOCUMENT)
        assert graph.number_of_nodes() == 4
        assert graph.number_of_edges() == 4
        assert graph.directed_edge_count() == 8
        assert graph.rho("2") == 0.7
        assert graph.neighbors("1") == ("2", "3")

    def test_symmetry_holds_for_every_pair(self):
        graph = load_graph(DIAMOND_DOCUMENT)
        for edge in graph.edges():
            assert graph.edge_values(edge.source, edge.target) == graph.edge_values(edge.target, edge.source)

    def test_comments_and_blank_lines_are_skipped(self):
        graph = load_graph("\n# comment\nnode A 0.1\n\n   # indented comment\nnode B 1\nedge A B 1 1\n")
        assert graph.nodes == ("A", "B")

    def test_repeated_consistent_edge_is_kept_once(self):
        graph = load_graph("node A 0.1\nnode B 0.2\nedge A B 0.8 0.5\nedge B A 0.8 0.5\n")
        assert graph.number_of_edges() == 1

    @pytest.mark.parametrize(
        "document, line",
        [
            ("node A 0.1\nnode B 0.2\nedge A B 1.5 0.5\n", 3),
            ("node A 0.1\nnode B 0.2\nedge A B 0.5 0\n", 3),
            ("node A 1.2\n", 1),
            ("node A 0.1\nnode A 0.2\n", 2),
            ("node A 0.1\nedge A A 0.5 0.5\n", 2),
            ("node A 0.1\n# ok\nedge A B 0.5 0.5\n", 3),
            ("node A 0.1\nnode B 0.2\nedge A B 0.5 0.5\nedge B A 0.5 0.4\n", 4),
            ("node A 0.1\nnode B x\n", 2),
            ("vertex A 0.1\n", 1),
            ("node A\n", 1),
            ("node A 0.1\nnode B 0.2\nedge A B 0.5\n", 3),
        ],
    )
    def test_errors_carry_line_number(self, document, line):
        with pytest.raises(GraphFormatError) as excinfo:
            load_graph(document)
        assert excinfo.value.line == line
        assert str(excinfo.value).startswith(f"line {line}: ")

    def test_out_of_range_trust_mentions_field(self):
        with pytest.raises(GraphFormatError, match="trust"):
            load_graph("node A 0.1\nnode B 0.2\nedge A B 1.5 0.5\n")

    def test_format_error_is_a_graph_error(self):
        with pytest.raises(GraphError):
            load_graph("node A 2\n")

    def test_read_graph_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_graph(tmp_path / "missing.txt")


class TestDumpGraph:
    """Serialization back to the document format"""

    def test_round_trip_preserves_values(self, diamond_graph):
        loaded = load_graph(dump_graph(diamond_graph))
        assert loaded.participants() == diamond_graph.participants()
        assert loaded.edges() == diamond_graph.edges()

    def test_header_and_pair_order(self, diamond_graph):
        lines = dump_graph(diamond_graph).splitlines()
        assert lines[0] == "# 4 participants, 4 trust pairs"
        edge_lines = [line for line in lines if line.startswith("edge")]
        assert edge_lines[0] == "edge 1 2 0.9 0.8"
        assert len(edge_lines) == 4

    def test_write_and_read(self, diamond_graph, tmp_path):
        path = write_graph(diamond_graph, tmp_path / "nested" / "graph.txt")
        assert path.exists()
        assert read_graph(path).edges() == diamond_graph.edges()


class TestGenerateGraph:
    """Seeded synthetic graphs"""

    def test_exact_counts(self):
        graph = generate_graph(GeneratorSpec(node_count=50, edge_count=63, seed=7))
        assert graph.number_of_nodes() == 50
        assert graph.number_of_edges() == 63

    def test_same_seed_is_byte_identical(self):
        spec = GeneratorSpec(node_count=50, edge_count=63, seed=7)
        assert dump_graph(generate_graph(spec)) == dump_graph(generate_graph(spec))

    def test_different_seed_differs(self):
        first = generate_graph(GeneratorSpec(node_count=50, edge_count=63, seed=7))
        second = generate_graph(GeneratorSpec(node_count=50, edge_count=63, seed=8))
        assert dump_graph(first) != dump_graph(second)

    def test_too_many_edges_rejected(self):
        with pytest.raises(ValidationError, match="exceeds"):
            GeneratorSpec(node_count=4, edge_count=7, seed=1)

    def test_complete_graph_allowed(self):
        graph = generate_graph(GeneratorSpec(node_count=4, edge_count=6, seed=1))
        assert graph.number_of_edges() == 6

    def test_values_within_ranges(self):
        distribution = QoTDistribution(
            trust=UniformRange(low=0.2, high=0.4),
            intimacy=UniformRange(low=0.5, high=0.6),
            rho=UniformRange(low=0.3, high=0.9),
        )
        spec = GeneratorSpec(node_count=30, edge_count=80, qot_distribution=distribution, seed=3)
        graph = generate_graph(spec)
        for edge in graph.edges():
            assert 0.2 < edge.trust <= 0.4
            assert 0.5 < edge.intimacy <= 0.6
        for participant in graph.participants():
            assert 0.3 <= participant.rho < 0.9


class TestEdgeListImport:
    """Bare ``u v`` edge lists get seeded QoT values"""

    def test_drops_self_loops_and_repeats(self):
        graph = graph_from_edge_list("# header\n% other\na b\nb a\nc c\nb c\n", seed=5)
        assert graph.nodes == ("a", "b", "c")
        assert graph.number_of_edges() == 2

    def test_seeded(self):
        document = "1 2\n2 3\n3 4\n"
        assert dump_graph(graph_from_edge_list(document, seed=9)) == dump_graph(
            graph_from_edge_list(document, seed=9)
        )

    def test_short_line_rejected(self):
        with pytest.raises(GraphFormatError) as excinfo:
            graph_from_edge_list("1 2\n3\n")
        assert excinfo.value.line == 2


class TestExtractSubnetwork:
    """Hop-bounded subnetwork extraction"""

    def test_diamond_two_hops_keeps_everything(self, diamond_graph):
        sub = extract_subnetwork(diamond_graph, "1", "4", 2)
        assert not sub.is_empty
        assert sub.graph.nodes == ("1", "2", "3", "4")
        assert sub.graph.number_of_edges() == 4

    def test_diamond_one_hop_is_empty(self, diamond_graph):
        sub = extract_subnetwork(diamond_graph, "1", "4", 1)
        assert sub.is_empty
        assert sub.number_of_nodes() == 0

    def test_dead_end_branch_removed(self):
        graph = make_graph(
            {"s": 0.5, "a": 0.5, "d": 0.5, "x": 0.5, "y": 0.5},
            [("s", "a", 1, 1), ("a", "d", 1, 1), ("a", "x", 1, 1), ("s", "y", 1, 1)],
        )
        sub = extract_subnetwork(graph, "s", "d", 6)
        assert set(sub.graph.nodes) == {"s", "a", "d"}

    def test_too_long_detour_removed(self):
        graph = make_graph(
            {"s": 0.5, "a": 0.5, "b": 0.5, "c": 0.5, "d": 0.5},
            [("s", "d", 1, 1), ("s", "a", 1, 1), ("a", "b", 1, 1), ("b", "c", 1, 1), ("c", "d", 1, 1)],
        )
        assert set(extract_subnetwork(graph, "s", "d", 3).graph.nodes) == {"s", "d"}
        assert len(extract_subnetwork(graph, "s", "d", 4).graph.nodes) == 5

    def test_unknown_node(self, diamond_graph):
        with pytest.raises(UnknownNodeError):
            extract_subnetwork(diamond_graph, "1", "99", 3)

    def test_same_endpoints_rejected(self, diamond_graph):
        with pytest.raises(ValueError):
            extract_subnetwork(diamond_graph, "1", "1", 3)

    @pytest.mark.parametrize("seed", range(5))
    def test_nodes_match_enumerated_paths(self, seed):
        graph = generate_graph(GeneratorSpec(node_count=12, edge_count=20, seed=seed))
        sub = extract_subnetwork(graph, "0", "11", 4)
        paths = brute_force_paths(graph, "0", "11", 4)
        on_paths = {n for path in paths for n in path}
        assert set(sub.graph.nodes) == on_paths
        assert sub.is_empty == (not paths)


class TestIterSimplePaths:
    """Bounded DFS enumeration"""

    @pytest.fixture
    def k4(self):
        nodes = {"1": 0.5, "2": 0.5, "3": 0.5, "4": 0.5}
        pairs = [("1", "2"), ("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"), ("3", "4")]
        return make_graph(nodes, [(u, v, 1, 1) for u, v in pairs])

    def test_complete_graph_count_and_order(self, k4):
        paths = list(iter_simple_paths(k4, "1", "4", 3))
        assert paths == [
            ("1", "2", "3", "4"),
            ("1", "2", "4"),
            ("1", "3", "2", "4"),
            ("1", "3", "4"),
            ("1", "4"),
        ]

    def test_hop_budget(self, k4):
        assert list(iter_simple_paths(k4, "1", "4", 1)) == [("1", "4")]

    def test_limit_raises(self, k4):
        with pytest.raises(PathLimitExceeded) as excinfo:
            list(iter_simple_paths(k4, "1", "4", 3, limit=4))
        assert excinfo.value.limit == 4

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_brute_force(self, seed):
        graph = generate_graph(GeneratorSpec(node_count=9, edge_count=16, seed=100 + seed))
        assert set(iter_simple_paths(graph, "0", "8", 5)) == brute_force_paths(graph, "0", "8", 5)


class TestNeighborsPruned:
    """Static neighborhood pruning by single-edge utility"""

    def test_degree_below_M(self, diamond_graph, weights):
        assert set(neighbors_pruned(diamond_graph, "1", 20, weights)) == {"2", "3"}

    def test_ranked_by_single_edge_utility(self, diamond_graph, weights):
        # 1-2: 0.3*0.9 + 0.3*0.8 + 0.4*0.7 = 0.79 ; 1-3: 0.18 + 0.27 + 0.2 = 0.65
        assert neighbors_pruned(diamond_graph, "1", 20, weights) == ["2", "3"]

    def test_truncates_to_M(self):
        rhos = {str(i): 0.5 for i in range(31)}
        edges = [("0", str(i), 0.5, 0.5) for i in range(1, 31)]
        graph = make_graph(rhos, edges)
        result = neighbors_pruned(graph, "0", 20, QoTWeights(w_T=0.3, w_r=0.3, w_rho=0.4))
        assert len(result) == 20
        # all scores tie, so numeric id order decides
        assert result == [str(i) for i in range(1, 21)]

    def test_tie_break_is_stable(self):
        graph = make_graph({"c": 0.5, "a": 0.5, "b": 0.5}, [("c", "b", 0.5, 0.5), ("c", "a", 0.5, 0.5)])
        w = QoTWeights(w_T=0.3, w_r=0.3, w_rho=0.4)
        assert neighbors_pruned(graph, "c", 5, w) == ["a", "b"]
        assert neighbors_pruned(graph, "c", 5, w) == neighbors_pruned(graph, "c", 5, w)

    def test_M_must_be_positive(self, diamond_graph, weights):
        with pytest.raises(ValueError):
            neighbors_pruned(diamond_graph, "1", 0, weights)

    def test_unknown_node(self, diamond_graph, weights):
        with pytest.raises(UnknownNodeError):
            neighbors_pruned(diamond_graph, "9", 3, weights)


class TestPathValidation:
    def test_valid_path(self, diamond_sub):
        assert diamond_sub.validate_path(["1", "2", "4"]) == ("1", "2", "4")

    @pytest.mark.parametrize(
        "path",
        [["1"], ["2", "4"], ["1", "4"], ["1", "2", "1", "3", "4"], ["1", "2", "3", "4"]],
    )
    def test_invalid_paths(self, diamond_sub, path):
        assert not diamond_sub.is_valid_path(path)
        with pytest.raises(InvalidPathError):
            diamond_sub.validate_path(path)
