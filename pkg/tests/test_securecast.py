import pytest

from netkeycast.field import FieldSpec
from netkeycast.generators import gen_fig3, gen_fig4, gen_random_dag, gen_secure_tight
from netkeycast.graph import Edge, Instance, InstanceError
from netkeycast.lincode import LinearCode
from netkeycast.securecast import (ConditionError, build_secure_code, check_conditions,
                                   check_node_messages, classify_oracle, construct, verify_secure,
                                   vertex_coloring)
from netkeycast.utils import SecrecyMode, VertexKind


def line():
    return Instance(['s', 'v', 'd'], [(0, 's', 'v'), (1, 'v', 'd')], 's', [['d']],
                    secrecy_mode=SecrecyMode.NODE_EAVESDROPPER)


def diamond():
    edges = [Edge(0, 's', 'u'), Edge(1, 's', 'w'), Edge(2, 'u', 't'), Edge(3, 'w', 't')]
    return Instance(['s', 'u', 'w', 't'], edges, 's', [['t']], secrecy_mode=SecrecyMode.NODE_EAVESDROPPER)


def single_set():
    """ s feeds v over two parallel edges and w directly; v and w feed the terminal """
    edges = [Edge(0, 's', 'v'), Edge(1, 's', 'v'), Edge(2, 's', 'w'), Edge(3, 's', 'w'),
             Edge(4, 'v', 'd'), Edge(5, 'w', 'd')]
    return Instance(['s', 'v', 'w', 'd'], edges, 's', [['d']], secrecy_mode=SecrecyMode.NODE_EAVESDROPPER)


class TestConditions:

    def test_secure_tight(self):
        assert check_conditions(gen_secure_tight())

    def test_line(self):
        conditions = check_conditions(line())
        assert not conditions
        assert conditions.witness == 'd'

    def test_diamond(self):
        conditions = check_conditions(diamond())
        assert conditions.witness == 'u'

    def test_star_relay(self):
        # x is two edge connected but every terminal hangs off a single edge
        assert check_conditions(gen_fig3(2)).witness == 'd1'


class TestVertexColoring:

    def setup_class(self):
        self.instance = gen_secure_tight()
        self.coloring = vertex_coloring(self.instance)

    def test_colors(self):
        coloring = self.coloring
        assert coloring.color['s'] == 1
        assert coloring.color['x'] == 2
        assert coloring.color['y'] == 3
        assert coloring.color['z'] == 5
        assert coloring.color['d1_1'] == coloring.color['d1_2'] == 6
        assert coloring.color['d2_1'] == coloring.color['d2_2'] == 7
        assert coloring.num_colors == 8
        assert coloring.representative == {1: 'd1_1', 2: 'd2_1'}

    def test_kinds(self):
        kind = self.coloring.kind
        assert kind['x'] is VertexKind.COLOR_PRESERVING
        assert kind['y'] is VertexKind.COLOR_PRESERVING
        assert kind['z'] is VertexKind.NEWLY_COLORED
        for d in self.instance.terminals:
            assert kind[d] is VertexKind.NEWLY_COLORED

    def test_terminal_colors_are_private(self):
        for j in self.instance.set_indices:
            own = self.coloring.color[self.coloring.representative[j]]
            others = [v for v in self.instance.nodes if v not in self.instance.terminal_set(j)]
            assert all(self.coloring.color[v] != own for v in others)

    def test_inherited_color(self):
        # w is fed by v alone and inherits its color
        edges = [Edge(0, 's', 'v'), Edge(1, 's', 'v'), Edge(2, 'v', 'w'), Edge(3, 'v', 'w'),
                 Edge(4, 'w', 'd'), Edge(5, 's', 'd')]
        instance = Instance(['s', 'v', 'w', 'd'], edges, 's', [['d']],
                            secrecy_mode=SecrecyMode.NODE_EAVESDROPPER)
        coloring = vertex_coloring(instance)
        assert coloring.color['w'] == coloring.color['v']
        assert coloring.kind['w'] is VertexKind.COLOR_PRESERVING
        assert coloring.kind['d'] is VertexKind.NEWLY_COLORED

    def test_conditions_are_enforced(self):
        with pytest.raises(ConditionError):
            vertex_coloring(line())
        coloring = vertex_coloring(line(), enforce_conditions=False)
        assert coloring.kind['d'] is VertexKind.COLOR_PRESERVING

    def test_classification_matches_connectivity(self):
        for v in self.instance.nodes - {'s'}:
            newly = self.coloring.kind[v] is VertexKind.NEWLY_COLORED
            assert newly == classify_oracle(self.instance, v)

    def test_classify_oracle(self):
        assert classify_oracle(diamond(), 't')
        assert not classify_oracle(line(), 'd')
        with pytest.raises(InstanceError):
            classify_oracle(line(), 's')

    def test_random_corpus(self):
        for seed in range(1000):
            instance = gen_random_dag(seed, nodes=6 + seed % 7, edge_prob=0.3 + (seed % 4) / 10,
                                      ell=1 + seed % 2)
            coloring = vertex_coloring(instance, enforce_conditions=False)
            for v in instance.nodes - {instance.source}:
                newly = coloring.kind[v] is VertexKind.NEWLY_COLORED
                assert newly == classify_oracle(instance, v), (seed, v)


class TestSecureCode:

    def test_source_neighbour_forwards(self):
        instance = single_set()
        coloring = vertex_coloring(instance)
        code = build_secure_code(instance, coloring)
        c_v = coloring.color['v']
        assert code.edge_msgs[0] == (1, c_v, 0)
        assert code.edge_msgs[1] == (0, 1, c_v)
        assert code.keys == {1: (1, coloring.color['d'], 0)}
        assert all(check_node_messages(instance, code, coloring))

    def test_secure_tight(self):
        result = construct(gen_secure_tight(), exhaustive=True)
        assert result
        assert result.code.field == FieldSpec(4)
        assert result.code.keys == {1: (1, 6, 0), 2: (1, 7, 0)}
        report = result.report
        secrecy = [c for c in report.checks if c.name == 'secrecy']
        oracle = [c for c in report.checks if c.name == 'oracle_secrecy']
        # five eavesdroppers per terminal set
        assert len(secrecy) == 10 and all(secrecy)
        assert len(oracle) == 10 and all(c and not c.skipped for c in oracle)
        decoding = [c for c in report.checks if c.name == 'decoding']
        assert len(decoding) == 4 and all(decoding)

    def test_corrupted_code(self):
        result = construct(gen_secure_tight())
        edges = dict(result.code.edge_msgs)
        # s hands its secret straight to x
        edges[0], edges[1] = (1, 0, 0), (0, 1, 0)
        corrupted = LinearCode(result.code.basis, result.code.field, edges, result.code.keys)
        report = verify_secure(result.instance, corrupted)
        assert not report.is_success
        failures = [c for c in report.checks if not c and c.name == 'secrecy']
        assert (1, (0, 1)) in [c.subject for c in failures]

    def test_single_set(self):
        result = construct(single_set())
        assert result
        assert not [c for c in result.report.checks if c.name == 'pairwise_independence']
        assert [c for c in result.report.checks if c.name == 'secrecy']

    @pytest.mark.parametrize('ell', [1, 3, 4])
    def test_many_sets(self, ell):
        assert construct(gen_fig4(ell))

    def test_failing_conditions(self):
        result = construct(diamond())
        assert not result
        assert result.witness == 'u'

    def test_mode_is_required(self):
        with pytest.raises(InstanceError):
            construct(gen_fig3(2))
        with pytest.raises(ConditionError):
            verify_secure(gen_fig3(2), None)
