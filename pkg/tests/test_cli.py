import json

import pytest
from click.testing import CliRunner

from netkeycast.cli import cli
from netkeycast.graph import Edge, Instance, save_instance
from netkeycast.utils import SecrecyMode


class TestCli:

    def setup_class(self):
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(cli, [str(arg) for arg in args])

    def test_keycast_round_trip(self, tmp_path):
        instance_path = tmp_path / 'fig3.json'
        code_path = tmp_path / 'code.json'
        result = self.invoke('gen', 'fig3', '--ell', 3, '-o', instance_path)
        assert result.exit_code == 0, result.output
        assert instance_path.exists()

        result = self.invoke('construct', instance_path, '-o', code_path, '--json')
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)['success']

        result = self.invoke('verify', instance_path, code_path, '--json')
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report['rate'] == '1'
        assert report['terminal_sets'] == 3

    def test_secure_with_dot(self, tmp_path):
        instance_path = tmp_path / 'tight.json'
        code_path = tmp_path / 'code.json'
        dot_path = tmp_path / 'tight.dot'
        assert self.invoke('gen', 'secure-tight', '-o', instance_path).exit_code == 0
        result = self.invoke('construct', instance_path, '--mode', 'secure', '-o', code_path,
                             '--dot', dot_path, '--exhaustive')
        assert result.exit_code == 0, result.output
        assert 'verdict: PASS' in result.output
        assert json.loads(code_path.read_text())['keys'] == {'1': [1, 6, 0], '2': [1, 7, 0]}
        assert 'd1_1' in dot_path.read_text()

        result = self.invoke('verify', instance_path, code_path)
        assert result.exit_code == 0, result.output

    def test_random_is_deterministic(self):
        first = self.invoke('gen', 'random', '--seed', 11, '--nodes', 9)
        second = self.invoke('gen', 'random', '--seed', 11, '--nodes', 9)
        assert first.exit_code == 0
        assert first.output == second.output
        assert json.loads(first.output)['source'] == 0

    def test_infeasible(self, tmp_path):
        instance_path = tmp_path / 'infeasible.json'
        code_path = tmp_path / 'code.json'
        assert self.invoke('gen', 'infeasible', '-o', instance_path).exit_code == 0

        result = self.invoke('construct', instance_path, '-o', code_path)
        assert result.exit_code == 1
        assert not code_path.exists()

        result = self.invoke('analyze', instance_path, '--json')
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report['keycast'] == 'INFEASIBLE'
        assert report['keycast_witness'] == {'i': 2, 'j': 1, 'd': 'd2'}
        assert report['secure'] == 'FAIL'
        assert report['cut_sets'] == {'1': [2], '2': [2]}

    def test_corrupted_code(self, tmp_path):
        instance_path = tmp_path / 'fig3.json'
        code_path = tmp_path / 'code.json'
        self.invoke('gen', 'fig3', '-o', instance_path)
        assert self.invoke('construct', instance_path, '-o', code_path).exit_code == 0

        document = json.loads(code_path.read_text())
        document['keys']['2'] = document['keys']['1']
        code_path.write_text(json.dumps(document))
        result = self.invoke('verify', instance_path, code_path, '--json')
        assert result.exit_code == 1
        report = json.loads(result.output)
        failures = {(c['name'], str(c['subject'])) for c in report['checks'] if c['status'] == 'fail'}
        assert ('pairwise_independence', '[1, 2]') in failures
        # d2 only sees its own color
        assert ('decoding', 'd2') in failures

    def test_malformed_inputs(self, tmp_path):
        broken = tmp_path / 'broken.json'
        broken.write_text('{"nodes": ')
        assert self.invoke('analyze', broken).exit_code == 2
        assert self.invoke('analyze', tmp_path / 'missing.json').exit_code == 2

        instance_path = tmp_path / 'fig3.json'
        self.invoke('gen', 'fig3', '-o', instance_path)
        assert self.invoke('verify', instance_path, broken).exit_code == 2

    def test_secure_mode_needs_node_eavesdroppers(self, tmp_path):
        instance_path = tmp_path / 'fig3.json'
        self.invoke('gen', 'fig3', '-o', instance_path)
        result = self.invoke('construct', instance_path, '--mode', 'secure', '-o', tmp_path / 'code.json')
        assert result.exit_code == 2

    def test_verify_against_the_original_instance(self, tmp_path):
        edges = [Edge(0, 's', 'u'), Edge(1, 's', 'w'), Edge(2, 'u', 't'), Edge(3, 'w', 't')]
        instance_path = tmp_path / 'diamond.json'
        normalized_path = tmp_path / 'normalized.json'
        code_path = tmp_path / 'code.json'
        save_instance(Instance(['s', 'u', 'w', 't'], edges, 's', [['t']]), instance_path)

        result = self.invoke('construct', instance_path, '-o', code_path, '--instance-out', normalized_path)
        assert result.exit_code == 0, result.output
        assert "t'" in json.loads(normalized_path.read_text())['nodes']

        assert self.invoke('verify', instance_path, code_path).exit_code == 0
        assert self.invoke('verify', normalized_path, code_path).exit_code == 0

    def test_verify_prunes_unreachable_relays(self, tmp_path):
        # z feeds v but nothing reaches z
        edges = [Edge(0, 's', 'v'), Edge(1, 's', 'v'), Edge(2, 'v', 'd'), Edge(3, 'z', 'v')]
        instance_path = tmp_path / 'relay.json'
        code_path = tmp_path / 'code.json'
        save_instance(Instance(['s', 'v', 'd', 'z'], edges, 's', [['d']]), instance_path)

        result = self.invoke('construct', instance_path, '-o', code_path)
        assert result.exit_code == 0, result.output
        assert '3' not in json.loads(code_path.read_text())['edges']
        result = self.invoke('verify', instance_path, code_path)
        assert result.exit_code == 0, result.output

    def test_secure_verify_prunes_unreachable_relays(self, tmp_path):
        edges = [Edge(0, 's', 'v'), Edge(1, 's', 'v'), Edge(2, 's', 'w'), Edge(3, 's', 'w'),
                 Edge(4, 'v', 'd'), Edge(5, 'w', 'd'), Edge(6, 'z', 'w')]
        instance_path = tmp_path / 'relay.json'
        code_path = tmp_path / 'code.json'
        save_instance(Instance(['s', 'v', 'w', 'd', 'z'], edges, 's', [['d']],
                               secrecy_mode=SecrecyMode.NODE_EAVESDROPPER), instance_path)

        result = self.invoke('construct', instance_path, '--mode', 'secure', '-o', code_path)
        assert result.exit_code == 0, result.output
        result = self.invoke('verify', instance_path, code_path)
        assert result.exit_code == 0, result.output

    def test_gap(self):
        result = self.invoke('gap', 'nonsecure', '--eps', '1/8', '--json')
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report['ell'] == 9
        assert report['keycast_rate'] == '1'
        assert report['sr_upper_bound'] == '7/8'
        assert report['strict_gap'] is True

        result = self.invoke('gap', 'secure', '--eps', 9, '--json')
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)['ell'] == 2

    @pytest.mark.parametrize('args', [
        ('gap', 'nonsecure', '--eps', '2/3'),
        ('gap', 'nonsecure', '--eps', 'abc'),
        ('gap', 'sideways', '--eps', '1/8'),
        ('plotkin', '--n', 4, '--M', 2, '--w', '3/2'),
        ('gen', 'petersen'),
    ])
    def test_usage_errors(self, args):
        assert self.invoke(*args).exit_code == 2

    def test_plotkin(self):
        result = self.invoke('plotkin', '--n', 4, '--M', 2, '--w', '1/2', '--exhaustive', '--json')
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report['codebooks'] == 55
        assert report['bound'] == '6'

        result = self.invoke('plotkin', '--n', 4, '--M', 3, '--w', '1/2', '--eps', '1/2', '--json')
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report['corollary_M'] == 3
        assert report['corollary_bound'] == '5'

    def test_version(self):
        result = self.invoke('--version')
        assert result.exit_code == 0
        assert '0.1.0' in result.output
