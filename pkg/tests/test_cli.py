"""Command-line tests for compnet"""
import hashlib
import json
import os
import unittest

from click.testing import CliRunner

from compnet.src import manifest
from compnet.src.cli import main
from compnet.src.core import option

ZERO_NETWORK = {'architecture': [1, 1, 1],
                'layers': [{'A': ['0/1'], 'b': ['0/1']},
                           {'A': ['0/1'], 'b': ['0/1']}],
                'activation': 'relu'}

CONFLICTING_DATASET = {'d': 1,
                       'pairs': [{'x': ['0/1'], 'y': '3/1'},
                                 {'x': ['0/1'], 'y': '5/1'}]}

WIDE_BALLS = {'balls': [{'c': ['0/1'], 'r': '1/1'}]}


def write_document(path: str, document: dict) -> None:
    with open(path, 'w') as output_file:
        json.dump(document, output_file)


def read_document(path: str) -> dict:
    with open(path, 'r') as input_file:
        return json.load(input_file)


class CompnetCliTests(unittest.TestCase):
    """Test cases for the compnet command"""

    def setUp(self):
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(main, list(args))

    def assertOk(self, result):
        self.assertEqual(result.exit_code, option.ExitCode.OK,
                         msg=result.output)

    def test_learn_quantized(self):
        """learn quantized recovers 3 relu(2x + 1) from its dataset"""
        result = self.invoke('learn', 'quantized', 'relu_affine.dataset',
                             '--arch', '1,1,1')
        self.assertOk(result)

        report = json.loads(result.stdout)
        self.assertEqual(report['mode'], 'quantized')
        self.assertFalse(report['budget_exhausted'])
        layers = report['learned']['layers']
        self.assertEqual(layers[0], {'A': ['2/1'], 'b': ['1/1']})
        self.assertEqual(layers[1], {'A': ['3/1'], 'b': ['0/1']})

    def test_learn_enum_and_lipschitz(self):
        for mode in ['enum', 'lipschitz']:
            result = self.invoke('learn', mode, 'relu_affine.dataset',
                                 '--arch', '1,1,1', '--epsilon', '1/8')
            self.assertOk(result)
            report = json.loads(result.stdout)
            self.assertEqual(report['epsilon'], '1/8')
            self.assertGreaterEqual(report['steps'], 1)
            self.assertEqual('psi_radius' in report, mode == 'lipschitz')

    def test_learn_writes_network_and_manifest(self):
        with self.runner.isolated_filesystem():
            args = ['learn', 'quantized', 'relu_affine.dataset',
                    '--arch', '1,1,1', '--out', 'report.json']
            self.assertOk(self.invoke(*args))

            self.assertTrue(os.path.exists('report.network.json'))
            run = read_document('report.json.manifest.json')
            self.assertEqual(run['outputs'],
                             ['report.json', 'report.network.json'])
            self.assertEqual(run['configuration']['arch'], [1, 1, 1])
            for path, digest in run['input_digests'].items():
                self.assertEqual(digest, manifest.file_digest(path))

            # the learned network can label data again
            result = self.invoke('gen', 'report.network.json', '--x', '1')
            self.assertOk(result)
            self.assertEqual(json.loads(result.stdout)['pairs'][0]['y'],
                             '9/1')

    def test_reruns_are_byte_identical(self):
        with self.runner.isolated_filesystem():
            outputs = []
            for name in ['first.json', 'second.json']:
                self.assertOk(self.invoke('learn', 'enum',
                                          'relu_affine.dataset',
                                          '--arch', '1,1,1', '--out', name))
                stem = name[:-len('.json')]
                with open(name, 'rb') as report_file, \
                        open(f'{stem}.network.json', 'rb') as network_file:
                    outputs.append((report_file.read(), network_file.read()))
            self.assertEqual(outputs[0], outputs[1])

    def test_learn_inconsistent(self):
        with self.runner.isolated_filesystem():
            write_document('conflict.json', CONFLICTING_DATASET)
            result = self.invoke('learn', 'quantized', 'conflict.json',
                                 '--arch', '1,1,1')
            self.assertEqual(result.exit_code,
                             option.ExitCode.INCONSISTENT_DATA)

    def test_learn_budget_exhausted(self):
        with self.runner.isolated_filesystem():
            result = self.invoke('learn', 'quantized', 'relu_affine.dataset',
                                 '--arch', '1,1,1', '--max-steps', '5',
                                 '--out', 'report.json')
            self.assertEqual(result.exit_code,
                             option.ExitCode.BUDGET_EXHAUSTED)

            report = read_document('report.json')
            self.assertTrue(report['budget_exhausted'])
            self.assertIsNone(report['learned'])
            self.assertEqual(report['steps'], 5)

    def test_encoded_round_trip(self):
        with self.runner.isolated_filesystem():
            self.assertOk(self.invoke('gen', 'relu_affine.network',
                                      '--encoded', '--n', '3',
                                      '--out', 'encoded.json'))
            encoded = read_document('encoded.json')
            self.assertEqual(encoded['pairs'][0],
                             {'x': ['441/1'], 'y': '2649/1'})

            result = self.invoke('learn', 'decode', 'encoded.json',
                                 '--arch', '1,1,1')
            self.assertOk(result)
            layers = json.loads(result.stdout)['learned']['layers']
            self.assertEqual(layers[0]['A'], ['2/1'])
            self.assertEqual(layers[1]['A'], ['3/1'])

            encoded['pairs'][0]['x'] = ['442/1']
            write_document('corrupted.json', encoded)
            result = self.invoke('learn', 'decode', 'corrupted.json',
                                 '--arch', '1,1,1')
            self.assertEqual(result.exit_code, option.ExitCode.DECODE_ERROR)

    def test_gen(self):
        result = self.invoke('gen', 'relu_affine.network', '--x', '1',
                             '--x=-1')
        self.assertOk(result)
        pairs = json.loads(result.stdout)['pairs']
        self.assertEqual([pair['y'] for pair in pairs], ['9/1', '0/1'])

        with self.runner.isolated_filesystem():
            write_document('zero.json', ZERO_NETWORK)
            result = self.invoke('gen', 'zero.json', '--grid=-1,1')
            self.assertOk(result)
            dataset = json.loads(result.stdout)
            self.assertEqual([pair['x'] for pair in dataset['pairs']],
                             [['-1/1'], ['0/1'], ['1/1']])
            self.assertTrue(all(pair['y'] == '0/1'
                                for pair in dataset['pairs']))

    def test_gen_ball_samples(self):
        args = ['gen', 'relu_affine.network', '--x', '1',
                '--ball-radius', '1/4', '--samples', '4', '--seed', '7']
        first, second = self.invoke(*args), self.invoke(*args)
        self.assertOk(first)
        self.assertEqual(first.stdout, second.stdout)
        self.assertEqual(len(json.loads(first.stdout)['pairs']), 4)

    def test_gen_needs_one_source(self):
        result = self.invoke('gen', 'relu_affine.network')
        self.assertEqual(result.exit_code, option.ExitCode.USAGE)
        result = self.invoke('gen', 'relu_affine.network', '--x', '1',
                             '--encoded')
        self.assertEqual(result.exit_code, option.ExitCode.USAGE)

    def test_classify(self):
        classes = ['--class', 'unit_interval.balls',
                   '--class', 'upper_interval.balls']
        expected = [('1/2', 'accept', 1), ('3/2', 'unknown', None),
                    ('5/2', 'accept', 2)]
        for x, verdict, class_index in expected:
            result = self.invoke('classify', *classes, '--x', x,
                                 '--fuel', '16')
            self.assertOk(result)
            document = json.loads(result.stdout)
            self.assertEqual(document['verdict'], verdict)
            self.assertEqual(document['class_index'], class_index)

    def test_classify_ambiguous(self):
        with self.runner.isolated_filesystem():
            write_document('wide.json', WIDE_BALLS)
            result = self.invoke('classify', '--class', 'unit_interval.balls',
                                 '--class', 'wide.json', '--x', '1/2')
            self.assertEqual(result.exit_code,
                             option.ExitCode.AMBIGUOUS_ACCEPT)

    def test_demo_topology(self):
        result = self.invoke('demo', 'topology', '--k-max', '3')
        self.assertOk(result)
        rows = json.loads(result.stdout)['rows']
        self.assertEqual([row['k'] for row in rows], [1, 2, 3])
        self.assertEqual([row['sup_norm'] for row in rows],
                         ['1/2', '1/4', '1/8'])
        self.assertEqual([row['lipschitz'] for row in rows],
                         ['4/1', '8/1', '16/1'])

    def test_demo_exitflag(self):
        result = self.invoke('demo', 'exitflag', '--epsilon', '1/2',
                             '--fuel', '32')
        self.assertOk(result)
        document = json.loads(result.stdout)
        verdicts = {row['x']: row['verdict'] for row in document['results']}
        for x in ['-2/1', '-3/2', '3/2', '2/1', '3/1']:
            self.assertEqual(verdicts[x], 'accept')
        for x in ['-1/2', '0/1', '1/2', '1/1', '-1/1']:
            self.assertEqual(verdicts[x], 'unknown')

    def test_demo_quantization(self):
        result = self.invoke('demo', 'quantization', '--x', '0', '--x', '1/2',
                             '--x', '3/4')
        self.assertOk(result)
        document = json.loads(result.stdout)
        rounding = {row['x']: row['rounding'] for row in document['results']}
        self.assertEqual(rounding['0/1']['16'], 0)
        self.assertEqual(rounding['1/2']['64'], 'unknown')
        self.assertEqual(rounding['3/4']['4'], 1)

    def test_rejects_decimals(self):
        result = self.invoke('learn', 'enum', 'relu_affine.dataset',
                             '--arch', '1,1,1', '--epsilon', '0.5')
        self.assertEqual(result.exit_code, option.ExitCode.USAGE)
        result = self.invoke('demo', 'exitflag', '--epsilon', '0.25')
        self.assertEqual(result.exit_code, option.ExitCode.USAGE)

    def test_bad_architecture(self):
        result = self.invoke('learn', 'quantized', 'relu_affine.dataset',
                             '--arch', '1,1,2')
        self.assertEqual(result.exit_code, option.ExitCode.USAGE)

    def test_file_digest(self):
        with self.runner.isolated_filesystem():
            with open('blob.bin', 'wb') as blob:
                blob.write(b'compnet' * 20000)
            expected = hashlib.sha256(b'compnet' * 20000).hexdigest()
            self.assertEqual(manifest.file_digest('blob.bin'), expected)


if __name__ == '__main__':
    unittest.main()
