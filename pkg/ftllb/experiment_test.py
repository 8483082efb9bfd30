# Licensed to the Apache Software Foundation (ASF) under one
# or more contributor license agreements. See the NOTICE file
# distributed with this work for additional information
# regarding copyright ownership. The ASF licenses this file
# to you under the Apache License, Version 2.0 (the
# "License"); you may not use this file except in compliance
# with the License. You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing,
# software distributed under the License is distributed on an
# "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, either express or implied. See the License for the
# specific language governing permissions and limitations
# under the License.


import os
import tempfile
import unittest
from unittest import mock

from ftllb.errors import ConfigError

from . import experiment
from . import oracle
from . import report
from . import simnet


def llb_spec(**fields):
  options = dict(n=32, degree=6, tau1=30, tau2=4, seeds='1..3')
  options.update(fields)
  return experiment.experiment_spec('llb', **options)


def consensus_spec(protocol='consensus-crash', **fields):
  options = dict(n=64, C2=6, iterations=2, dissemination_rounds=10, tau1=40, tau2=10,
                 seeds='1..2', inputs='ones')
  options.update(fields)
  return experiment.experiment_spec(protocol, **options)


class ExperimentSpecTest(unittest.TestCase):
  def test_desk_preset(self):
    spec = experiment.experiment_spec('count', n=128)
    self.assertEqual((4, 8, 20), (spec.C1, spec.C2, spec.C))
    self.assertEqual([1], spec.seeds)
    self.assertEqual('none', spec.adversary)

  def test_overrides(self):
    spec = experiment.experiment_spec('consensus-crash', n=128, C1=2, seeds='3..5')
    self.assertEqual(2, spec.C1)
    self.assertEqual(8, spec.C2)
    self.assertEqual([3, 4, 5], spec.seeds)

  def test_default_adversary(self):
    self.assertEqual('crash:random', llb_spec(t=2).adversary)
    spec = experiment.experiment_spec('consensus-omission', n=128, t=2)
    self.assertEqual('omission:random_drops', spec.adversary)

  def test_n_from_graph_file(self):
    spec = experiment.experiment_spec('check-graph', graph='test/k8.txt')
    self.assertEqual(8, spec.n)

  def test_skip_scope(self):
    spec = experiment.experiment_spec('consensus-crash', n=128, skip_scope='execution')
    self.assertEqual('execution', spec.skip_scope)

  def test_theory_preset_refuses(self):
    with self.assertRaises(ConfigError) as context:
      experiment.experiment_spec('consensus-crash', n=128, preset='theory')
    self.assertIn('theory', str(context.exception))
    with self.assertRaises(ConfigError):
      experiment.experiment_spec('llb', n=128, preset='theory')

  def test_invalid(self):
    invalid = [
        ('gossip', {'n': 16}),
        ('llb', {'n': 1, 'degree': 1}),
        ('llb', {'n': 16, 't': 16, 'degree': 4}),
        ('llb', {'n': 16, 'degree': 4, 'seeds': '5..3'}),
        ('llb', {'n': 16, 'degree': 4, 'inputs': 'half'}),
        ('llb', {'n': 16, 'degree': 4, 'preset': 'lab'}),
        ('llb', {'n': 16, 'degree': 4, 'colour': 'red'}),
        ('check-graph', {'n': 9, 'graph': 'test/k8.txt'}),
        ('consensus-crash', {'n': 128, 't': 2, 'adversary': 'omission:silence_inbound'}),
        ('consensus-omission', {'n': 128, 't': 2, 'adversary': 'crash:eclipse'}),
        ('consensus-crash', {'n': 128, 'skip_scope': 'forever'}),
        ('llb', {'n': 16, 't': 2, 'degree': 4, 'adversary': 'crash:random horiz=300'}),
        ('llb', {'n': 16, 't': 2, 'degree': 4, 'adversary': 'crash:meteor'}),
    ]
    for protocol, fields in invalid:
      with self.assertRaises(ConfigError, msg='{} {}'.format(protocol, fields)):
        experiment.experiment_spec(protocol, **fields)


class RunTest(unittest.TestCase):
  def test_check_graph_complete(self):
    spec = experiment.experiment_spec('check-graph', graph='test/k8.txt')
    result = experiment.run(spec, workers=1)
    self.assertEqual(1, len(result.rows))
    row = result.rows[0]
    self.assertAlmostEqual(8.0 / 7.0, row['lambda2'], delta=1e-8)
    self.assertEqual(1, row['certified'])
    self.assertEqual(0, row['rounds'])
    margins = result.verdicts[0][0].margins
    self.assertAlmostEqual(4.0 / 7.0, margins['cheeger_low'], delta=1e-8)

  def test_fault_free_llb_sandwich(self):
    spec = llb_spec(seeds='1..10')
    result = experiment.run(spec, workers=1)
    self.assertEqual(10, len(result.rows))
    for row, verdicts in zip(result.rows, result.verdicts):
      by_check = {v.check: v for v in verdicts}
      self.assertEqual(oracle.PASSED, by_check['sandwich'].status)
      self.assertEqual(oracle.PASSED, by_check['value_range'].status)
      self.assertEqual(32, row['active_count'])
      self.assertEqual(34 * 32 * 6, row['messages'])
      self.assertEqual(oracle.PASSED, by_check['budget'].status)
      self.assertEqual(1.0, by_check['budget'].margins['messages_ratio'])
    self.assertEqual(0, result.summary['hard_failures'])
    self.assertEqual(10, result.summary['checks']['sandwich'][oracle.PASSED])

  def test_deterministic(self):
    spec = llb_spec(t=2, adversary='crash:random horizon=30')
    first = report.dumps_csv(experiment.run(spec, workers=1))
    second = report.dumps_csv(experiment.run(spec, workers=1))
    self.assertEqual(first, second)

  def test_oracle_off(self):
    result = experiment.run(llb_spec(oracle=False), workers=1)
    self.assertEqual([[], [], []], result.verdicts)
    self.assertEqual('', result.rows[0]['verdicts'])

  def test_consensus_unanimous(self):
    result = experiment.run(consensus_spec(), workers=1)
    for row in result.rows:
      self.assertEqual(1, row['agreed'])
      self.assertEqual(1, row['valid'])
      self.assertEqual(1, row['decided_value'])
      self.assertEqual(64, row['active_count'])
    self.assertEqual(1.0, result.summary['success_rate'])

  def test_consensus_audits_every_call(self):
    result = experiment.run(consensus_spec(seeds='1', inputs='split'), workers=1)
    by_check = {v.check: v for v in result.verdicts[0]}
    for check in ('value_range', 'sandwich'):
      self.assertEqual(2, by_check[check].margins['calls'], check)
    self.assertEqual(oracle.PASSED, by_check['value_range'].status)
    self.assertFalse(by_check['sandwich'].margins['regular'])
    self.assertNotEqual(oracle.PRECONDITION_UNMET, by_check['sandwich'].status)
    self.assertEqual(oracle.PASSED, by_check['budget'].status)

  def test_count_fault_free(self):
    spec = experiment.experiment_spec('count', n=64, C2=6, tau1=60, tau2=10, inputs='split')
    result = experiment.run(spec, workers=1)
    row = result.rows[0]
    self.assertEqual(64, row['active_count'])
    self.assertEqual(0, row['error'])
    by_check = {v.check: v for v in result.verdicts[0]}
    self.assertEqual(oracle.PASSED, by_check['counting'].status)
    self.assertEqual(32, by_check['counting'].margins['truth'])
    self.assertEqual(64, by_check['counting'].margins['returned'])
    self.assertEqual(oracle.PASSED, by_check['budget'].status)

  def test_traces_written(self):
    with tempfile.TemporaryDirectory() as trace_dir:
      spec = llb_spec(seeds='2..3', trace_dir=trace_dir)
      experiment.run(spec, workers=1)
      self.assertEqual(['llb-seed2.jsonl', 'llb-seed3.jsonl'], sorted(os.listdir(trace_dir)))


class PlannedRoundsTest(unittest.TestCase):
  def test_matches_fault_free_runs(self):
    specs = [
        llb_spec(seeds='1'),
        consensus_spec(seeds='1'),
        consensus_spec('consensus-omission', seeds='1'),
        experiment.experiment_spec('count', n=64, C2=6, tau1=60, tau2=10),
    ]
    for spec in specs:
      row = experiment.run(spec, workers=1).rows[0]
      self.assertEqual(experiment.planned_rounds(spec), row['rounds'], spec.protocol)

  def test_random_crashes_span_the_run(self):
    with tempfile.TemporaryDirectory() as trace_dir:
      spec = consensus_spec(seeds='1', t=8, iterations=10, trace_dir=trace_dir)
      row = experiment.run(spec, workers=1).rows[0]
      trace = simnet.read_trace(experiment.trace_path(spec, 1))
    crash_rounds = [entry['round'] for entry in trace.rounds() if entry['crashed']]
    self.assertEqual(experiment.planned_rounds(spec), row['rounds'])
    self.assertGreater(row['rounds'], 600)
    self.assertGreater(max(crash_rounds), 100)


class ColumnsTest(unittest.TestCase):
  def test_result_columns_lead(self):
    self.assertEqual(
        ('seed', 'protocol', 'n', 't', 'adversary', 'agreed', 'valid', 'decided_value',
         'rounds', 'messages', 'bits', 'active_count'),
        experiment.COLUMNS[:12])


class ShapeVerdictsTest(unittest.TestCase):
  def reports(self, scale=None):
    scale = scale or {}
    reports = []
    for n in (64, 128, 256):
      rows = [{
          'rounds': 3.0 * oracle.SHAPES['rounds'](n) * scale.get(n, 1.0),
          'bits': 0.5 * oracle.SHAPES['bits'](n),
      }]
      reports.append(experiment.ExperimentReport(llb_spec(n=n), rows, [[]], {}))
    return reports

  def test_exact_shape(self):
    rounds, bits = experiment.shape_verdicts(self.reports())
    self.assertEqual(('rounds_shape', oracle.PASSED), (rounds.check, rounds.status))
    self.assertAlmostEqual(3.0, rounds.margins['constant'])
    self.assertEqual(('bits_shape', oracle.PASSED), (bits.check, bits.status))
    self.assertEqual([64, 128, 256], bits.margins['sizes'])

  def test_outlier(self):
    rounds, bits = experiment.shape_verdicts(self.reports({256: 8.0}))
    self.assertEqual(oracle.FAILED, rounds.status)
    self.assertEqual(256, rounds.first_violation['n'])
    self.assertEqual(oracle.PASSED, bits.status)


class WorkerCountTest(unittest.TestCase):
  def test_capped_by_seeds(self):
    self.assertEqual(2, experiment.worker_count(2, workers=8))

  def test_capped_by_environment(self):
    with mock.patch.dict(os.environ, {experiment.THREADS_ENV: '3'}):
      self.assertEqual(3, experiment.worker_count(10, workers=8))

  def test_invalid_environment(self):
    with mock.patch.dict(os.environ, {experiment.THREADS_ENV: 'many'}):
      with self.assertLogs(level='WARNING'):
        self.assertEqual(4, experiment.worker_count(10, workers=4))


if __name__ == '__main__':
  unittest.main()
