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

import unittest

import numpy as np

from ftllb import llb
from ftllb import simnet
from ftllb.graph import Graph

from . import checks
from . import runs
from .processes_test import regular_run


def k8_run():
  x0 = np.zeros(8)
  x0[0] = 1
  engine = simnet.RoundEngine(8)
  result = llb.fault_tolerant_llb(engine, Graph.complete(8), x0, llb.derive_config(7, 7, 8))
  return runs.from_result(result)


class SandwichCheckTest(unittest.TestCase):
  def test_fault_free_regular(self):
    run, _ = regular_run(6)
    verdict = checks.sandwich_check(run)
    self.assertEqual('passed', verdict.status)
    self.assertTrue(verdict.margins['regular'])

  def test_crash_strategies(self):
    for strategy in ('random', 'targeted_extreme', 'eclipse'):
      for seed in range(10):
        run, _ = regular_run(seed, n=48, d=8, t=4, strategy=strategy)
        self.assertFalse(run.live[-1].all(), strategy)
        verdict = checks.sandwich_check(run)
        self.assertEqual('passed', verdict.status, (strategy, seed, verdict.first_violation))
        self.assertTrue(verdict.margins['ideal'])

  def test_unrecorded_drop_is_caught(self):
    script = {1: {'fault': [0], 'drop': [(0, 1)]}}
    engine = simnet.RoundEngine(4, simnet.ScriptedAdversary('omission', 1, script))
    result = llb.fault_tolerant_llb(engine, Graph.complete(4), [1, 0, 0, 0],
                                    llb.LLBConfig(3, 3, 2, 0, 4))
    run = runs.from_result(result)
    self.assertEqual('passed', checks.sandwich_check(run).status)

    corrupted = run._replace(deliveries=[np.ones_like(d) for d in run.deliveries])
    verdict = checks.sandwich_check(corrupted)
    self.assertEqual('failed', verdict.status)
    self.assertEqual(1, verdict.first_violation['round'])
    self.assertEqual(1, verdict.first_violation['node'])


class ValueRangeCheckTest(unittest.TestCase):
  def test_passes(self):
    self.assertTrue(checks.value_range_check(k8_run()).passed)

  def test_detects_escape(self):
    run = k8_run()
    history = list(run.history)
    history[3] = history[3].copy()
    history[3][5] = 1.5
    verdict = checks.value_range_check(run._replace(history=history))
    self.assertEqual({'round': 3, 'node': 5}, {k: verdict.first_violation[k] for k in ('round', 'node')})


class RemainderShrinkageCheckTest(unittest.TestCase):
  def test_fault_free(self):
    run = k8_run()
    verdict = checks.remainder_shrinkage_check(run, 0)
    self.assertEqual('passed', verdict.status)
    self.assertEqual([0] * (run.config.tau2 + 1), verdict.margins['sizes'])

  def test_precondition_unmet(self):
    verdict = checks.remainder_shrinkage_check(k8_run(), 3)
    self.assertEqual('precondition_unmet', verdict.status)
    self.assertTrue(verdict.passed)

  def test_sizes_count_unconverged_nodes(self):
    run = k8_run()
    history = list(run.history)
    history[run.config.tau1] = history[run.config.tau1].copy()
    history[run.config.tau1][2] = 0.9
    sizes = checks.remainder_sizes(run._replace(history=history), 0.25)
    self.assertEqual(1, sizes[0])
    self.assertEqual(0, sizes[1])


class ActiveSetCheckTest(unittest.TestCase):
  def test_fault_free(self):
    verdict = checks.active_set_check(k8_run(), 0)
    self.assertEqual('passed', verdict.status)
    self.assertFalse(verdict.margins['form_4_81'])
    self.assertTrue(verdict.margins['form_40_81'])
    self.assertEqual(8, verdict.margins['active'])

  def test_crashes(self):
    run, _ = regular_run(7, n=64, d=10, t=2)
    verdict = checks.active_set_check(run, 2)
    self.assertEqual('passed', verdict.status)
    self.assertGreaterEqual(verdict.margins['active'], 61)
    self.assertFalse(verdict.margins['accuracy_applies'])


class CountingCheckTest(unittest.TestCase):
  cfg = llb.LLBConfig(40, 50, 200, 8, 64)

  def test_exact_counts(self):
    verdict = checks.counting_check([20] * 64, 20, 0, self.cfg)
    self.assertEqual('passed', verdict.status)
    self.assertEqual(64, verdict.margins['returned'])
    self.assertTrue(verdict.margins['accuracy_applies'])
    self.assertAlmostEqual(2.0, verdict.margins['tolerance'])

  def test_too_few_returned(self):
    counts = [20] * 52 + [None] * 12
    verdict = checks.counting_check(counts, 20, 3, self.cfg)
    self.assertEqual('failed', verdict.status)
    self.assertEqual({'returned': 52, 'required': 55}, verdict.first_violation)

  def test_deviation_beyond_tolerance(self):
    counts = [20] * 64
    counts[9] = 26
    verdict = checks.counting_check(counts, 20, 0, self.cfg)
    self.assertEqual('failed', verdict.status)
    self.assertEqual(9, verdict.first_violation['node'])
    self.assertEqual(6, verdict.margins['max_deviation'])


if __name__ == '__main__':
  unittest.main()
