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
from ftllb.errors import TraceMismatch
from ftllb.graph import Graph
from ftllb.simnet import trace as traces

from . import checks
from . import runs


def traced_run(record_loads=True, adversary=None, x0=(0.2, 0.4, 0.6, 0.8), cfg=None):
  trace = simnet.Trace(4)
  engine = simnet.RoundEngine(4, adversary, trace=trace, record_loads=record_loads)
  result = llb.fault_tolerant_llb(engine, Graph.complete(4), list(x0),
                                  cfg or llb.LLBConfig(3, 3, 5, 3, 4))
  return traces.loads(trace.dumps()), result


class FromTraceTest(unittest.TestCase):
  def test_rebuilds_call(self):
    trace, result = traced_run()
    run = runs.from_trace(trace)
    self.assertEqual(result.config, run.config)
    self.assertEqual(1, run.first_round)
    for expected, actual in zip(result.history, run.history):
      np.testing.assert_array_equal(expected, actual)
    for expected, actual in zip(result.deliveries, run.deliveries):
      np.testing.assert_array_equal(expected, actual)
    self.assertTrue(checks.sandwich_check(run).passed)

  def test_needs_loads(self):
    trace, _ = traced_run(record_loads=False)
    with self.assertRaises(TraceMismatch):
      runs.from_trace(trace)

  def test_unknown_call(self):
    trace, _ = traced_run()
    with self.assertRaises(TraceMismatch):
      runs.from_trace(trace, call=4)


class SilentMasksTest(unittest.TestCase):
  def test_replays_silencing(self):
    script = {r: {'drop_to': [0]} for r in range(1, 4)}
    script[1]['fault'] = [0]
    adversary = simnet.ScriptedAdversary('omission', 1, script)
    trace, result = traced_run(adversary=adversary, cfg=llb.LLBConfig(3, 3, 0, 3, 4))
    run = runs.from_trace(trace)
    masks = runs.silent_masks(run)
    self.assertEqual(3, len(masks))
    np.testing.assert_array_equal(result.silent, masks[-1])
    np.testing.assert_array_equal(result.active, runs.final_active(run))


if __name__ == '__main__':
  unittest.main()
