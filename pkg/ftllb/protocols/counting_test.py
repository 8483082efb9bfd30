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

from ftllb import simnet
from ftllb import util

from . import counting

N = 64
C2 = 6


def count(flags, seed=0, adversary=None):
  engine = simnet.RoundEngine(N, adversary, streams=util.Streams(seed, N))
  return counting.ae_counting(engine, flags, C2, tau1=60, tau2=10), engine


class AECountingTest(unittest.TestCase):
  def test_no_flags(self):
    result, _ = count(np.zeros(N))
    self.assertEqual([0] * N, result.counts)

  def test_all_flags(self):
    result, _ = count(np.ones(N))
    self.assertEqual([N] * N, result.counts)

  def test_fault_free_quarter(self):
    flags = np.zeros(N, dtype=bool)
    flags[::4] = True
    result, engine = count(flags, seed=4)
    self.assertEqual([16] * N, result.counts)
    self.assertEqual(1 + 60 + 10, engine.round)

  def test_degree_window(self):
    set_cfg, cfg = counting.counting_config(N, C2, tau1=1, tau2=1)
    self.assertAlmostEqual(0.75 * set_cfg.q * (N - 1), cfg.d_min)
    self.assertAlmostEqual(1.25 * cfg.d_min, cfg.d_max)

  def test_random_crashes(self):
    t = 4
    flags = np.zeros(N, dtype=bool)
    flags[:16] = True
    streams = util.Streams(9, N)
    adv = simnet.crash_adversary('random', t, streams.adversary, horizon=30)
    engine = simnet.RoundEngine(N, adv, streams=streams)
    result = counting.ae_counting(engine, flags, C2, tau1=60, tau2=10)
    close = [c for c in result.counts if c is not None and abs(c - 16) <= 3 * t]
    self.assertGreaterEqual(len(close), N - 3 * t)
    for v in np.flatnonzero(engine.crashed):
      self.assertIsNone(result.counts[v])


if __name__ == '__main__':
  unittest.main()
