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

import math
import unittest

import numpy as np

from ftllb import simnet
from ftllb import util
from ftllb.graph import Graph

from . import config
from .set_graph import set_graph


def engine_for(n, seed=0, adversary=None):
  return simnet.RoundEngine(n, adversary, streams=util.Streams(seed, n))


class SetGraphTest(unittest.TestCase):
  def test_density_one_is_complete(self):
    n = 16
    cfg = config.set_graph_config(n, (n - 1) / (math.log(n) * util.loglog(n) ** 2))
    result = set_graph(engine_for(n), cfg)
    self.assertEqual(Graph.complete(n), result.graph)

  def test_one_round_one_message_per_sampled_port(self):
    engine = engine_for(64, seed=3)
    result = set_graph(engine, config.set_graph_config(64, 2))
    self.assertEqual(1, engine.round)
    self.assertEqual(result.sampled.num_arcs, engine.messages)
    self.assertTrue(result.delivered.all())

  def test_edge_probability(self):
    n, seeds = 256, 100
    cfg = config.set_graph_config(n, 4)
    edges = 0
    for seed in range(seeds):
      edges += set_graph(engine_for(n, seed), cfg).graph.num_edges
    trials = seeds * n * (n - 1) // 2
    sigma = math.sqrt(cfg.q * (1 - cfg.q) / trials)
    self.assertLessEqual(abs(edges / trials - cfg.q), 3 * sigma)

  def test_same_seed_same_graph(self):
    cfg = config.set_graph_config(64, 2)
    a = set_graph(engine_for(64, 11), cfg).graph
    b = set_graph(engine_for(64, 11), cfg).graph
    self.assertEqual(a, b)

  def test_node_crashed_in_handshake(self):
    script = {1: {'fault': [3], 'drop_from': [3]}}
    engine = engine_for(32, 1, simnet.ScriptedAdversary('crash', 1, script))
    g = set_graph(engine, config.set_graph_config(32, 3)).graph
    self.assertEqual(0, g.degree(3))
    self.assertTrue(all(3 not in g.neighbors(v) for v in range(32)))

  def test_non_participants_have_no_ports(self):
    participants = np.ones(32, dtype=bool)
    participants[[0, 5]] = False
    g = set_graph(engine_for(32, 2), config.set_graph_config(32, 3), participants).graph
    self.assertEqual([0, 0], [g.degree(0), g.degree(5)])
    self.assertGreater(g.num_edges, 0)


if __name__ == '__main__':
  unittest.main()
