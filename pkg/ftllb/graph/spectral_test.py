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

import networkx as nx
import numpy as np

from ftllb.errors import DegenerateGraph

from . import random
from . import spectral
from .graph import Graph


class Lambda2Test(unittest.TestCase):
  def test_complete_graphs(self):
    for n in (4, 8, 64):
      report = spectral.lambda2(Graph.complete(n))
      self.assertAlmostEqual(n / (n - 1), report.lambda2, delta=1e-8)
      self.assertLessEqual(report.residual, spectral.DEFAULT_TOL)

  def test_cycle(self):
    self.assertAlmostEqual(1.0, spectral.lambda2(Graph.cycle(4)).lambda2, delta=1e-8)
    expected = 1 - math.cos(2 * math.pi / 9)
    self.assertAlmostEqual(expected, spectral.lambda2(Graph.cycle(9)).lambda2, delta=1e-8)

  def test_disconnected(self):
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    self.assertLessEqual(spectral.lambda2(g).lambda2, 1e-8)

  def test_isolated_node(self):
    with self.assertRaises(DegenerateGraph):
      spectral.lambda2(Graph(3, [(0, 1)]))

  def test_single_node(self):
    with self.assertRaises(DegenerateGraph):
      spectral.lambda2(Graph(1))

  def test_lanczos_matches_dense(self):
    rng = np.random.default_rng(3)
    g = random.sample_gnp(96, 0.3, rng)
    dense = spectral.lambda2(g, method='dense')
    lanczos = spectral.lambda2(g, method='lanczos')
    self.assertAlmostEqual(dense.lambda2, lanczos.lambda2, delta=1e-7)
    self.assertGreater(lanczos.iterations, 1)

  def test_matches_networkx(self):
    rng = np.random.default_rng(11)
    g = random.sample_gnp(40, 0.25, rng)
    values = np.sort(nx.normalized_laplacian_spectrum(g.to_networkx()))
    self.assertAlmostEqual(values[1], spectral.lambda2(g).lambda2, delta=1e-8)

  def test_unknown_method(self):
    with self.assertRaises(ValueError):
      spectral.lambda2(Graph.complete(4), method='power')


class RegularizedTest(unittest.TestCase):
  def test_regular_graph_unchanged(self):
    g = Graph.cycle(8)
    self.assertEqual([0] * 8, spectral.regularize(g, 2).tolist())
    self.assertAlmostEqual(
        spectral.lambda2(g).lambda2, spectral.lambda2_regularized(g, 2).lambda2)

  def test_loops_fill_degrees(self):
    g = Graph.path(4)
    self.assertEqual([2, 1, 1, 2], spectral.regularize(g, 3).tolist())

  def test_degree_above_d_max(self):
    with self.assertRaises(ValueError):
      spectral.regularize(Graph.complete(5), 3)

  def test_ideal_floor_holds_on_random_graphs(self):
    rng = np.random.default_rng(5)
    for _ in range(5):
      g = random.sample_gnp(64, 0.4, rng)
      d_min, d_max = int(g.degrees.min()), int(g.degrees.max())
      value = spectral.lambda2_regularized(g, d_max).lambda2
      self.assertGreaterEqual(value, spectral.ideal_lambda2_bound(d_min, d_max))

  def test_cheeger_bounds(self):
    low, high = spectral.cheeger_bounds(0.5)
    self.assertEqual(0.25, low)
    self.assertEqual(1.0, high)
