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

from ftllb.errors import InvalidDensity

from . import random
from . import wellconnected
from .graph import Graph


class CheckWellConnectedTest(unittest.TestCase):
  def test_complete_graph_passes(self):
    params = wellconnected.WellConnectedParams(7, 7, 0.9)
    verdict = wellconnected.check_well_connected(Graph.complete(8), params)
    self.assertTrue(verdict.passed)
    self.assertAlmostEqual(8 / 7, verdict.value, delta=1e-8)

  def test_path_fails_lambda2(self):
    params = wellconnected.WellConnectedParams(1, 2, 0.9)
    verdict = wellconnected.check_well_connected(Graph.path(8), params)
    self.assertFalse(verdict.passed)
    self.assertEqual('lambda2', verdict.clause)
    self.assertLess(verdict.value, 0.9)

  def test_complete_graph_fails_degree(self):
    params = wellconnected.WellConnectedParams(8, 8, 0.9)
    verdict = wellconnected.check_well_connected(Graph.complete(8), params)
    self.assertFalse(verdict.passed)
    self.assertEqual('degree', verdict.clause)
    self.assertEqual(7, verdict.value)
    self.assertIsNone(verdict.report)

  def test_degree_above_window(self):
    params = wellconnected.WellConnectedParams(1, 2, 0.0)
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    verdict = wellconnected.check_well_connected(g, params)
    self.assertEqual(('degree', 3, 0), (verdict.clause, verdict.value, verdict.node))


class ParamsTest(unittest.TestCase):
  def test_default_floor(self):
    params = wellconnected.well_connected_params(3, 5, n=1024)
    expected = 1 - 1 / (10 * np.log(np.log(1024)))
    self.assertAlmostEqual(expected, params.lambda2_floor)

  def test_default_floor_tiny_n(self):
    self.assertEqual(0.0, wellconnected.default_lambda2_floor(2))

  def test_invalid_window(self):
    with self.assertRaises(ValueError):
      wellconnected.well_connected_params(5, 3, 0.5)
    with self.assertRaises(ValueError):
      wellconnected.well_connected_params(3, 5, 2.5)
    with self.assertRaises(ValueError):
      wellconnected.well_connected_params(3, 5)

  def test_observed_params(self):
    params = wellconnected.observed_params(Graph.path(5), 0.1)
    self.assertEqual((1, 2, 0.1), tuple(params))


class GnpParamsTest(unittest.TestCase):
  def test_window_contains_expected_degree(self):
    p, params = wellconnected.gnp_params(1024, 2)
    self.assertLess(params.d_min, p * 1023)
    self.assertGreater(params.d_max, p * 1023)

  def test_density_above_one(self):
    with self.assertRaises(InvalidDensity):
      wellconnected.gnp_params(64, 3200)

  def test_sampled_graphs_certify(self):
    rng = np.random.default_rng(1)
    p, _ = wellconnected.gnp_params(1024, 30)
    passed = 0
    for _ in range(3):
      g = random.sample_gnp(1024, p, rng)
      verdict = wellconnected.check_well_connected(
          g, wellconnected.observed_params(g))
      passed += verdict.passed
    self.assertEqual(3, passed)
