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

from hypothesis import given
from hypothesis import strategies as st
import numpy as np

from . import update

loads = st.floats(min_value=0, max_value=1, allow_nan=False)


class LLBUpdateTest(unittest.TestCase):
  def test_equal_inputs(self):
    self.assertAlmostEqual(0.3, update.llb_update(0.3, [0.3] * 4, 4), places=12)

  def test_single_neighbor(self):
    self.assertEqual(0.75, update.llb_update(1.0, [0.0], 2))

  def test_nothing_received(self):
    self.assertEqual(0.5, update.llb_update(0.5, [], 7))

  def test_coefficients_sum_to_one(self):
    for d_max in (1, 3, 7, 100):
      for count in range(d_max + 1):
        self.assertLessEqual(abs(update.llb_update(1.0, [1.0] * count, d_max) - 1), 1e-12)

  @given(loads, st.lists(loads, max_size=12), st.integers(min_value=6, max_value=20))
  def test_convex_combination(self, x_self, received, d_max):
    result = update.llb_update(x_self, received, d_max)
    values = [x_self] + received
    self.assertGreaterEqual(result, min(values) - 1e-12)
    self.assertLessEqual(result, max(values) + 1e-12)

  def test_vectorised_step_matches(self):
    rng = np.random.default_rng(3)
    x = rng.random(5)
    received = [rng.random(k).tolist() for k in range(5)]
    sums = np.array([sum(r) for r in received])
    counts = np.array([len(r) for r in received])
    step = update.llb_step(x, sums, counts, 4)
    for v in range(5):
      self.assertAlmostEqual(update.llb_update(x[v], received[v], 4), step[v], places=12)


class MedianTest(unittest.TestCase):
  def test_odd(self):
    self.assertEqual(2, update.median([3, 1, 2]))

  def test_even(self):
    self.assertEqual(2.5, update.median([4, 1, 3, 2]))

  def test_empty(self):
    with self.assertRaises(ValueError):
      update.median([])

  @given(st.lists(loads, min_size=1, max_size=30))
  def test_within_range(self, values):
    result = update.median(values)
    self.assertGreaterEqual(result, min(values))
    self.assertLessEqual(result, max(values))


if __name__ == '__main__':
  unittest.main()
