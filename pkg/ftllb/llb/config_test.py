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

from ftllb.errors import InvalidRatio

from . import config


class DeriveConfigTest(unittest.TestCase):
  def test_regular_round_counts(self):
    cfg = config.derive_config(10, 10, math.exp(32))
    self.assertEqual(1024, cfg.tau1)
    self.assertAlmostEqual(14 / 15, config.shrink_factor(10, 10))

  def test_two_nodes(self):
    cfg = config.derive_config(1, 1, 2)
    self.assertEqual(23, cfg.tau1)
    self.assertEqual(11, cfg.tau2)

  def test_ratio_too_small(self):
    with self.assertRaises(InvalidRatio):
      config.derive_config(9, 10, 100)

  def test_fallback_rounds(self):
    with self.assertLogs(level='WARNING'):
      cfg = config.derive_config(9, 10, 2, strict=False)
    self.assertEqual(12, cfg.tau2)

  def test_overrides(self):
    cfg = config.derive_config(9, 10, 100, tau1=5, tau2=3)
    self.assertEqual((5, 3), (cfg.tau1, cfg.tau2))

  def test_invalid_window(self):
    with self.assertRaises(ValueError):
      config.derive_config(5, 4, 100)
    with self.assertRaises(ValueError):
      config.derive_config(0, 4, 100)


if __name__ == '__main__':
  unittest.main()
