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

import numpy as np


def llb_update(x_self, received, d_max):
  total = 0.0
  for value in received:
    total += value
  count = len(received)
  denom = max(2.0 * d_max, count)
  return total / denom + (denom - count) / denom * x_self


def llb_step(x, sums, counts, d_max):
  """Vectorised llb_update with the same arithmetic order."""
  denom = np.maximum(2.0 * d_max, counts)
  return sums / denom + (denom - counts) / denom * x


def median(values):
  values = sorted(values)
  if not values:
    raise ValueError('median of an empty list')
  mid = len(values) // 2
  return 0.5 * (values[(len(values) - 1) // 2] + values[mid])
