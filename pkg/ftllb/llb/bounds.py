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

import collections

import numpy as np

LLBBounds = collections.namedtuple('LLBBounds', [
    'ratio', 'active_4_81', 'active_40_81', 'active_4_81_holds',
    'active_40_81_holds', 'f', 'epsilon', 'epsilon_holds', 'remainder',
    'remainder_holds', 'ideal_lambda2',
])


def llb_bounds(d_min, d_max, n, t, tau1, epsilon=None):
  """Numerical preconditions of the load balancing guarantees for one instance.

  The active-set bound is evaluated with both the 4/81 and the 40/81
  coefficient; `epsilon` defaults to the smallest admissible accuracy that is
  at least 2/n.
  """
  r = d_min / d_max
  active_4_81 = (4.0 / 81.0 * r ** 2 - 2.0 / 9.0 * r) * n
  active_40_81 = (40.0 / 81.0 * r ** 2 - 2.0 / 9.0 * r) * n
  f = (1.0 - (d_max + 1.0) / (2.0 * d_min)) * (40.0 / 27.0 * r ** 2 - 2.0 / 9.0 * r)

  if epsilon is None:
    if f > 0:
      smallest = 3.0 * tau1 * t / (n * f)
      epsilon = max(2.0 / n, float(np.nextafter(smallest, np.inf)) if t else 0.0)
    else:
      epsilon = float('inf')
  epsilon_holds = bool(f > 0 and epsilon <= 1 and t < epsilon / (3.0 * tau1) * n * f)
  remainder = 2.0 * r * epsilon * n / 81.0

  return LLBBounds(
      ratio=r,
      active_4_81=active_4_81,
      active_40_81=active_40_81,
      active_4_81_holds=bool(t < active_4_81),
      active_40_81_holds=bool(t < active_40_81),
      f=f,
      epsilon=epsilon,
      epsilon_holds=epsilon_holds,
      remainder=remainder,
      remainder_holds=bool(t < remainder),
      ideal_lambda2=r ** 2 / 8.0,
  )
