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
import math

import numpy as np

from ftllb import util
from ftllb.errors import InvalidDensity

from . import spectral

WellConnectedParams = collections.namedtuple(
    'WellConnectedParams', ['d_min', 'd_max', 'lambda2_floor'])

Verdict = collections.namedtuple(
    'Verdict', ['passed', 'clause', 'value', 'node', 'report'])


def default_lambda2_floor(n):
  # Natural logarithm; callers wanting another base pass lambda2_floor.
  if n < 3:
    return 0.0
  return float(np.clip(1.0 - 1.0 / (10.0 * util.loglog(n)), 0.0, 2.0))


def well_connected_params(d_min, d_max, lambda2_floor=None, n=None):
  if lambda2_floor is None:
    if n is None:
      raise ValueError('either lambda2_floor or n is required')
    lambda2_floor = default_lambda2_floor(n)
  if not 0 < d_min <= d_max:
    raise ValueError('need 0 < d_min <= d_max, found ({}, {})'.format(d_min, d_max))
  if not 0 <= lambda2_floor <= 2:
    raise ValueError('lambda2_floor must be within [0, 2], found {}'.format(lambda2_floor))
  return WellConnectedParams(d_min, d_max, lambda2_floor)


def observed_params(g, lambda2_floor=None):
  """Params whose degree window is the graph's own degree range."""
  degrees = g.degrees
  return well_connected_params(
      int(degrees.min()), int(degrees.max()), lambda2_floor, n=g.n)


def check_well_connected(g, params, tol=spectral.DEFAULT_TOL):
  degrees = g.degrees
  low = int(np.argmin(degrees))
  high = int(np.argmax(degrees))
  if degrees[low] < params.d_min:
    return Verdict(False, 'degree', int(degrees[low]), low, None)
  if degrees[high] > params.d_max:
    return Verdict(False, 'degree', int(degrees[high]), high, None)

  report = spectral.lambda2(g, tol)
  if report.lambda2 < params.lambda2_floor:
    return Verdict(False, 'lambda2', report.lambda2, None, report)
  return Verdict(True, None, report.lambda2, None, report)


def gnp_params(n, C):
  """Edge probability and degree window of the random-graph regime.

  p = C ln n (ln ln n)^2 / (n - 1), degrees within p (n - 1)(1 +- 1/(20 ln ln n)).
  """
  ll = util.loglog(n)
  p = C * math.log(n) * ll ** 2 / (n - 1)
  if p > 1:
    raise InvalidDensity(
        'C={} gives edge probability {:.3f} > 1 at n={}; '
        'use a smaller constant or a larger n'.format(C, p, n))
  d = p * (n - 1)
  slack = 1.0 / (20.0 * ll)
  return p, well_connected_params(d * (1 - slack), d * (1 + slack), n=n)
