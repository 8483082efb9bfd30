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
import logging
import math

from ftllb import util
from ftllb.errors import InvalidRatio

LLBConfig = collections.namedtuple('LLBConfig', ['d_min', 'd_max', 'tau1', 'tau2', 'n'])

# Shrink factor of the outlier set per FixOutliers round in the regular case.
FALLBACK_RHO = 14.0 / 15.0


def shrink_factor(d_min, d_max):
  return 34.0 / 15.0 - 4.0 * d_min / (3.0 * d_max)


def derive_config(d_min, d_max, n, strict=True, tau1=None, tau2=None):
  """Round counts of both loops from the degree window and n.

  tau1 = ceil(32 (d_max / d_min)^2 ln n) and tau2 = ceil(ln n / ln(1 / rho)),
  rho = 34/15 - 4 d_min / (3 d_max). With strict=False a ratio rho >= 1 falls
  back to ceil(ln n / ln(15/14)) + 1 rounds instead of raising.
  """
  if not 0 < d_min <= d_max:
    raise ValueError('need 0 < d_min <= d_max, found ({}, {})'.format(d_min, d_max))
  if n < 1:
    raise ValueError('need n >= 1, found {}'.format(n))

  log_n = math.log(n)
  if tau1 is None:
    tau1 = util.ceil(32.0 * (d_max / d_min) ** 2 * log_n)
  if tau2 is None:
    rho = shrink_factor(d_min, d_max)
    if rho < 1:
      tau2 = util.ceil(log_n / math.log(1.0 / rho))
    elif strict:
      raise InvalidRatio(
          'rho = 34/15 - 4 d_min / (3 d_max) = {:.4f} >= 1 for d_min/d_max = {:.4f}; '
          'FixOutliers needs d_min/d_max > 19/20'.format(rho, d_min / d_max))
    else:
      tau2 = util.ceil(log_n / math.log(1.0 / FALLBACK_RHO)) + 1
      logging.warning('d_min/d_max = {:.4f} gives rho = {:.4f} >= 1, '
                      'using tau2 = {}'.format(d_min / d_max, rho, tau2))
  return LLBConfig(d_min, d_max, int(tau1), int(tau2), n)
