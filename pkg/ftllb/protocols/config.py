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

from ftllb import util
from ftllb.errors import ConfigError
from ftllb.errors import InvalidDensity
from ftllb.llb import derive_config

# Slack on q = 1 for float noise in the logarithms.
DENSITY_SLACK = 1e-12

SKIP_SCOPES = ('iteration', 'execution')

SetGraphConfig = collections.namedtuple('SetGraphConfig', ['n', 'C2', 'q', 'p'])

ConsensusConfig = collections.namedtuple('ConsensusConfig', [
    'mode', 'n', 't', 'C1', 'C2', 'iterations', 'dissemination_rounds',
    'threshold_margin', 'inquiry_count', 'skip_scope', 'set_graph', 'd_star',
    'd_star_min', 'skip_threshold', 'safe_budget', 'suspected_bound', 'llb',
])


def set_graph_config(n, C2):
  """Sampling probability p solving 2p - p^2 = C2 ln n (ln ln n)^2 / (n - 1)."""
  if n < 3:
    raise ValueError('need n >= 3 for ln ln n > 0, found {}'.format(n))
  q = C2 * math.log(n) * util.loglog(n) ** 2 / (n - 1)
  if q > 1 + DENSITY_SLACK:
    raise InvalidDensity(
        'C2={} gives edge probability q={:.4f} > 1 at n={}'.format(C2, q, n))
  q = min(q, 1.0)
  return SetGraphConfig(n, C2, q, 1.0 - math.sqrt(1.0 - q))


def degree_window(set_cfg):
  """Expected degree window of a sampled graph, d (1 -+ 1 / (20 ln ln n)) with
  d = q n; nodes only know n, not how many processes take part."""
  d = set_cfg.q * set_cfg.n
  spread = 1.0 / (20.0 * util.loglog(set_cfg.n))
  return d * (1.0 - spread), d * (1.0 + spread)


def consensus_config(mode, n, t=0, C1=4, C2=8, iterations=None,
                     dissemination_rounds=None, tau1=None, tau2=None,
                     skip_scope='iteration'):
  if mode not in ('crash', 'omission'):
    raise ConfigError('unknown consensus mode {}'.format(repr(mode)))
  if skip_scope not in SKIP_SCOPES:
    raise ConfigError('skip scope must be one of {}, found {}'.format(
        ', '.join(SKIP_SCOPES), repr(skip_scope)))
  if t < 0 or t >= n:
    raise ConfigError('need 0 <= t < n, found t={}'.format(t))

  set_cfg = set_graph_config(n, C2)
  log_n = math.log(n)
  log_log_n = util.loglog(n)
  d_star = C2 * log_n * log_log_n ** 2
  d_star_min = d_star * (1.0 - 1.0 / (20.0 * log_log_n))

  if mode == 'crash':
    default_iterations = util.ceil(C1 * math.sqrt(n * log_n))
    margin = math.sqrt(log_n / n) / 40.0
    inquiry_count = util.ceil(10.0 * log_n)
    safe_budget = math.sqrt(n / log_n) / C1
  else:
    default_iterations = util.ceil(2.0 * C1 * max(t * log_n / math.sqrt(n), log_n))
    margin = math.sqrt(log_n / n) / 12.0
    inquiry_count = util.ceil(11.0 * d_star * t) + 1
    safe_budget = math.sqrt(n) / (C1 * log_n)

  d_min, d_max = degree_window(set_cfg)
  llb = derive_config(d_min, d_max, n, strict=False, tau1=tau1, tau2=tau2)

  return ConsensusConfig(
      mode=mode,
      n=n,
      t=t,
      C1=C1,
      C2=C2,
      iterations=default_iterations if iterations is None else int(iterations),
      dissemination_rounds=(40 * util.ceil(log_n) + 1 if dissemination_rounds is None
                            else int(dissemination_rounds)),
      threshold_margin=margin,
      inquiry_count=inquiry_count,
      skip_scope=skip_scope,
      set_graph=set_cfg,
      d_star=d_star,
      d_star_min=d_star_min,
      skip_threshold=d_star_min / 5.0,
      safe_budget=safe_budget,
      suspected_bound=10.0 * d_star * t,
      llb=llb,
  )


def decide_threshold(mu, margin, coin):
  """0 below 1/2 - margin, 1 above 1/2 + margin, a fair coin in between."""
  if mu < 0.5 - margin:
    return 0
  if mu > 0.5 + margin:
    return 1
  return int(coin.integers(2))
