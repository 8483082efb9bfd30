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

from ftllb import llb

from .config import set_graph_config
from .set_graph import set_graph

# Degree window passed to every node: d_min = 3/4 q (n - 1), d_max = gamma d_min.
DEGREE_FRACTION = 0.75
GAMMA = 1.25

CountingResult = collections.namedtuple('CountingResult', ['counts', 'graph', 'llb'])


def counting_config(n, C2, tau1=None, tau2=None):
  set_cfg = set_graph_config(n, C2)
  d_min = DEGREE_FRACTION * set_cfg.q * (n - 1)
  return set_cfg, llb.derive_config(d_min, GAMMA * d_min, n, strict=False,
                                    tau1=tau1, tau2=tau2)


def ae_counting(engine, flags, C2, tau1=None, tau2=None):
  """Almost-everywhere counting of raised flags.

  Nodes that finish load balancing active return round(n mu), ties to even;
  every other entry of `counts` is None.
  """
  n = engine.n
  flags = np.asarray(flags, dtype=bool)
  set_cfg, cfg = counting_config(n, C2, tau1, tau2)
  g = set_graph(engine, set_cfg).graph
  result = llb.fault_tolerant_llb(engine, g, flags.astype(float), cfg,
                                  participants=engine.live)
  estimates = np.rint(n * result.x).astype(int)
  counts = [int(estimates[v]) if result.active[v] else None for v in range(n)]
  return CountingResult(counts, g, result)
