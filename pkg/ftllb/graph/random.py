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

import networkx as nx
import numpy as np

from .graph import Graph


def sample_gnp(n, p, rng):
  if n < 2:
    raise ValueError('need n >= 2, found {}'.format(n))
  if not 0 <= p <= 1:
    raise ValueError('p must be a probability, found {}'.format(p))
  u, v = np.triu_indices(n, 1)
  keep = rng.random(len(u)) < p
  return Graph(n, np.stack([u[keep], v[keep]], axis=1))


def regular_graph(n, d, rng):
  seed = int(rng.integers(2 ** 32))
  return Graph.from_networkx(nx.random_regular_graph(d, n, seed=seed))
