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

from . import sets

CoreSubgraphResult = collections.namedtuple(
    'CoreSubgraphResult', ['removed', 'retained', 'phi', 'steps', 'order'])


def core_subgraph(g, f, phi, d_min):
  """Grows W from F by one vertex per step until every vertex outside W has
  at least phi * d_min neighbors outside W.

  The lowest-index qualifying vertex is added first; `order` lists the added
  vertices after F in the order they joined.
  """
  if not 0 < phi < 1:
    raise ValueError('phi must be within (0, 1), found {}'.format(phi))
  removed = sets.membership(g, f)
  threshold = phi * d_min

  u, v = g.edge_arrays
  outside = np.bincount(np.concatenate([u[~removed[v]], v[~removed[u]]]),
                        minlength=g.n)
  adjacency = g.adjacency

  order = []
  while True:
    candidates = np.flatnonzero(~removed & (outside < threshold))
    if not len(candidates):
      break
    w = int(candidates[0])
    removed[w] = True
    order.append(w)
    for x in adjacency[w]:
      outside[x] -= 1

  return CoreSubgraphResult(
      removed=frozenset(np.flatnonzero(removed).tolist()),
      retained=frozenset(np.flatnonzero(~removed).tolist()),
      phi=phi,
      steps=len(order),
      order=tuple(order),
  )


def core_size_bound(f_size):
  return int(math.ceil(1.5 * f_size))


def core_alpha(phi, d_min, d_max):
  ratio = d_min / d_max
  return (1 - phi) * 40.0 / 27.0 * ratio ** 2 - 2.0 / 9.0 * ratio


def core_precondition(f_size, n, phi, d_min, d_max):
  """(holds, alpha) where holds means |F| < alpha * n for an admissible alpha."""
  alpha = min(core_alpha(phi, d_min, d_max), 1.0)
  return bool(alpha > 0 and f_size < alpha * n), alpha
