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


def membership(g, w):
  mask = np.zeros(g.n, dtype=bool)
  w = list(w)
  if w:
    w = np.asarray(w, dtype=np.int64)
    if w.min() < 0 or w.max() >= g.n:
      raise ValueError('node set has indices outside [0, {})'.format(g.n))
    mask[w] = True
  return mask


def internal_edges(g, w):
  mask = membership(g, w)
  u, v = g.edge_arrays
  return int(np.count_nonzero(mask[u] & mask[v]))


def boundary_edges(g, w):
  mask = membership(g, w)
  u, v = g.edge_arrays
  return int(np.count_nonzero(mask[u] != mask[v]))


def volume(g, w):
  return int(g.degrees[membership(g, w)].sum())


def edge_density_bound(g, w, lambda2):
  if not 0 <= lambda2 <= 2:
    raise ValueError('lambda2 must be within [0, 2], found {}'.format(lambda2))
  vol_g = 2 * g.num_edges
  vol_w = volume(g, w)
  if vol_g == 0:
    return 0.0
  return 0.5 * vol_w * (1.0 - lambda2 * (1.0 - vol_w / vol_g))


def check_edge_density(g, w, lambda2, tol=1e-9):
  """Returns (holds, internal, bound) for E(W) <= edge_density_bound."""
  internal = internal_edges(g, w)
  bound = edge_density_bound(g, w, lambda2)
  return internal <= bound + tol, internal, bound
