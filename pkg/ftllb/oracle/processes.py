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

import numpy as np

from ftllb.errors import TraceMismatch
from ftllb.graph import regularize
from ftllb.llb import llb_step

from .runs import mean_load

OracleRun = collections.namedtuple('OracleRun', ['x_ideal', 'x_zero', 'x_one', 'mu'])


def ideal_run(g, x0, d_max, tau1):
  """Load balancing on g with self-loops raising every degree to d_max.

  Every round applies the update rule of the simulator to all nodes at once.
  Returns a (tau1 + 1, n) array.
  """
  regularize(g, d_max)
  adjacency = g.adjacency_matrix()
  degrees = np.asarray(g.degrees, dtype=float)
  x = np.array(x0, dtype=float)
  rounds = [x]
  for _ in range(tau1):
    x = llb_step(x, adjacency @ x, degrees, d_max)
    rounds.append(x)
  rounds = np.array(rounds).reshape(tau1 + 1, g.n)

  drift = np.max(np.abs(rounds.sum(axis=1) - rounds[0].sum()))
  if drift > g.n * (tau1 + 1) * np.finfo(float).eps * max(1.0, np.abs(rounds[0]).sum()):
    logging.warning('ideal load balancing lost mass: drift {:.3e}'.format(drift))
  return rounds


def skewed_runs(deliveries, topology, x0, d_min, d_max, tau1):
  """Replays the delivered senders of each balancing round through the
  processes skewed toward 0 (missing loads count as 0) and toward 1."""
  if len(deliveries) != tau1:
    raise TraceMismatch('expected {} balancing rounds, found {}'.format(tau1, len(deliveries)))
  n = len(x0)
  x_zero = np.array(x0, dtype=float)
  x_one = np.array(x0, dtype=float)
  zeros, ones = [x_zero], [x_one]
  for delivered in deliveries:
    src = topology.src[delivered]
    dst = topology.dst[delivered]
    counts = np.bincount(dst, minlength=n)
    x_zero = np.bincount(dst, weights=x_zero[src], minlength=n) / (2.0 * d_max) + 0.5 * x_zero
    x_one = (np.bincount(dst, weights=x_one[src], minlength=n) / (2.0 * d_max) + 0.5 * x_one
             + (d_min - counts) / (2.0 * d_max))
    zeros.append(x_zero)
    ones.append(x_one)
  return np.array(zeros), np.array(ones)


def reference_run(run):
  """The skewed processes of a call, and the ideal one when no degree exceeds
  d_max; `x_ideal` is None otherwise."""
  cfg = run.config
  balancing = run.deliveries[:cfg.tau1]
  x_zero, x_one = skewed_runs(balancing, run.topology, run.x0, cfg.d_min, cfg.d_max, cfg.tau1)
  g = run.topology.to_graph()
  x_ideal = None
  if g.degrees.max(initial=0) <= cfg.d_max:
    x_ideal = ideal_run(g, run.x0, cfg.d_max, cfg.tau1)
  return OracleRun(x_ideal, x_zero, x_one, mean_load(run))
