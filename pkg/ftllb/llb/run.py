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

from ftllb import simnet
from ftllb.graph import Graph

from .phases import Balancing
from .phases import FixOutliers

ACTIVE = 'active'
SILENT = 'silent'

NodeOutcome = collections.namedtuple('NodeOutcome', ['x', 'type'])

LLBResult = collections.namedtuple('LLBResult', [
    'x', 'active', 'silent', 'x0', 'participants', 'config', 'topology',
    'first_round', 'history', 'deliveries', 'live', 'omitted',
])


def fault_tolerant_llb(engine, topology, x0, cfg, participants=None, call=0):
  """Runs tau1 balancing rounds and tau2 FixOutliers rounds on `engine`.

  `history` holds the load vector before the first round and after every
  round of both loops; `deliveries` and `live` hold, per round, the delivered
  arc mask and the nodes not crashed by the end of that round.
  """
  n = engine.n
  if isinstance(topology, Graph):
    topology = simnet.Topology.from_graph(topology, _nodes(participants))
  participants = (np.ones(n, dtype=bool) if participants is None
                  else np.asarray(participants, dtype=bool))
  x0 = np.array(x0, dtype=float)
  if x0.shape != (n,):
    raise ValueError('expected {} initial loads, found {}'.format(n, x0.shape))

  engine.install(topology, 'llb')
  first_round = engine.round + 1
  engine.note('llb', call=call, first_round=first_round, x0=x0,
              participants=np.flatnonzero(participants), d_min=cfg.d_min,
              d_max=cfg.d_max, tau1=cfg.tau1, tau2=cfg.tau2)

  history = [x0.copy()]
  deliveries = []
  live = []
  missing = np.zeros(topology.num_arcs, dtype=bool)

  def run(step, rounds, label):
    for _ in range(rounds):
      result = engine.run_round(step, label)
      missing[~result.delivered] = True
      history.append(step.x.copy())
      deliveries.append(result.delivered)
      live.append(result.live)

  balancing = Balancing(x0, cfg.d_max, participants)
  run(balancing, cfg.tau1, 'balancing')
  fixing = FixOutliers(balancing.x, cfg.d_min, participants)
  run(fixing, cfg.tau2, 'fixing')

  alive = engine.live
  omitted = np.bincount(topology.dst[missing], minlength=n)
  active = participants & alive & ~fixing.silent
  return LLBResult(
      x=fixing.x,
      active=active,
      silent=participants & alive & fixing.silent,
      x0=x0,
      participants=participants,
      config=cfg,
      topology=topology,
      first_round=first_round,
      history=history,
      deliveries=deliveries,
      live=live,
      omitted=omitted,
  )


def fix_outliers(engine, topology, x0, cfg, participants=None):
  """FixOutliers alone; returns (x, silent)."""
  if isinstance(topology, Graph):
    topology = simnet.Topology.from_graph(topology, _nodes(participants))
  participants = (np.ones(engine.n, dtype=bool) if participants is None
                  else np.asarray(participants, dtype=bool))
  engine.install(topology, 'fixing')
  step = FixOutliers(x0, cfg.d_min, participants)
  for _ in range(cfg.tau2):
    engine.run_round(step, 'fixing')
  return step.x, step.silent


def outcomes(result):
  """Per-node NodeOutcome; None for nodes that crashed or did not take part."""
  nodes = []
  for v in range(len(result.x)):
    if result.active[v]:
      nodes.append(NodeOutcome(float(result.x[v]), ACTIVE))
    elif result.silent[v]:
      nodes.append(NodeOutcome(float(result.x[v]), SILENT))
    else:
      nodes.append(None)
  return nodes


def _nodes(participants):
  if participants is None:
    return None
  return np.flatnonzero(np.asarray(participants, dtype=bool))
