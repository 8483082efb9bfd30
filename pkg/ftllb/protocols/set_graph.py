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

SetGraphResult = collections.namedtuple('SetGraphResult', ['graph', 'sampled', 'delivered'])


class Handshake(object):
  """One round of dummy messages over the sampled arcs."""

  def __init__(self, participants, loads=None):
    self.participants = participants
    self.loads = loads

  def send(self, engine):
    return simnet.outbox(np.zeros(engine.n), self.participants)

  def state(self):
    return {} if self.loads is None else {'x': self.loads}

  def receive(self, inbox, live):
    pass


def sample_ports(streams, cfg, participants):
  """Each participant draws every other participant independently with
  probability p from its own stream."""
  n = cfg.n
  src, dst = [], []
  others = np.arange(n)
  for v in np.flatnonzero(participants):
    draws = streams.node(v).random(n) < cfg.p
    draws &= participants & (others != v)
    chosen = np.flatnonzero(draws)
    src.append(np.full(len(chosen), v))
    dst.append(chosen)
  if not src:
    return simnet.Topology(n)
  return simnet.Topology(n, np.concatenate(src), np.concatenate(dst))


def set_graph(engine, cfg, participants=None, loads=None):
  """Samples ports and runs the handshake round; a link exists iff at least one
  of its two handshake messages was delivered."""
  if participants is None:
    participants = np.ones(engine.n, dtype=bool)
  participants = np.asarray(participants, dtype=bool) & engine.live
  sampled = sample_ports(engine.streams, cfg, participants)
  engine.install(sampled, 'set_graph')
  result = engine.run_round(Handshake(participants, loads), 'set_graph')
  graph = Graph(engine.n, sampled.pairs(result.delivered))
  return SetGraphResult(graph, sampled, result.delivered)
