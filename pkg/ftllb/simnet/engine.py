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

from ftllb import util
from ftllb.errors import BudgetExceeded

from . import adversary as adversaries
from .adversary import View
from .topology import Inbox

WORD_BITS = 64

RoundResult = collections.namedtuple('RoundResult', [
    'round', 'label', 'inbox', 'delivered', 'produced', 'newly_faulted', 'live',
])


class RoundEngine(object):
  """Synchronous message-passing engine shared by every protocol phase.

  Each round runs in a fixed order: the step produces its outbox, the
  adversary sees the whole state and decides, deliveries are made and only
  then do nodes update their state.
  """

  def __init__(self, n, adversary=None, streams=None, trace=None, record_loads=False):
    self.n = n
    self.adversary = adversary or adversaries.NullAdversary()
    self.streams = streams or util.Streams(0, n)
    self.trace = trace
    self.record_loads = record_loads
    self.round = 0
    self.crashed = np.zeros(n, dtype=bool)
    self.faulted = np.zeros(n, dtype=bool)
    self.messages = 0
    self.dropped = 0
    self.bits = 0
    self.topology = None
    self.version = -1

  @property
  def live(self):
    return ~self.crashed

  def install(self, topology, label=None):
    if topology.n != self.n:
      raise ValueError('topology has {} nodes, engine has {}'.format(topology.n, self.n))
    self.topology = topology
    self.version += 1
    if self.trace is not None:
      self.trace.add_topology(self.version, topology)
    return self.version

  def note(self, kind, **fields):
    if self.trace is not None:
      self.trace.note(kind, **fields)

  def run_round(self, step, label=None):
    if self.topology is None:
      raise RuntimeError('no topology installed')
    top = self.topology
    r = self.round + 1

    out = step.send(self)
    sending = out.sending & ~self.crashed
    produced = sending[top.src]
    state = step.state()

    view = View(
        round=r,
        label=label,
        topology=top,
        outbox=out,
        produced=produced,
        state=state,
        crashed=self.crashed.copy(),
        faulted=self.faulted.copy(),
        budget_left=self.adversary.budget - int(self.faulted.sum()),
    )
    decision = self.adversary.decide(view)
    newly, drop = self._validate(decision, top)

    crashed = self.crashed
    if self.adversary.kind == 'crash':
      crashed = crashed.copy()
      crashed[newly] = True
    delivered = produced & ~drop & ~crashed[top.dst]
    if out.listening is not None:
      delivered &= np.asarray(out.listening, dtype=bool)[top.dst]

    self.faulted[newly] = True
    self.crashed = crashed
    inbox = Inbox(top, out, delivered)
    step.receive(inbox, ~crashed)

    sent = int(produced.sum())
    lost = sent - int(delivered.sum())
    self.messages += sent
    self.dropped += lost
    self.bits += sent * out.words * WORD_BITS
    self.round = r

    if self.trace is not None:
      state = step.state()
      loads = state.get('x') if self.record_loads else None
      self.trace.add_round({
          'round': r,
          'label': label,
          'topology': self.version,
          'faulted': newly,
          'crashed': newly if self.adversary.kind == 'crash' else [],
          'messages_sent': sent,
          'messages_dropped': lost,
          'per_node_digest': util.digest(*[state[k] for k in sorted(state)]),
      }, ~sending, np.flatnonzero(produced & ~delivered), loads)

    return RoundResult(r, label, inbox, delivered, produced, newly, ~crashed)

  def _validate(self, decision, top):
    newly = sorted(int(v) for v in decision.newly_faulted)
    if len(set(newly)) != len(newly):
      raise BudgetExceeded('round {}: a node is faulted twice'.format(self.round + 1))
    if any(v < 0 or v >= self.n for v in newly):
      raise BudgetExceeded('round {}: faulted node out of range'.format(self.round + 1))
    if any(self.faulted[v] for v in newly):
      raise BudgetExceeded('round {}: node already faulted'.format(self.round + 1))
    total = int(self.faulted.sum()) + len(newly)
    if total > self.adversary.budget:
      raise BudgetExceeded('round {}: {} faulty nodes exceed budget t={}'.format(
          self.round + 1, total, self.adversary.budget))

    drop = decision.drop
    if drop is None:
      drop = np.zeros(top.num_arcs, dtype=bool)
    drop = np.asarray(drop, dtype=bool)
    if drop.shape != (top.num_arcs,):
      raise BudgetExceeded('round {}: drop mask has shape {}, expected ({},)'.format(
          self.round + 1, drop.shape, top.num_arcs))

    faulted = self.faulted.copy()
    faulted[newly] = True
    if self.adversary.kind == 'crash':
      crashing = np.zeros(self.n, dtype=bool)
      crashing[newly] = True
      allowed = crashing[top.src] | self.crashed[top.src] | faulted[top.dst]
    else:
      allowed = faulted[top.src] | faulted[top.dst]
    if np.any(drop & ~allowed):
      arc = int(np.flatnonzero(drop & ~allowed)[0])
      raise BudgetExceeded('round {}: message {} -> {} dropped between correct nodes'.format(
          self.round + 1, int(top.src[arc]), int(top.dst[arc])))
    return newly, drop
