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

from ftllb.errors import ConfigError

DeliveryDecision = collections.namedtuple('DeliveryDecision', ['newly_faulted', 'drop'])

# Read-only snapshot handed to the adversary before deliveries are decided.
View = collections.namedtuple('View', [
    'round', 'label', 'topology', 'outbox', 'produced', 'state',
    'crashed', 'faulted', 'budget_left',
])

CRASH_STRATEGIES = ('random', 'targeted_extreme', 'eclipse')
OMISSION_STRATEGIES = ('random_drops', 'partition_flicker', 'silence_inbound')


def no_faults(view):
  return DeliveryDecision([], np.zeros(view.topology.num_arcs, dtype=bool))


class Adversary(object):
  kind = 'none'
  strategy = None

  def __init__(self, budget, rng=None):
    self.budget = budget
    self.rng = rng if rng is not None else np.random.default_rng(0)

  def decide(self, view):
    return no_faults(view)

  def describe(self):
    if self.kind == 'none':
      return 'none'
    return '{}:{} t={}'.format(self.kind, self.strategy, self.budget)


class NullAdversary(Adversary):
  def __init__(self):
    super().__init__(0)


class ScriptedAdversary(Adversary):
  """Replays a fixed script: {round: {'fault': [...], 'drop': [(src, dst), ...],
  'drop_from': [...], 'drop_to': [...], 'deliver_to': {node: [dst, ...]}}}.

  `deliver_to` restricts the messages of a node crashing that round to the
  listed receivers.
  """

  def __init__(self, kind, budget, script):
    super().__init__(budget)
    if kind not in ('crash', 'omission'):
      raise ValueError('unknown adversary kind {}'.format(repr(kind)))
    self.kind = kind
    self.strategy = 'scripted'
    self.script = script

  def decide(self, view):
    entry = self.script.get(view.round, {})
    top = view.topology
    drop = top.mask(p for p in entry.get('drop', []) if _has_arc(top, p))
    for v in entry.get('drop_from', []):
      drop |= top.src == v
    for v in entry.get('drop_to', []):
      drop |= top.dst == v
    for v, receivers in entry.get('deliver_to', {}).items():
      drop |= (top.src == int(v)) & ~np.isin(top.dst, receivers)
    return DeliveryDecision(list(entry.get('fault', [])), drop)


def _has_arc(topology, pair):
  try:
    topology.index([pair[0]], [pair[1]])
    return True
  except KeyError:
    return False


class CrashAdversary(Adversary):
  kind = 'crash'

  def _live(self, view):
    return np.flatnonzero(~view.crashed)

  def _crash(self, view, nodes, delivered_fraction=None, deliver=None):
    """Crashes `nodes`; their messages of this round reach a subset of ports."""
    top = view.topology
    drop = np.zeros(top.num_arcs, dtype=bool)
    for v in nodes:
      out = np.flatnonzero(top.src == v)
      if deliver == 'lower_half':
        out = out[np.argsort(top.dst[out], kind='stable')]
        lost = out[len(out) // 2:]
      elif deliver == 'none':
        lost = out
      else:
        lost = out[self.rng.random(len(out)) >= delivered_fraction]
      drop[lost] = True
    return DeliveryDecision(list(nodes), drop)


class RandomCrash(CrashAdversary):
  """Crashes uniformly random live nodes at uniformly random rounds."""

  strategy = 'random'

  def __init__(self, budget, rng=None, horizon=100, deliver_probability=0.5):
    super().__init__(budget, rng)
    self.horizon = int(horizon)
    self.deliver_probability = deliver_probability
    self.schedule = collections.Counter(
        self.rng.integers(1, self.horizon + 1, size=budget).tolist())

  def decide(self, view):
    due = min(self.schedule.get(view.round, 0), view.budget_left)
    live = self._live(view)
    if not due or not len(live):
      return no_faults(view)
    nodes = self.rng.choice(live, size=min(due, len(live)), replace=False)
    return self._crash(view, sorted(nodes.tolist()), self.deliver_probability)


class TargetedExtremeCrash(CrashAdversary):
  """Crashes the live node whose load is farthest from the live mean."""

  strategy = 'targeted_extreme'

  def __init__(self, budget, rng=None, start=1, interval=1):
    super().__init__(budget, rng)
    self.start = int(start)
    self.interval = max(1, int(interval))

  def decide(self, view):
    if (view.budget_left <= 0 or view.round < self.start
        or (view.round - self.start) % self.interval):
      return no_faults(view)
    live = self._live(view)
    if not len(live):
      return no_faults(view)
    loads = (view.state or {}).get('x')
    if loads is None:
      target = int(self.rng.choice(live))
    else:
      loads = np.asarray(loads, dtype=float)[live]
      target = int(live[np.argmax(np.abs(loads - loads.mean()))])
    return self._crash(view, [target], deliver='lower_half')


class EclipseCrash(CrashAdversary):
  """Crashes the neighbours of one victim, one per round."""

  strategy = 'eclipse'

  def __init__(self, budget, rng=None, victim=None):
    super().__init__(budget, rng)
    self.victim = victim

  def decide(self, view):
    if view.budget_left <= 0:
      return no_faults(view)
    if self.victim is None:
      self.victim = int(self.rng.choice(self._live(view)))
    neighbours = [u for u in view.topology.ports(self.victim)
                  if not view.crashed[u] and u != self.victim]
    if not neighbours:
      return no_faults(view)
    return self._crash(view, [neighbours[0]], deliver='none')


class OmissionAdversary(Adversary):
  kind = 'omission'

  def __init__(self, budget, rng=None, targets=None):
    super().__init__(budget, rng)
    if isinstance(targets, int):
      targets = [targets]
    self.targets = targets

  def _choose(self, view):
    if self.targets is None:
      n = len(view.crashed)
      self.targets = sorted(self.rng.choice(n, size=min(self.budget, n), replace=False).tolist())
      return list(self.targets)
    if not np.any(view.faulted):
      return list(self.targets)
    return []

  def _incident(self, view):
    faulted = np.zeros(len(view.crashed), dtype=bool)
    faulted[self.targets] = True
    top = view.topology
    return faulted, faulted[top.src] | faulted[top.dst]


class RandomDrops(OmissionAdversary):
  strategy = 'random_drops'

  def __init__(self, budget, rng=None, targets=None, p=0.5):
    super().__init__(budget, rng, targets)
    self.p = p

  def decide(self, view):
    newly = self._choose(view)
    _, incident = self._incident(view)
    drop = incident & (self.rng.random(view.topology.num_arcs) < self.p)
    return DeliveryDecision(newly, drop)


class PartitionFlicker(OmissionAdversary):
  """Drops every message crossing the cut around the faulty set, on
  alternating rounds only."""

  strategy = 'partition_flicker'

  def __init__(self, budget, rng=None, targets=None, period=2):
    super().__init__(budget, rng, targets)
    self.period = max(2, int(period))

  def decide(self, view):
    newly = self._choose(view)
    faulted, _ = self._incident(view)
    top = view.topology
    drop = np.zeros(top.num_arcs, dtype=bool)
    if view.round % self.period == 1:
      drop = faulted[top.src] != faulted[top.dst]
    return DeliveryDecision(newly, drop)


class SilenceInbound(OmissionAdversary):
  strategy = 'silence_inbound'

  def decide(self, view):
    newly = self._choose(view)
    faulted, _ = self._incident(view)
    return DeliveryDecision(newly, faulted[view.topology.dst])


def crash_adversary(strategy, budget, rng, **options):
  if budget == 0:
    return NullAdversary()
  cls = {
      'random': RandomCrash,
      'targeted_extreme': TargetedExtremeCrash,
      'eclipse': EclipseCrash,
  }.get(strategy)
  if cls is None:
    raise ValueError('unknown crash strategy {}, expected one of {}'.format(
        repr(strategy), ', '.join(CRASH_STRATEGIES)))
  return cls(budget, rng, **options)


def omission_adversary(strategy, budget, rng, **options):
  if budget == 0:
    return NullAdversary()
  cls = {
      'random_drops': RandomDrops,
      'partition_flicker': PartitionFlicker,
      'silence_inbound': SilenceInbound,
  }.get(strategy)
  if cls is None:
    raise ValueError('unknown omission strategy {}, expected one of {}'.format(
        repr(strategy), ', '.join(OMISSION_STRATEGIES)))
  return cls(budget, rng, **options)


def make_adversary(spec, budget, rng, n=None, rounds=None):
  """Builds an adversary from a parsed "kind:strategy key=value" spec.

  `rounds` is the planned length of the run; random crashes are spread over
  it unless the spec sets its own horizon.
  """
  kind = spec.get('kind', 'none')
  options = dict(spec.get('options') or {})
  if kind == 'none' or budget == 0:
    return NullAdversary()
  if n is not None and budget > n:
    raise ValueError('budget {} exceeds n={}'.format(budget, n))
  factory = {'crash': crash_adversary, 'omission': omission_adversary}[kind]
  strategy = spec.get('strategy') or ('random' if kind == 'crash' else 'random_drops')
  if rounds and factory is crash_adversary and strategy == 'random':
    options.setdefault('horizon', rounds)
  try:
    return factory(strategy, budget, rng, **options)
  except TypeError as e:
    raise ConfigError('invalid options {} for {}:{}: {}'.format(options, kind, strategy, e))
