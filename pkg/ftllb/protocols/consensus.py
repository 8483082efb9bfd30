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

from ftllb import llb
from ftllb import simnet

from .config import decide_threshold
from .set_graph import set_graph

IterationRecord = collections.namedtuple('IterationRecord', [
    'iteration', 'first_round', 'last_round', 'participants', 'b_in', 'mu',
    'active', 'faults', 'b_out',
])

ConsensusResult = collections.namedtuple('ConsensusResult', [
    'decisions', 'inputs', 'correct', 'records', 'boundaries', 'inquirers',
    'answered', 'withdrawn', 'g_star', 'config',
])

Boundary = collections.namedtuple('Boundary', ['iteration', 'b', 'active'])


class Dissemination(object):
  """Spreads (mu, active) pairs over G*; a node hearing too few messages skips
  the rest of the loop."""

  def __init__(self, mu, status, participants, threshold):
    self.mu = np.array(mu, dtype=float)
    self.status = np.array(status, dtype=bool)
    self.participants = participants
    self.threshold = threshold
    self.skipped = np.zeros(len(self.mu), dtype=bool)

  def send(self, engine):
    return simnet.outbox(self.mu, self.participants & ~self.skipped,
                         flags=self.status, words=2)

  def state(self):
    return {'x': self.mu, 'status': self.status, 'skipped': self.skipped}

  def receive(self, inbox, live):
    listening = self.participants & live & ~self.skipped
    few = listening & (inbox.counts < self.threshold)
    self.skipped = self.skipped | few
    values, found = inbox.first()
    adopt = listening & ~few & found
    self.mu = np.where(adopt, values, self.mu)
    self.status = self.status | adopt


class Exchange(object):
  """A single multicast of the current bits."""

  def __init__(self, b, sending):
    self.b = b
    self.sending = sending

  def send(self, engine):
    return simnet.outbox(self.b.astype(float), self.sending)

  def state(self):
    return {'x': self.b}

  def receive(self, inbox, live):
    pass


def decide_all(b, mu, margin, deciding, streams):
  b = b.copy()
  for v in np.flatnonzero(deciding):
    b[v] = decide_threshold(mu[v], margin, streams.node(v))
  return b


def inquire(engine, b, inquirers, responders, count):
  """Inquirers ask `count` distinct random processes and adopt the response
  on their lowest port. Returns (b, answered)."""
  n = engine.n
  k = min(count, n - 1)
  inquirers = inquirers & engine.live
  src, dst = [], []
  for v in np.flatnonzero(inquirers):
    picks = engine.streams.node(v).choice(n - 1, size=k, replace=False)
    dst.append(picks + (picks >= v))
    src.append(np.full(k, v))
  asks = (simnet.Topology(n, np.concatenate(src), np.concatenate(dst)) if src
          else simnet.Topology(n))

  engine.install(asks, 'inquiry')
  asked = engine.run_round(Exchange(b, inquirers), 'inquiry')
  engine.install(asks.reversed(asked.delivered), 'response')
  replied = engine.run_round(Exchange(b, responders & engine.live), 'response')

  values, found = replied.inbox.first(flagged=False)
  answered = inquirers & found & engine.live
  b = b.copy()
  b[answered] = values[answered].astype(b.dtype)
  return b, answered


def _inputs(inputs, n):
  b = np.asarray(inputs, dtype=np.int64)
  if b.shape != (n,) or np.any((b != 0) & (b != 1)):
    raise ValueError('inputs must be {} bits'.format(n))
  return b.copy()


def _boundary(engine, iteration, b, active):
  engine.note('boundary', iteration=iteration, round=engine.round, b=b,
              active=np.flatnonzero(active))
  return Boundary(iteration, b.copy(), active.copy())


def consensus_crash(engine, inputs, cfg, on_llb=None):
  """Consensus against crashes: G* once, then per iteration a fresh graph,
  load balancing, dissemination over G* and the threshold decision.

  Nodes that ever skipped dissemination inquire at the end; the others
  respond. With skip_scope='execution' a node that skips also withdraws from
  every later iteration. `on_llb` is called with every LLBResult.
  """
  n = engine.n
  b = _inputs(inputs, n)
  x0 = b.copy()
  engine.note('consensus', mode='crash', inputs=b, iterations=cfg.iterations,
              dissemination_rounds=cfg.dissemination_rounds,
              margin=cfg.threshold_margin, skip_scope=cfg.skip_scope)

  g_star = set_graph(engine, cfg.set_graph, loads=b.astype(float)).graph
  star = simnet.Topology.from_graph(g_star)
  skipped = np.zeros(n, dtype=bool)
  withdrawn = np.zeros(n, dtype=bool)
  records, boundaries = [], []

  for i in range(1, cfg.iterations + 1):
    first_round = engine.round + 1
    faulted = int(engine.faulted.sum())
    participants = engine.live & ~withdrawn
    b_in = b.copy()

    g = set_graph(engine, cfg.set_graph, participants, loads=b.astype(float)).graph
    result = llb.fault_tolerant_llb(engine, g, b.astype(float), cfg.llb,
                                    participants, call=i)
    if on_llb is not None:
      on_llb(result)
    engine.install(star, 'dissemination')
    spread = Dissemination(result.x, result.active, participants & engine.live,
                           cfg.skip_threshold)
    for _ in range(cfg.dissemination_rounds):
      engine.run_round(spread, 'dissemination')

    skipped |= spread.skipped
    if cfg.skip_scope == 'execution':
      withdrawn |= spread.skipped
    deciding = participants & engine.live
    b = decide_all(b, spread.mu, cfg.threshold_margin, deciding, engine.streams)

    records.append(IterationRecord(
        iteration=i,
        first_round=first_round,
        last_round=engine.round,
        participants=participants,
        b_in=b_in,
        mu=spread.mu,
        active=deciding & spread.status,
        faults=int(engine.faulted.sum()) - faulted,
        b_out=b.copy(),
    ))
    boundaries.append(_boundary(engine, i, b, engine.live & ~skipped))

  inquirers = skipped & engine.live
  if inquirers.any():
    logging.info('{} nodes skipped dissemination and inquire'.format(int(inquirers.sum())))
  b, answered = inquire(engine, b, inquirers, ~skipped, cfg.inquiry_count)
  return ConsensusResult(
      decisions=b,
      inputs=x0,
      correct=engine.live,
      records=records,
      boundaries=boundaries,
      inquirers=inquirers,
      answered=answered,
      withdrawn=skipped,
      g_star=g_star,
      config=cfg,
  )


def consensus_omission(engine, inputs, cfg, on_llb=None):
  """Consensus against omissions. A node that saw any link fail during load
  balancing turns suspected, stops sampling and communicating, and inquires
  at the end; active nodes respond."""
  n = engine.n
  b = _inputs(inputs, n)
  x0 = b.copy()
  engine.note('consensus', mode='omission', inputs=b, iterations=cfg.iterations,
              margin=cfg.threshold_margin)

  suspected = np.zeros(n, dtype=bool)
  records, boundaries = [], []

  for i in range(1, cfg.iterations + 1):
    first_round = engine.round + 1
    faulted = int(engine.faulted.sum())
    participants = ~suspected
    b_in = b.copy()

    g = set_graph(engine, cfg.set_graph, participants, loads=b.astype(float)).graph
    result = llb.fault_tolerant_llb(engine, g, b.astype(float), cfg.llb,
                                    participants, call=i)
    if on_llb is not None:
      on_llb(result)
    suspected = suspected | (participants & (result.omitted > 0))
    b = decide_all(b, result.x, cfg.threshold_margin, participants, engine.streams)

    records.append(IterationRecord(
        iteration=i,
        first_round=first_round,
        last_round=engine.round,
        participants=participants,
        b_in=b_in,
        mu=result.x,
        active=participants & ~suspected & result.active,
        faults=int(engine.faulted.sum()) - faulted,
        b_out=b.copy(),
    ))
    boundaries.append(_boundary(engine, i, b, ~suspected))

  if suspected.sum() > cfg.suspected_bound:
    logging.warning('{} suspected nodes exceed the bound {:.1f}'.format(
        int(suspected.sum()), cfg.suspected_bound))
  b, answered = inquire(engine, b, suspected, ~suspected, cfg.inquiry_count)
  return ConsensusResult(
      decisions=b,
      inputs=x0,
      correct=~engine.faulted,
      records=records,
      boundaries=boundaries,
      inquirers=suspected.copy(),
      answered=answered,
      withdrawn=suspected,
      g_star=None,
      config=cfg,
  )


def run_consensus(engine, inputs, cfg, on_llb=None):
  if cfg.mode == 'crash':
    return consensus_crash(engine, inputs, cfg, on_llb)
  return consensus_omission(engine, inputs, cfg, on_llb)
