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

import networkx as nx
import numpy as np

from .verdict import verdict

Reach = collections.namedtuple('Reach', ['rounds', 'reached'])


def _boundary(boundary, n=None):
  """(iteration, b, active mask) from a Boundary or a trace note."""
  if isinstance(boundary, dict):
    iteration, b, active = boundary['iteration'], boundary['b'], boundary['active']
  else:
    iteration, b, active = boundary
  b = np.asarray(b, dtype=np.int64)
  active = np.asarray(active)
  if active.dtype != bool:
    mask = np.zeros(len(b) if n is None else n, dtype=bool)
    mask[active.astype(np.int64)] = True
    active = mask
  return iteration, b, active


def agreement_persistence_check(boundaries):
  """Once every active node holds the same bit at an iteration boundary, they
  hold that bit at every later boundary."""
  agreed = None
  since = None
  for boundary in boundaries:
    iteration, b, active = _boundary(boundary)
    values = set(b[active].tolist())
    if not values:
      continue
    if agreed is None:
      if len(values) == 1:
        agreed, since = values.pop(), iteration
    elif values != {agreed}:
      return verdict('agreement_persistence', {
          'iteration': iteration, 'agreed': agreed, 'since': since,
          'values': sorted(values)})
  return verdict('agreement_persistence', margins={'agreed': agreed, 'since': since})


def agreement_check(decisions, correct):
  values = sorted(set(np.asarray(decisions)[np.asarray(correct, dtype=bool)].tolist()))
  violation = None if len(values) <= 1 else {'values': values}
  return verdict('agreement', violation, {'values': values})


def validity_check(inputs, decisions, correct, boundaries=()):
  """Every decision is some input; with unanimous inputs no other bit ever
  appears at an iteration boundary."""
  inputs = np.asarray(inputs)
  decisions = np.asarray(decisions)[np.asarray(correct, dtype=bool)]
  allowed = set(inputs.tolist())
  for value in decisions.tolist():
    if value not in allowed:
      return verdict('validity', {'decision': value, 'inputs': sorted(allowed)})
  if len(allowed) == 1:
    value = allowed.pop()
    for boundary in boundaries:
      iteration, b, _ = _boundary(boundary)
      if np.any(b != value):
        return verdict('validity', {'iteration': iteration, 'node': int(np.argmax(b != value))})
  return verdict('validity', margins={'inputs': sorted(set(inputs.tolist()))})


def safe_iteration_check(records, cfg):
  """In iterations with at most the safe number of new faults, every node
  holding an active load is within the threshold margin of the true mean."""
  checked = 0
  worst = 0.0
  for record in records:
    if record.faults > cfg.safe_budget:
      continue
    checked += 1
    if not record.participants.any() or not record.active.any():
      continue
    truth = float(record.b_in[record.participants].mean())
    errors = np.abs(np.asarray(record.mu)[record.active] - truth)
    worst = max(worst, float(errors.max()))
    if errors.max() > cfg.threshold_margin:
      v = int(np.flatnonzero(record.active)[np.argmax(errors)])
      return verdict('safe_iteration', {
          'iteration': record.iteration, 'node': v, 'mu': record.mu[v], 'truth': truth,
          'margin': cfg.threshold_margin})
  return verdict('safe_iteration', margins={
      'checked': checked, 'worst_error': worst, 'margin': cfg.threshold_margin,
      'safe_budget': cfg.safe_budget}, precondition=checked > 0)


def suspected_bound_check(result):
  cfg = result.config
  count = int(result.withdrawn.sum())
  violation = None
  if count > cfg.suspected_bound:
    violation = {'suspected': count, 'bound': cfg.suspected_bound}
  return verdict('suspected_bound', violation, {'suspected': count, 'bound': cfg.suspected_bound})


def dissemination_reach(g_star, source, rounds=None):
  """Rounds a pair injected at `source` needs to reach every node of a
  fault-free G*, flooding one hop per round; None if some node is never
  reached."""
  distances = nx.single_source_shortest_path_length(g_star.to_networkx(), source)
  needed = max(distances.values()) if len(distances) == g_star.n else None
  reached = needed is not None and (rounds is None or needed <= rounds)
  return Reach(needed, reached)
