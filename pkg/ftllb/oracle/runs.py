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

from ftllb.errors import TraceMismatch
from ftllb.llb import LLBConfig
from ftllb.llb.phases import SILENT_FRACTION

# One load balancing call as the audits see it: `history` has tau1 + tau2 + 1
# load vectors, `deliveries` and `live` one entry per round.
LLBRun = collections.namedtuple('LLBRun', [
    'x0', 'history', 'deliveries', 'live', 'topology', 'config', 'participants',
    'first_round',
])


def from_result(result):
  return LLBRun(
      x0=np.asarray(result.x0, dtype=float),
      history=list(result.history),
      deliveries=list(result.deliveries),
      live=list(result.live),
      topology=result.topology,
      config=result.config,
      participants=np.asarray(result.participants, dtype=bool),
      first_round=result.first_round,
  )


def from_trace(trace, call=0):
  """Rebuilds a load balancing call from a trace recorded with loads."""
  notes = [note for note in trace.notes('llb') if note.get('call', 0) == call]
  if not notes:
    raise TraceMismatch('trace has no load balancing call {}'.format(call))
  note = notes[0]
  cfg = LLBConfig(note['d_min'], note['d_max'], int(note['tau1']), int(note['tau2']), trace.n)
  first = int(note['first_round'])
  by_round = {entry['round']: entry for entry in trace.rounds()}
  numbers = range(first, first + cfg.tau1 + cfg.tau2)
  missing = [r for r in numbers if r not in by_round]
  if missing:
    raise TraceMismatch('load balancing call {} is missing round {}'.format(call, missing[0]))

  entries = [by_round[r] for r in numbers]
  loads = [trace.loads(entry) for entry in entries]
  if any(x is None for x in loads):
    raise TraceMismatch('trace was recorded without loads')
  live_masks = trace.live_masks()
  participants = np.zeros(trace.n, dtype=bool)
  participants[np.asarray(note['participants'], dtype=np.int64)] = True
  x0 = np.asarray(note['x0'], dtype=float)

  return LLBRun(
      x0=x0,
      history=[x0] + [np.asarray(x, dtype=float) for x in loads],
      deliveries=[trace.delivered(entry) for entry in entries],
      live=[live_masks[r] for r in numbers],
      topology=trace.topology(entries[0]) if entries else None,
      config=cfg,
      participants=participants,
      first_round=first,
  )


def silent_masks(run):
  """Silent nodes after each FixOutliers round, replayed from the deliveries."""
  cfg = run.config
  top = run.topology
  silent = np.zeros(len(run.x0), dtype=bool)
  masks = []
  for i in range(cfg.tau1, cfg.tau1 + cfg.tau2):
    delivered = run.deliveries[i]
    counts = np.bincount(top.dst[delivered], minlength=len(run.x0))
    listening = run.participants & run.live[i] & ~silent
    silent = silent | (listening & (counts < SILENT_FRACTION * cfg.d_min))
    masks.append(silent.copy())
  return masks


def final_active(run):
  live = run.live[-1] if run.live else np.ones(len(run.x0), dtype=bool)
  masks = silent_masks(run)
  silent = masks[-1] if masks else np.zeros(len(run.x0), dtype=bool)
  return run.participants & live & ~silent


def mean_load(run):
  return float(run.x0[run.participants].mean())
