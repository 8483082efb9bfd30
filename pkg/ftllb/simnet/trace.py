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

import json

import numpy as np

from ftllb import util
from ftllb.errors import MalformedTrace

from .topology import Topology

TRACE_FORMAT = 'ftllb-trace'
TRACE_VERSION = 1


class Trace(object):
  """Round-by-round record of one run: topologies, deliveries and notes.

  Rounds keep just enough to rebuild every delivered mask exactly: the nodes
  that produced nothing (`idle`) and the produced messages that were lost.
  """

  def __init__(self, n, meta=None):
    self.n = n
    self.meta = dict(meta or {})
    self.entries = []
    self.topologies = {}

  def add_topology(self, version, topology):
    self.topologies[version] = topology
    self.entries.append({'type': 'topology', 'version': version})

  def add_round(self, entry, idle, lost, loads=None):
    entry = dict(entry, type='round')
    entry['_idle'] = np.asarray(idle, dtype=bool)
    entry['_lost'] = np.asarray(lost, dtype=np.int64)
    if loads is not None:
      entry['_loads'] = np.array(loads, dtype=float)
    self.entries.append(entry)
    return entry

  def note(self, kind, **fields):
    entry = dict(fields, type=kind)
    self.entries.append(entry)
    return entry

  def rounds(self):
    return [entry for entry in self.entries if entry['type'] == 'round']

  def notes(self, kind):
    return [entry for entry in self.entries if entry['type'] == kind]

  def topology(self, entry):
    return self.topologies[entry['topology']]

  def delivered(self, entry):
    top = self.topology(entry)
    delivered = ~entry['_idle'][top.src]
    delivered[entry['_lost']] = False
    return delivered

  def loads(self, entry):
    return entry.get('_loads')

  def live_masks(self):
    """Per round, the nodes that were not crashed by the end of that round."""
    crashed = np.zeros(self.n, dtype=bool)
    masks = {}
    for entry in self.rounds():
      crashed[entry.get('crashed', [])] = True
      masks[entry['round']] = ~crashed.copy()
    return masks

  def records(self):
    yield {
        'type': 'header',
        'format': TRACE_FORMAT,
        'version': TRACE_VERSION,
        'n': self.n,
        'meta': util.plain(self.meta),
    }
    for entry in self.entries:
      if entry['type'] == 'topology':
        top = self.topologies[entry['version']]
        yield dict(entry, arcs=top.pairs())
      elif entry['type'] == 'round':
        record = util.plain({k: v for k, v in entry.items() if not k.startswith('_')})
        record['idle'] = np.flatnonzero(entry['_idle']).tolist()
        record['lost'] = self.topology(entry).pairs(entry['_lost'])
        if '_loads' in entry:
          record['loads'] = entry['_loads'].tolist()
        yield record
      else:
        yield util.plain(entry)

  def dumps(self):
    return ''.join(json.dumps(record, sort_keys=True) + '\n' for record in self.records())

  def write(self, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
      for record in self.records():
        f.write(json.dumps(record, sort_keys=True) + '\n')


def loads(source):
  return _parse(source.splitlines())


def read_trace(path):
  with open(path, encoding='utf-8') as f:
    return _parse(f.read().splitlines())


def _parse(lines):
  trace = None
  last_round = 0
  for number, line in enumerate(lines, 1):
    if not line.strip():
      continue
    try:
      record = json.loads(line)
    except ValueError as e:
      raise MalformedTrace('invalid JSON: {}'.format(e), number)
    if not isinstance(record, dict) or 'type' not in record:
      raise MalformedTrace('record without a type', number)

    kind = record['type']
    if trace is None:
      if kind != 'header' or record.get('format') != TRACE_FORMAT:
        raise MalformedTrace('trace must start with an {} header'.format(TRACE_FORMAT), number)
      if record.get('version') != TRACE_VERSION:
        raise MalformedTrace('unsupported trace version {}'.format(record.get('version')), number)
      trace = Trace(int(record['n']), record.get('meta'))
      continue

    try:
      if kind == 'topology':
        trace.add_topology(record['version'], Topology.from_pairs(trace.n, record['arcs']))
      elif kind == 'round':
        last_round = _parse_round(trace, record, last_round, number)
      else:
        first = record.get('first_round')
        if first is not None and first <= last_round:
          raise MalformedTrace(
              'causality violation: {} record starts at round {} after round {} '
              'was already recorded'.format(kind, first, last_round), number)
        record.pop('type')
        trace.note(kind, **record)
    except (KeyError, TypeError, ValueError) as e:
      raise MalformedTrace('invalid {} record: {}'.format(kind, e), number)

  if trace is None:
    raise MalformedTrace('empty trace', 1)
  return trace


def _parse_round(trace, record, last_round, number):
  r = record['round']
  if r != last_round + 1:
    raise MalformedTrace(
        'causality violation: round {} follows round {}'.format(r, last_round), number)
  if record['topology'] not in trace.topologies:
    raise MalformedTrace(
        'round {} uses topology {} before it was installed'.format(r, record['topology']),
        number)

  top = trace.topologies[record['topology']]
  idle = np.zeros(trace.n, dtype=bool)
  idle[record.get('idle', [])] = True
  lost = top.mask(record.get('lost', []))
  if np.any(lost & idle[top.src]):
    raise MalformedTrace(
        'round {} loses a message from a node that produced nothing'.format(r), number)

  entry = {k: v for k, v in record.items() if k not in ('type', 'idle', 'lost', 'loads')}
  trace.add_round(entry, idle, np.flatnonzero(lost), record.get('loads'))
  return r
