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

import hashlib
import logging
import math
import re

import numpy as np

# Format: kind:strategy key=value key=value
adversary_re = re.compile(r'''^\s*
    (?P<kind>crash|omission|none)              # adversary kind
    (?::(?P<strategy>[\w-]+))?                 # :strategy
    (?P<options>(?:\s+[\w-]+=[^\s]+)*)\s*$     # key=value ...
''', re.VERBOSE)
option_re = re.compile(r'^(?P<key>[\w-]+)=(?P<value>[^\s]+)$')

# Format: 7 | 1..10 | 1-10
seed_range_re = re.compile(r'^\s*(?P<first>\d+)\s*(?:(?:\.\.|-)\s*(?P<last>\d+))?\s*$')

# Ceilings of analysis quantities tolerate float noise in ln().
CEIL_SLACK = 1e-9


def ceil(value):
  return int(math.ceil(value - CEIL_SLACK))


def loglog(n):
  return math.log(math.log(n))


def parse_adversary(text):
  if text is None:
    return {'kind': 'none', 'strategy': None, 'options': {}}
  m = adversary_re.match(text)
  if not m:
    raise ValueError('adversary must be in the format "kind:strategy [key=value ...]", '
                     'found {}'.format(repr(text)))

  options = {}
  for raw_option in (m['options'] or '').split():
    option = option_re.match(raw_option)
    if not option:
      logging.warning('invalid adversary option syntax: {}'.format(repr(raw_option)))
      continue
    options[option['key']] = _number(option['value'])

  return {'kind': m['kind'], 'strategy': m['strategy'], 'options': options}


def parse_seed_range(text):
  m = seed_range_re.match(str(text))
  if not m:
    raise ValueError('seed range must be in the format "first..last", '
                     'found {}'.format(repr(text)))
  first = int(m['first'])
  last = int(m['last']) if m['last'] is not None else first
  if last < first:
    raise ValueError('empty seed range {}'.format(repr(text)))
  return list(range(first, last + 1))


def _number(value):
  for cast in (int, float):
    try:
      return cast(value)
    except ValueError:
      pass
  return value


class Streams(object):
  """Seeded random streams split from one master seed.

  Every node owns an independent substream, as do the adversary and the
  harness. Streams are derived with `numpy.random.SeedSequence.spawn`, so the
  same seed always yields the same draws regardless of how many draws another
  stream made.
  """

  def __init__(self, seed, n):
    self.seed = seed
    self.n = n
    root = np.random.SeedSequence(seed)
    node_seq, adversary_seq, harness_seq = root.spawn(3)
    self.nodes = [np.random.default_rng(s) for s in node_seq.spawn(n)]
    self.adversary = np.random.default_rng(adversary_seq)
    self.harness = np.random.default_rng(harness_seq)

  def node(self, v):
    return self.nodes[v]


def digest(*arrays):
  h = hashlib.blake2b(digest_size=8)
  for array in arrays:
    h.update(np.ascontiguousarray(array).tobytes())
  return h.hexdigest()


def plain(value):
  """Converts numpy values nested in dicts and lists to JSON-ready ones."""
  if isinstance(value, dict):
    return {k: plain(v) for k, v in value.items()}
  if isinstance(value, (list, tuple)):
    return [plain(v) for v in value]
  if isinstance(value, np.ndarray):
    return value.tolist()
  if isinstance(value, np.generic):
    return value.item()
  return value
