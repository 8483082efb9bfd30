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
import math

import numpy as np

from ftllb import util
from ftllb.simnet import WORD_BITS

from .verdict import verdict

# Measured counters may sit this far on either side of their planned shape.
SHAPE_FACTOR = 2.0

Point = collections.namedtuple('Point', ['n', 'value'])


def crash_rounds_shape(n):
  return math.sqrt(n * math.log(n)) * math.log(n)


def crash_bits_shape(n):
  return n ** 1.5 * math.log(n) ** 2.5 * util.loglog(n) ** 2


SHAPES = {
    'rounds': crash_rounds_shape,
    'bits': crash_bits_shape,
}


def planned_messages(topology, participants, rounds):
  """Messages of `rounds` rounds in which every participant sends on as many
  ports as the highest degree of `topology`."""
  d_max = int(topology.out_degree.max(initial=0))
  return int(np.count_nonzero(participants)) * d_max * rounds


def budget_check(messages, bits, planned, word_bits=WORD_BITS):
  """Messages and bits of one run against the planned messages, summed over
  its iterations, within SHAPE_FACTOR either way."""
  if planned <= 0:
    return verdict('budget', margins={'planned_messages': planned}, precondition=False)
  ratios = {
      'messages': messages / planned,
      'bits': bits / (planned * word_bits),
  }
  margins = {
      'planned_messages': planned,
      'messages_ratio': ratios['messages'],
      'bits_ratio': ratios['bits'],
  }
  violation = None
  for counter in ('messages', 'bits'):
    if not 1.0 / SHAPE_FACTOR <= ratios[counter] <= SHAPE_FACTOR:
      violation = {'counter': counter, 'ratio': ratios[counter]}
      break
  return verdict('budget', violation, margins)


def shape_fit(points, shape, name='shape'):
  """Fits value = c shape(n) over (n, value) points with c the geometric mean
  of the ratios; every point has to stay within SHAPE_FACTOR of the fit.
  Fewer than two distinct sizes leave nothing to fit.
  """
  points = [Point(int(n), float(value)) for n, value in points]
  sizes = sorted({p.n for p in points})
  if len(sizes) < 2 or any(p.value <= 0 for p in points):
    return verdict(name, margins={'sizes': sizes}, precondition=False)

  ratios = np.array([p.value / shape(p.n) for p in points])
  c = float(np.exp(np.log(ratios).mean()))
  spread = ratios / c
  margins = {
      'sizes': sizes,
      'constant': c,
      'min_ratio': float(spread.min()),
      'max_ratio': float(spread.max()),
  }
  violation = None
  outside = np.flatnonzero((spread > SHAPE_FACTOR) | (spread < 1.0 / SHAPE_FACTOR))
  if len(outside):
    p = points[int(outside[0])]
    violation = {'n': p.n, 'value': p.value, 'ratio': float(spread[outside[0]])}
  return verdict(name, violation, margins)
