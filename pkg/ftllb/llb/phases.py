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

import numpy as np

from ftllb import simnet

from .update import llb_step

SILENT_FRACTION = 2.0 / 3.0


class Balancing(object):
  def __init__(self, x, d_max, participants):
    self.x = np.array(x, dtype=float)
    self.d_max = d_max
    self.participants = participants

  def send(self, engine):
    return simnet.outbox(self.x, self.participants)

  def state(self):
    return {'x': self.x}

  def receive(self, inbox, live):
    update = self.participants & live
    x = llb_step(self.x, inbox.sums(), inbox.counts, self.d_max)
    self.x = np.where(update, x, self.x)


class FixOutliers(object):
  """Median rounds; a node hearing fewer than 2/3 d_min messages turns silent
  and stops communicating for the rest of the loop."""

  def __init__(self, x, d_min, participants):
    self.x = np.array(x, dtype=float)
    self.threshold = SILENT_FRACTION * d_min
    self.participants = participants
    self.silent = np.zeros(len(self.x), dtype=bool)

  def send(self, engine):
    return simnet.outbox(self.x, self.participants & ~self.silent)

  def state(self):
    return {'x': self.x, 'silent': self.silent}

  def receive(self, inbox, live):
    update = self.participants & live & ~self.silent
    counts = inbox.counts
    few = update & (counts < self.threshold)
    self.silent = self.silent | few
    fix = update & ~few & (counts > 0)
    self.x = np.where(fix, inbox.medians(), self.x)
