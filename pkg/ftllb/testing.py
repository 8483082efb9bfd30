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


def compare_files(expected_file, actual):
  with open(expected_file) as f:
    expected = f.read().rstrip()
  return expected, actual.rstrip()


class EchoStep(object):
  """Every sending node multicasts its own id; inboxes are kept per round."""

  def __init__(self, n, sending=None):
    self.ids = np.arange(n, dtype=float)
    self.sending = np.ones(n, dtype=bool) if sending is None else sending
    self.inboxes = []

  def send(self, engine):
    return simnet.outbox(self.ids, self.sending)

  def state(self):
    return {'x': self.ids}

  def receive(self, inbox, live):
    self.inboxes.append(inbox)


def run_echo(engine, topology, rounds):
  engine.install(topology)
  step = EchoStep(engine.n)
  for _ in range(rounds):
    engine.run_round(step, 'echo')
  return step
