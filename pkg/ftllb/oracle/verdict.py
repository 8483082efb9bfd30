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
import json

from ftllb import util

PASSED = 'passed'
FAILED = 'failed'
PRECONDITION_UNMET = 'precondition_unmet'


class Verdict(collections.namedtuple('Verdict', ['check', 'status', 'first_violation', 'margins'])):
  """Outcome of one audit. A check whose preconditions did not hold for the
  instance is reported but does not count as a failure."""

  @property
  def passed(self):
    return self.status != FAILED

  def to_dict(self):
    return util.plain({
        'check': self.check,
        'status': self.status,
        'passed': self.passed,
        'first_violation': self.first_violation,
        'margins': self.margins,
    })

  def dumps(self):
    return json.dumps(self.to_dict(), sort_keys=True)


def verdict(check, violation=None, margins=None, precondition=True):
  if not precondition:
    status = PRECONDITION_UNMET
  elif violation is not None:
    status = FAILED
  else:
    status = PASSED
  return Verdict(check, status, violation, dict(margins or {}))
