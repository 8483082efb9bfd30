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

from ftllb import oracle
from ftllb import simnet
from ftllb.errors import ConfigError
from ftllb.errors import TraceMismatch

# A violation of any of these makes the command line exit with status 1.
HARD_CHECKS = ('value_range', 'sandwich', 'agreement_persistence')

LLB_CHECKS = ('value_range', 'sandwich', 'remainder_shrinkage', 'active_set')
TRACE_CHECKS = LLB_CHECKS + ('agreement_persistence',)

# Audited on every load balancing call of a consensus run.
CALL_CHECKS = ('value_range', 'sandwich')

Replayed = collections.namedtuple('Replayed', ['source', 'verdict'])


def advisory(v):
  """A sandwich outcome on an irregular topology, where the skewed processes
  are not guaranteed bounds; reported, never a hard failure."""
  return v.check == 'sandwich' and v.margins.get('regular') is False


def hard_failure(v):
  return v.check in HARD_CHECKS and v.status == oracle.FAILED and not advisory(v)


def sandwich(run):
  v = oracle.sandwich_check(run)
  if v.status == oracle.FAILED and advisory(v):
    logging.warning('sandwich broken on an irregular topology: round {}, node {}'.format(
        v.first_violation['round'], v.first_violation['node']))
  return v


def llb_verdicts(run, t, checks=LLB_CHECKS):
  """Audits of one load balancing call."""
  verdicts = []
  if 'value_range' in checks:
    verdicts.append(oracle.value_range_check(run))
  if 'sandwich' in checks:
    verdicts.append(sandwich(run))
  if 'remainder_shrinkage' in checks:
    verdicts.append(oracle.remainder_shrinkage_check(run, t))
  if 'active_set' in checks:
    verdicts.append(oracle.active_set_check(run, t))
  return verdicts


def merge_calls(check, calls):
  """One verdict for `check` over the per-call verdict lists of a run: the
  first failure with its call number, otherwise a pass over the calls that
  could be audited."""
  found = []
  for call, verdicts in enumerate(calls, 1):
    for v in verdicts:
      if v.check != check:
        continue
      if v.status == oracle.FAILED:
        return oracle.verdict(check, dict(v.first_violation, call=call), v.margins)
      found.append(v)
  audited = [v for v in found if v.status == oracle.PASSED]
  margins = {'calls': len(found), 'audited': len(audited)}
  if check == 'sandwich':
    margins['regular'] = all(v.margins.get('regular') is True for v in found)
  return oracle.verdict(check, margins=margins, precondition=bool(audited))


def replay(trace, checks=None):
  """Re-runs the oracle audits on a stored trace without simulating.

  `trace` is a path or a parsed Trace; `checks` restricts the audits to the
  named ones.
  """
  if checks is None:
    checks = TRACE_CHECKS
  unknown = sorted(set(checks) - set(TRACE_CHECKS))
  if unknown:
    raise ConfigError('unknown checks {}, expected some of {}'.format(
        ', '.join(unknown), ', '.join(TRACE_CHECKS)))
  if isinstance(trace, str):
    trace = simnet.read_trace(trace)

  t = trace.meta.get('t')
  if t is None:
    logging.warning('trace does not record t, auditing with t=0')
    t = 0

  replayed = []
  calls = sorted({note.get('call', 0) for note in trace.notes('llb')})
  for call in calls:
    try:
      run = oracle.from_trace(trace, call)
    except TraceMismatch as e:
      logging.warning('skipping load balancing call {}: {}'.format(call, e))
      continue
    source = 'llb:{}'.format(call)
    replayed.extend(Replayed(source, v) for v in llb_verdicts(run, int(t), checks))

  boundaries = trace.notes('boundary')
  if boundaries and 'agreement_persistence' in checks:
    replayed.append(Replayed('boundaries', oracle.agreement_persistence_check(boundaries)))
  return replayed


def failed(replayed):
  return [r for r in replayed if hard_failure(r.verdict)]
