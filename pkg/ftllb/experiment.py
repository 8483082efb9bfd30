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
import concurrent.futures
import itertools
import logging
import os

import numpy as np

from ftllb import graph
from ftllb import llb
from ftllb import oracle
from ftllb import protocols
from ftllb import simnet
from ftllb import util
from ftllb.errors import ConfigError
from ftllb.errors import Error
from ftllb.errors import InvalidDensity

from . import replay

PRESETS = {
    'desk': {'C1': 4, 'C2': 8, 'C': 20},
    'theory': {'C1': 2 ** 15, 'C2': 2 ** 15, 'C': 3200},
}

PROTOCOLS = ('check-graph', 'llb', 'count', 'consensus-crash', 'consensus-omission')
INPUTS = ('random', 'split', 'zeros', 'ones')

THREADS_ENV = 'FTLLB_THREADS'

# Changing the columns means bumping the report version.
COLUMNS = (
    'seed', 'protocol', 'n', 't', 'adversary', 'agreed', 'valid', 'decided_value',
    'rounds', 'messages', 'bits', 'active_count', 'certified', 'lambda2', 'error',
    'verdicts',
)

ExperimentSpec = collections.namedtuple('ExperimentSpec', [
    'protocol', 'n', 't', 'adversary', 'preset', 'C1', 'C2', 'C', 'seeds',
    'tau1', 'tau2', 'iterations', 'dissemination_rounds', 'degree', 'graph',
    'inputs', 'skip_scope', 'oracle', 'out', 'trace_dir',
])

ExperimentReport = collections.namedtuple('ExperimentReport', [
    'spec', 'rows', 'verdicts', 'summary',
])

SeedResult = collections.namedtuple('SeedResult', ['row', 'verdicts'])

DEFAULTS = {
    'n': None,
    't': 0,
    'adversary': None,
    'preset': 'desk',
    'C1': None,
    'C2': None,
    'C': None,
    'seeds': '1',
    'tau1': None,
    'tau2': None,
    'iterations': None,
    'dissemination_rounds': None,
    'degree': None,
    'graph': None,
    'inputs': 'random',
    'skip_scope': 'iteration',
    'oracle': True,
    'out': None,
    'trace_dir': None,
}


def experiment_spec(protocol, **fields):
  """Validated ExperimentSpec; unset fields take their default or the
  preset's constants."""
  unknown = sorted(set(fields) - set(DEFAULTS))
  if unknown:
    raise ConfigError('unknown experiment fields: {}'.format(', '.join(unknown)))
  if protocol not in PROTOCOLS:
    raise ConfigError('protocol must be one of {}, found {}'.format(
        ', '.join(PROTOCOLS), repr(protocol)))

  values = dict(DEFAULTS)
  values.update({k: v for k, v in fields.items() if v is not None})
  if values['preset'] not in PRESETS:
    raise ConfigError('preset must be one of {}, found {}'.format(
        ', '.join(sorted(PRESETS)), repr(values['preset'])))
  for key, value in PRESETS[values['preset']].items():
    if values[key] is None:
      values[key] = value

  try:
    if not isinstance(values['seeds'], (list, tuple)):
      values['seeds'] = util.parse_seed_range(values['seeds'])
  except ValueError as e:
    raise ConfigError(str(e))
  values['seeds'] = [int(seed) for seed in values['seeds']]
  if not values['seeds']:
    raise ConfigError('empty seed range')

  if values['graph']:
    try:
      nodes = graph.read_graph(values['graph']).n
    except (OSError, ValueError) as e:
      raise ConfigError('cannot read graph {}: {}'.format(values['graph'], e))
    if values['n'] is None:
      values['n'] = nodes
    elif values['n'] != nodes:
      raise ConfigError('graph {} has {} nodes, found n={}'.format(
          values['graph'], nodes, values['n']))
  n, t = values['n'], int(values['t'])
  if n is None or n < 2:
    raise ConfigError('need n >= 2, found {}'.format(n))
  if not 0 <= t < n:
    raise ConfigError('need 0 <= t < n, found t={} with n={}'.format(t, n))
  if values['inputs'] not in INPUTS:
    raise ConfigError('inputs must be one of {}, found {}'.format(
        ', '.join(INPUTS), repr(values['inputs'])))
  if values['skip_scope'] not in protocols.SKIP_SCOPES:
    raise ConfigError('skip scope must be one of {}, found {}'.format(
        ', '.join(protocols.SKIP_SCOPES), repr(values['skip_scope'])))

  values['adversary'] = _adversary(protocol, values['adversary'], t, int(n))
  values['n'], values['t'] = int(n), t
  spec = ExperimentSpec(protocol=protocol, **values)
  _check_density(spec)
  return spec


def _adversary(protocol, text, t, n):
  if text is None:
    if not t:
      return 'none'
    text = 'omission:random_drops' if protocol == 'consensus-omission' else 'crash:random'
  try:
    kind = util.parse_adversary(text)['kind']
  except ValueError as e:
    raise ConfigError(str(e))
  if protocol == 'consensus-crash' and kind == 'omission':
    raise ConfigError('consensus-crash runs against crash adversaries, found {}'.format(
        repr(text)))
  if protocol == 'consensus-omission' and kind == 'crash':
    raise ConfigError('consensus-omission runs against omission adversaries, found {}'.format(
        repr(text)))
  try:
    simnet.make_adversary(util.parse_adversary(text), t, None, n=n)
  except ValueError as e:
    raise ConfigError(str(e))
  return text


def _check_density(spec):
  try:
    if spec.protocol in ('count', 'consensus-crash', 'consensus-omission'):
      protocols.set_graph_config(spec.n, spec.C2)
    elif not spec.graph and not spec.degree:
      graph.gnp_params(spec.n, spec.C)
  except InvalidDensity as e:
    raise ConfigError('{}; the {} preset cannot run at this size'.format(e, spec.preset))
  except ValueError as e:
    raise ConfigError(str(e))


def topology(spec, rng):
  """The graph of an llb or check-graph run and the window it is certified
  against."""
  if spec.graph:
    g = graph.read_graph(spec.graph)
  elif spec.degree:
    g = graph.regular_graph(spec.n, int(spec.degree), rng)
  else:
    p, params = graph.gnp_params(spec.n, spec.C)
    return graph.sample_gnp(spec.n, p, rng), params
  if g.degrees.min() == 0:
    return g, None
  return g, graph.observed_params(g)


def certify(g, params):
  """Well-connectedness verdict carrying lambda2 and its Cheeger bounds.

  A failed certification is logged and labeled, never raised.
  """
  degrees = g.degrees
  margins = {'d_min': int(degrees.min()), 'd_max': int(degrees.max())}
  if params is None:
    logging.warning('topology not certified: node {} is isolated'.format(
        int(np.argmin(degrees))))
    return oracle.verdict('well_connected', {'clause': 'degree', 'value': 0}, margins)

  margins.update(window=[params.d_min, params.d_max], lambda2_floor=params.lambda2_floor)
  try:
    checked = graph.check_well_connected(g, params)
    report = checked.report or graph.lambda2(g)
  except Error as e:
    logging.warning('topology not certified: {}'.format(e))
    return oracle.verdict('well_connected', {'clause': 'lambda2', 'reason': str(e)}, margins)

  low, high = graph.cheeger_bounds(report.lambda2)
  margins.update(lambda2=report.lambda2, cheeger_low=low, cheeger_high=high)
  violation = None
  if not checked.passed:
    violation = {'clause': checked.clause, 'value': checked.value, 'node': checked.node}
    logging.warning('topology not certified: {} clause fails with {}'.format(
        checked.clause, checked.value))
  return oracle.verdict('well_connected', violation, margins)


def bits(spec, rng):
  n = spec.n
  if spec.inputs == 'zeros':
    return np.zeros(n, dtype=np.int64)
  if spec.inputs == 'ones':
    return np.ones(n, dtype=np.int64)
  if spec.inputs == 'split':
    return (np.arange(n) >= n // 2).astype(np.int64)
  return rng.integers(2, size=n)


def loads(spec, rng):
  if spec.inputs == 'random':
    return rng.random(spec.n)
  return bits(spec, rng).astype(float)


def consensus_verdicts(result):
  checks = [
      oracle.agreement_check(result.decisions, result.correct),
      oracle.validity_check(result.inputs, result.decisions, result.correct,
                            result.boundaries),
      oracle.agreement_persistence_check(result.boundaries),
      oracle.safe_iteration_check(result.records, result.config),
  ]
  if result.config.mode == 'omission':
    checks.append(oracle.suspected_bound_check(result))
  return checks


def _check_graph(spec, engine, row):
  g, params = topology(spec, engine.streams.harness)
  check = certify(g, params)
  row.update(certified=int(check.passed), lambda2=check.margins.get('lambda2', ''))
  return [check]


def _llb(spec, engine, row):
  rng = engine.streams.harness
  g, params = topology(spec, rng)
  check = certify(g, params)
  x0 = loads(spec, rng)
  degrees = g.degrees
  cfg = llb.derive_config(int(degrees.min()), int(degrees.max()), spec.n, strict=False,
                          tau1=spec.tau1, tau2=spec.tau2)
  result = llb.fault_tolerant_llb(engine, g, x0, cfg)
  active = result.active
  row.update(
      certified=int(check.passed),
      lambda2=check.margins.get('lambda2', ''),
      active_count=int(active.sum()),
      error=float(np.abs(result.x[active] - x0.mean()).max(initial=0.0)),
  )
  if not spec.oracle:
    return []
  planned = oracle.planned_messages(result.topology, result.participants, cfg.tau1 + cfg.tau2)
  return [check] + replay.llb_verdicts(oracle.from_result(result), spec.t) + [
      oracle.budget_check(engine.messages, engine.bits, planned),
  ]


def _count(spec, engine, row):
  flags = bits(spec, engine.streams.harness)
  result = protocols.ae_counting(engine, flags, spec.C2, spec.tau1, spec.tau2)
  truth = int(flags.sum())
  returned = [count for count in result.counts if count is not None]
  row.update(
      active_count=len(returned),
      error=max((abs(count - truth) for count in returned), default=''),
  )
  if not spec.oracle:
    return []
  call = result.llb
  cfg = call.config
  planned = oracle.planned_messages(call.topology, call.participants, 1 + cfg.tau1 + cfg.tau2)
  return replay.llb_verdicts(oracle.from_result(call), spec.t) + [
      oracle.counting_check(result.counts, truth, spec.t, cfg),
      oracle.budget_check(engine.messages, engine.bits, planned),
  ]


def _consensus_config(spec):
  mode = 'crash' if spec.protocol == 'consensus-crash' else 'omission'
  return protocols.consensus_config(
      mode, spec.n, spec.t, spec.C1, spec.C2,
      iterations=spec.iterations,
      dissemination_rounds=spec.dissemination_rounds,
      tau1=spec.tau1,
      tau2=spec.tau2,
      skip_scope=spec.skip_scope,
  )


def _iteration_rounds(cfg):
  """Rounds of one consensus iteration: the graph handshake, both load
  balancing loops and, against crashes, dissemination over G*."""
  rounds = 1 + cfg.llb.tau1 + cfg.llb.tau2
  if cfg.mode == 'crash':
    rounds += cfg.dissemination_rounds
  return rounds


def _consensus(spec, engine, row):
  cfg = _consensus_config(spec)
  inputs = bits(spec, engine.streams.harness)
  calls = []
  planned = []

  def audit(result):
    calls.append(replay.llb_verdicts(oracle.from_result(result), spec.t, replay.CALL_CHECKS))
    rounds = 1 + result.config.tau1 + result.config.tau2
    planned.append(oracle.planned_messages(result.topology, result.participants, rounds))

  result = protocols.run_consensus(engine, inputs, cfg, audit if spec.oracle else None)
  checks = consensus_verdicts(result)
  by_check = {check.check: check for check in checks}
  correct = np.asarray(result.correct, dtype=bool)
  values = sorted(set(np.asarray(result.decisions)[correct].tolist()))
  row.update(
      agreed=int(by_check['agreement'].passed),
      valid=int(by_check['validity'].passed),
      decided_value=values[0] if len(values) == 1 else '',
      active_count=int((correct & ~result.withdrawn).sum()),
  )
  if not spec.oracle:
    return []
  checks.extend(replay.merge_calls(check, calls) for check in replay.CALL_CHECKS)
  if result.g_star is not None:
    star = simnet.Topology.from_graph(result.g_star)
    planned.extend(oracle.planned_messages(star, record.participants, cfg.dissemination_rounds)
                   for record in result.records)
  checks.append(oracle.budget_check(engine.messages, engine.bits, sum(planned)))
  return checks


RUNNERS = {
    'check-graph': _check_graph,
    'llb': _llb,
    'count': _count,
    'consensus-crash': _consensus,
    'consensus-omission': _consensus,
}


def planned_rounds(spec):
  """Rounds a run of `spec` takes without faults; None when the topology has
  to be drawn first to tell."""
  try:
    if spec.protocol == 'check-graph':
      return 0
    if spec.protocol == 'count':
      _, cfg = protocols.counting_config(spec.n, spec.C2, spec.tau1, spec.tau2)
      return 1 + cfg.tau1 + cfg.tau2
    if spec.protocol == 'llb':
      if spec.graph:
        degrees = graph.read_graph(spec.graph).degrees
        d_min, d_max = int(degrees.min()), int(degrees.max())
      elif spec.degree:
        d_min = d_max = int(spec.degree)
      else:
        _, params = graph.gnp_params(spec.n, spec.C)
        d_min, d_max = params.d_min, params.d_max
      cfg = llb.derive_config(d_min, d_max, spec.n, strict=False, tau1=spec.tau1, tau2=spec.tau2)
      return cfg.tau1 + cfg.tau2
    cfg = _consensus_config(spec)
  except (Error, ValueError) as e:
    logging.warning('cannot plan the rounds of {}: {}'.format(spec.protocol, e))
    return None
  # The inquiry takes two rounds; against crashes G* takes one.
  rounds = cfg.iterations * _iteration_rounds(cfg) + 2
  return rounds + 1 if cfg.mode == 'crash' else rounds


def trace_path(spec, seed):
  return os.path.join(spec.trace_dir, '{}-seed{}.jsonl'.format(spec.protocol, seed))


def run_seed(spec, seed):
  """One seed on a fresh engine; the row and the oracle verdicts."""
  streams = util.Streams(seed, spec.n)
  adversary = simnet.make_adversary(
      util.parse_adversary(spec.adversary), spec.t, streams.adversary, n=spec.n,
      rounds=planned_rounds(spec))
  trace = None
  if spec.trace_dir:
    trace = simnet.Trace(spec.n, meta={
        'protocol': spec.protocol,
        'seed': seed,
        'n': spec.n,
        't': spec.t,
        'adversary': adversary.describe(),
    })
  engine = simnet.RoundEngine(spec.n, adversary, streams, trace, record_loads=trace is not None)

  row = dict.fromkeys(COLUMNS, '')
  row.update(seed=seed, protocol=spec.protocol, n=spec.n, t=spec.t,
             adversary=adversary.describe())
  verdicts = RUNNERS[spec.protocol](spec, engine, row)
  row.update(
      rounds=engine.round,
      messages=engine.messages,
      bits=engine.bits,
      verdicts=';'.join('{}={}'.format(v.check, v.status) for v in verdicts),
  )
  if trace is not None:
    trace.write(trace_path(spec, seed))
  logging.info('seed {}: {} rounds, {}'.format(seed, engine.round, row['verdicts'] or 'no checks'))
  return SeedResult(row, verdicts)


def worker_count(seeds, workers=None):
  cap = workers or os.cpu_count() or 1
  limit = os.environ.get(THREADS_ENV)
  if limit:
    try:
      cap = min(cap, max(1, int(limit)))
    except ValueError:
      logging.warning('ignoring {}={}, expected a positive integer'.format(
          THREADS_ENV, repr(limit)))
  return max(1, min(seeds, cap))


def run(spec, workers=None):
  """Runs every seed of `spec`; rows come back in seed order whatever the
  number of worker processes."""
  workers = worker_count(len(spec.seeds), workers)
  if spec.trace_dir:
    os.makedirs(spec.trace_dir, exist_ok=True)
  logging.info('running {} seeds of {} at n={} with {} workers'.format(
      len(spec.seeds), spec.protocol, spec.n, workers))

  if workers == 1:
    results = [run_seed(spec, seed) for seed in spec.seeds]
  else:
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
      results = list(executor.map(run_seed, itertools.repeat(spec), spec.seeds))

  rows = [result.row for result in results]
  verdicts = [result.verdicts for result in results]
  return ExperimentReport(spec, rows, verdicts, summarize(spec, rows, verdicts))


def hard_failures(verdicts):
  return [v for v in verdicts if replay.hard_failure(v)]


def summarize(spec, rows, verdicts):
  tally = collections.defaultdict(lambda: dict.fromkeys(
      (oracle.PASSED, oracle.FAILED, oracle.PRECONDITION_UNMET), 0))
  for seed_verdicts in verdicts:
    for v in seed_verdicts:
      tally[v.check][v.status] += 1

  succeeded = [
      all(v.passed or replay.advisory(v) for v in seed_verdicts)
      and row['agreed'] != 0 and row['valid'] != 0
      for row, seed_verdicts in zip(rows, verdicts)
  ]
  rounds = np.array([row['rounds'] for row in rows], dtype=float)
  return util.plain({
      'protocol': spec.protocol,
      'n': spec.n,
      't': spec.t,
      'adversary': spec.adversary,
      'preset': spec.preset,
      'seeds': len(rows),
      'success_rate': sum(succeeded) / len(rows),
      'hard_failures': sum(1 for seed_verdicts in verdicts if hard_failures(seed_verdicts)),
      'uncertified': sum(1 for row in rows if row['certified'] == 0),
      'rounds': {
          'p50': float(np.percentile(rounds, 50)),
          'p90': float(np.percentile(rounds, 90)),
          'max': float(rounds.max()),
      },
      'messages_mean': float(np.mean([row['messages'] for row in rows])),
      'checks': {check: tally[check] for check in sorted(tally)},
  })


def shape_verdicts(reports, shapes=('rounds', 'bits')):
  """Fits the mean rounds and bits of reports at several n to their expected
  growth in n; each shape passes when every size stays within a factor of two
  of the fitted constant."""
  verdicts = []
  for name in shapes:
    points = [(r.spec.n, np.mean([row[name] for row in r.rows])) for r in reports]
    verdicts.append(oracle.shape_fit(points, oracle.SHAPES[name], '{}_shape'.format(name)))
  return verdicts
