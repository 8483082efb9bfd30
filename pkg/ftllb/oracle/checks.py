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

from ftllb.graph import core_subgraph
from ftllb.llb import shrink_factor
from ftllb.llb import llb_bounds

from .processes import reference_run
from .runs import final_active
from .runs import mean_load
from .runs import silent_masks
from .verdict import verdict

SANDWICH_TOL = 1e-9
RANGE_TOL = 1e-12


def _alive(run, i):
  """Participants not crashed by the end of round i; round 0 is the input."""
  live = run.live[i - 1] if i else np.ones(len(run.x0), dtype=bool)
  return run.participants & live


def value_range_check(run, tol=RANGE_TOL):
  lo = run.x0[run.participants].min()
  hi = run.x0[run.participants].max()
  worst = 0.0
  for i, x in enumerate(run.history):
    x = x[run.participants]
    outside = np.maximum(lo - x, x - hi)
    worst = max(worst, float(outside.max(initial=-np.inf)))
    bad = np.flatnonzero(outside > tol)
    if len(bad):
      v = int(np.flatnonzero(run.participants)[bad[0]])
      return verdict('value_range', {'round': i, 'node': v, 'x': run.history[i][v],
                                     'min': lo, 'max': hi})
  return verdict('value_range', margins={'min': lo, 'max': hi, 'worst_excess': worst})


def sandwich_check(run, reference=None, tol=SANDWICH_TOL):
  """x_zero <= x <= x_one at every balancing round, for nodes alive through
  the round; also x_zero <= x_ideal <= x_one when the ideal process exists."""
  ref = reference or reference_run(run)
  regular = run.config.d_min == run.config.d_max
  ideal = ref.x_ideal is not None
  lower = upper = np.inf
  for i in range(run.config.tau1 + 1):
    x = run.history[i]
    zero, one = ref.x_zero[i], ref.x_one[i]
    mask = _alive(run, i)
    if not mask.any():
      continue
    bad = (zero > x + tol) | (x > one + tol)
    if ideal:
      bad |= (zero > ref.x_ideal[i] + tol) | (ref.x_ideal[i] > one + tol)
    bad &= mask
    if bad.any():
      v = int(np.flatnonzero(bad)[0])
      violation = {'round': i, 'node': v, 'x_zero': zero[v], 'x': x[v], 'x_one': one[v]}
      if ideal:
        violation['x_ideal'] = ref.x_ideal[i][v]
      return verdict('sandwich', violation, {'regular': regular, 'ideal': ideal})
    lower = min(lower, float((x - zero)[mask].min()))
    upper = min(upper, float((one - x)[mask].min()))
  return verdict('sandwich', margins={
      'lower': lower,
      'upper': upper,
      'regular': regular,
      'ideal': ideal,
  })


def core_set(run, epsilon):
  """Active nodes at the start of FixOutliers that are epsilon-close to the
  mean and keep (d_max + 1) / 2 neighbours inside the set."""
  cfg = run.config
  g = run.topology.to_graph()
  x = run.history[cfg.tau1]
  start = _alive(run, cfg.tau1)
  good = start & (np.abs(x - mean_load(run)) <= epsilon)
  phi = (cfg.d_max + 1.0) / (2.0 * cfg.d_min)
  result = core_subgraph(g, np.flatnonzero(~good), phi, cfg.d_min)
  core = np.zeros(len(x), dtype=bool)
  core[sorted(result.retained)] = True
  return core & good


def remainder_sizes(run, epsilon):
  """|R_i| per FixOutliers round, R_i being the active nodes outside C_i.

  C_i keeps the active nodes that heard at least (d_min + 1) / 2 messages
  from C_{i-1} in round i."""
  cfg = run.config
  top = run.topology
  core = core_set(run, epsilon)
  active = _alive(run, cfg.tau1)
  sizes = [int((active & ~core).sum())]
  silent = silent_masks(run)
  need = 0.5 * (cfg.d_min + 1.0)
  for j in range(cfg.tau2):
    i = cfg.tau1 + j
    delivered = run.deliveries[i] & core[top.src]
    heard = np.bincount(top.dst[delivered], minlength=len(core))
    active = run.participants & run.live[i] & ~silent[j]
    core = active & (heard >= need)
    sizes.append(int((active & ~core).sum()))
  return sizes


def remainder_shrinkage_check(run, t, epsilon=None):
  """The outlier set shrinks by the factor rho per FixOutliers round, one node
  of slack for integrality. Reported as unmet when t is too large for the
  instance."""
  cfg = run.config
  n = int(run.participants.sum())
  bounds = llb_bounds(cfg.d_min, cfg.d_max, n, t, cfg.tau1, epsilon)
  epsilon = bounds.epsilon
  rho = shrink_factor(cfg.d_min, cfg.d_max)
  phi = (cfg.d_max + 1.0) / (2.0 * cfg.d_min)
  holds = bounds.remainder_holds and bounds.epsilon_holds and rho < 1 and phi < 1
  margins = {'rho': rho, 'epsilon': epsilon, 'bound': bounds.remainder, 't': t}
  if phi >= 1:
    return verdict('remainder_shrinkage', margins=margins, precondition=False)

  sizes = remainder_sizes(run, epsilon)
  margins['sizes'] = sizes
  margins['final'] = sizes[-1]
  violation = None
  for i in range(len(sizes) - 1):
    if sizes[i + 1] > rho * sizes[i] + 1:
      violation = {'round': i + 1, 'size': sizes[i + 1], 'previous': sizes[i]}
      break
  return verdict('remainder_shrinkage', violation, margins, precondition=holds)


def active_set_check(run, t, epsilon=None):
  """At least n - 3/2 t active nodes, all within epsilon of the mean when the
  accuracy bound applies. Both coefficient forms of the t-bound are reported."""
  cfg = run.config
  n = int(run.participants.sum())
  bounds = llb_bounds(cfg.d_min, cfg.d_max, n, t, cfg.tau1, epsilon)
  active = final_active(run)
  x = run.history[-1]
  count = int(active.sum())
  error = float(np.abs(x[active] - mean_load(run)).max(initial=0.0))
  margins = {
      'active': count,
      'required': n - 1.5 * t,
      'form_4_81': bounds.active_4_81_holds,
      'form_40_81': bounds.active_40_81_holds,
      'epsilon': bounds.epsilon,
      'accuracy_applies': bounds.epsilon_holds,
      'max_error': error,
  }
  precondition = bounds.active_4_81_holds or bounds.active_40_81_holds
  violation = None
  if count < n - 1.5 * t:
    violation = {'active': count, 'required': n - 1.5 * t}
  elif bounds.epsilon_holds and error > bounds.epsilon:
    node = int(np.flatnonzero(active)[np.argmax(np.abs(x[active] - mean_load(run)))])
    violation = {'node': node, 'x': x[node], 'error': error}
  return verdict('active_set', violation, margins, precondition)


def counting_check(counts, truth, t, config):
  """At least n - 3t nodes return a count, each within epsilon n of the truth
  when the accuracy bound applies to the instance."""
  n = len(counts)
  returned = [(v, c) for v, c in enumerate(counts) if c is not None]
  bounds = llb_bounds(config.d_min, config.d_max, n, t, config.tau1)
  tolerance = bounds.epsilon * n
  worst = max((abs(c - truth) for _, c in returned), default=0)
  margins = {
      'returned': len(returned),
      'required': n - 3 * t,
      'truth': truth,
      'max_deviation': worst,
      'tolerance': tolerance,
      'accuracy_applies': bounds.epsilon_holds,
  }
  violation = None
  if len(returned) < n - 3 * t:
    violation = {'returned': len(returned), 'required': n - 3 * t}
  elif bounds.epsilon_holds and worst > tolerance:
    v, c = max(returned, key=lambda entry: abs(entry[1] - truth))
    violation = {'node': v, 'count': c, 'truth': truth, 'tolerance': tolerance}
  return verdict('counting', violation, margins)
