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


import argparse
import json
import logging
import sys

from . import experiment
from . import replay
from . import report
from .errors import ConfigError
from .errors import MalformedTrace

# Flag destinations that map to ExperimentSpec fields under another name.
SPEC_FIELDS = {
    'c1': 'C1',
    'c2': 'C2',
    'sampler_c': 'C',
    'seed_range': 'seeds',
}


def experiment_parser():
  parser = argparse.ArgumentParser(add_help=False)

  parser.add_argument(
      '--config',
      help='JSON file with experiment fields, e.g. '
           '{"n": 128, "t": 4, "C1": 4, "adversary": {"kind": "crash", "strategy": "eclipse"}}. '
           'Flags override values from the file.',
  )
  parser.add_argument('--n', type=int, help='Number of nodes.')
  parser.add_argument('--t', type=int, help='Fault budget of the adversary.')
  parser.add_argument(
      '--seed-range',
      help='Seeds to run, in the format "first..last" or a single seed.',
  )
  parser.add_argument(
      '--adversary',
      help='Adversary in the format "kind:strategy [key=value ...]". '
           'Examples: "crash:eclipse", "omission:random_drops p=0.3"',
  )
  parser.add_argument(
      '--preset',
      choices=sorted(experiment.PRESETS),
      help='Constants preset, defaults to "desk".',
  )
  parser.add_argument('--c1', type=float, help='Overrides the iteration constant C1.')
  parser.add_argument('--c2', type=float, help='Overrides the sampling constant C2.')
  parser.add_argument(
      '--sampler-c',
      type=float,
      help='Overrides the constant C of G(n, p) topologies for llb and check-graph.',
  )
  parser.add_argument('--tau1', type=int, help='Overrides the number of balancing rounds.')
  parser.add_argument('--tau2', type=int, help='Overrides the number of FixOutliers rounds.')
  parser.add_argument('--iterations', type=int, help='Overrides the consensus iterations.')
  parser.add_argument(
      '--dissemination-rounds',
      type=int,
      help='Overrides the dissemination rounds of crash consensus.',
  )
  parser.add_argument(
      '--degree',
      type=int,
      help='Use a random regular topology of this degree for llb and check-graph.',
  )
  parser.add_argument(
      '--graph',
      help='Edge-list file ("n m" then "u v" lines) to use as the topology.',
  )
  parser.add_argument(
      '--inputs',
      choices=experiment.INPUTS,
      help='Initial loads, bits or flags, defaults to "random".',
  )
  parser.add_argument(
      '--skip-scope',
      choices=('iteration', 'execution'),
      help='How long a node that skipped dissemination stays out, defaults to "iteration".',
  )
  parser.add_argument(
      '--oracle',
      choices=('on', 'off'),
      help='Attach oracle verdicts to every seed, defaults to "on".',
  )
  parser.add_argument(
      '--out',
      help='Path of the CSV report to write; the JSON summary goes next to it.',
  )
  parser.add_argument('--trace-dir', help='Directory to write one trace per seed.')
  parser.add_argument('--notebook', help='Path of a notebook with the report summary.')
  parser.add_argument('--workers', type=int, help='Number of worker processes.')
  return parser


def config_fields(path):
  with open(path) as f:
    fields = json.load(f)
  if not isinstance(fields, dict):
    raise ConfigError('{} must hold a JSON object'.format(path))

  if 'seed' in fields:
    fields['seeds'] = str(fields.pop('seed'))
  adversary = fields.get('adversary')
  if isinstance(adversary, dict):
    text = adversary.get('kind', 'none')
    if adversary.get('strategy'):
      text += ':' + adversary['strategy']
    for key, value in sorted(adversary.get('options', {}).items()):
      text += ' {}={}'.format(key, value)
    fields['adversary'] = text
  return fields


def spec_fields(args):
  fields = config_fields(args.config) if args.config else {}
  mode = fields.pop('mode', None)
  if mode is not None and mode not in args.command:
    logging.warning('ignoring mode {} from {} for {}'.format(
        repr(mode), args.config, args.command))

  flags = dict(vars(args))
  for key in ('command', 'config', 'notebook', 'workers', 'verbose', 'quiet'):
    flags.pop(key, None)
  if flags.get('oracle') is not None:
    flags['oracle'] = flags['oracle'] == 'on'
  for key, value in flags.items():
    if value is not None:
      fields[SPEC_FIELDS.get(key, key)] = value
  return fields


def main(argv=None):
  parser = argparse.ArgumentParser(
      prog='ftllb',
      description='Fault-tolerant local load balancing experiments.',
  )
  parser.add_argument('-v', '--verbose', action='store_true', help='Log progress.')
  parser.add_argument('-q', '--quiet', action='store_true', help='Log errors only.')
  commands = parser.add_subparsers(dest='command')
  commands.required = True

  shared = experiment_parser()
  for protocol, text in [
      ('check-graph', 'Certify topologies: degrees, lambda2 and Cheeger bounds.'),
      ('llb', 'Fault-tolerant load balancing on a fixed topology.'),
      ('count', 'Almost-everywhere counting of raised flags.'),
      ('consensus-crash', 'Consensus against crash failures.'),
      ('consensus-omission', 'Consensus against omission failures.'),
  ]:
    commands.add_parser(protocol, parents=[shared], help=text)

  replayer = commands.add_parser('replay', help='Re-run the oracle checks on a stored trace.')
  replayer.add_argument('trace', help='Path to a trace written with --trace-dir.')
  replayer.add_argument(
      '--checks',
      nargs='+',
      help='Checks to run, any of: {}.'.format(', '.join(replay.TRACE_CHECKS)),
  )

  args = parser.parse_args(argv)

  level = logging.WARNING
  if args.verbose:
    level = logging.INFO
  if args.quiet:
    level = logging.ERROR
  logging.basicConfig(level=level, format='%(levelname)s: %(message)s')

  if args.command == 'replay':
    try:
      replayed = replay.replay(args.trace, args.checks)
    except (ConfigError, MalformedTrace) as e:
      parser.error('{}: {}'.format(args.trace, e))
    except OSError as e:
      parser.error(str(e))
    for item in replayed:
      print(json.dumps(dict(item.verdict.to_dict(), source=item.source), sort_keys=True))
    return 1 if replay.failed(replayed) else 0

  try:
    spec = experiment.experiment_spec(args.command, **spec_fields(args))
  except (ConfigError, OSError, ValueError) as e:
    parser.error(str(e))

  result = experiment.run(spec, args.workers)
  if spec.out:
    report.write(result, spec.out, args.notebook)
    print(report.render_summary(result), end='')
  else:
    print(report.dumps_csv(result), end='')
    if args.notebook:
      report.write_notebook(result, args.notebook)
  return 1 if result.summary['hard_failures'] else 0


if __name__ == '__main__':
  sys.exit(main())
