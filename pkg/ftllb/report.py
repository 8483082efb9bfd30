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


import csv
import io
import json
import os

import jinja2
import nbformat

from .experiment import COLUMNS

REPORT_HEADER = '# ftllb-report v1'


def _cell(value):
  if isinstance(value, bool):
    return int(value)
  if isinstance(value, float):
    return '{:.12g}'.format(value)
  return value


def dumps_csv(report):
  out = io.StringIO()
  out.write(REPORT_HEADER + '\n')
  writer = csv.DictWriter(out, fieldnames=COLUMNS, lineterminator='\n')
  writer.writeheader()
  for row in report.rows:
    writer.writerow({column: _cell(row[column]) for column in COLUMNS})
  return out.getvalue()


def dumps_summary(report):
  return json.dumps(report.summary, indent=2, sort_keys=True) + '\n'


def summary_path(csv_path):
  return os.path.splitext(csv_path)[0] + '.json'


def jinja_env():
  return jinja2.Environment(
      loader=jinja2.PackageLoader('ftllb', 'templates'),
      trim_blocks=True,
      lstrip_blocks=True,
      keep_trailing_newline=True,
  )


def render_summary(report, env=None):
  env = env or jinja_env()
  template = env.get_template('summary.md.j2')
  return template.render(summary=report.summary, spec=report.spec)


def new_notebook(report, csv_path=None, kernel='python3'):
  """Notebook with the rendered summary and, given the CSV path, a cell that
  loads the per-seed rows."""
  cells = [nbformat.v4.new_markdown_cell(render_summary(report).rstrip())]
  if csv_path:
    cells.append(nbformat.v4.new_code_cell('\n'.join([
        'import csv',
        '',
        'with open({}) as f:'.format(repr(csv_path)),
        "  rows = list(csv.DictReader(line for line in f if not line.startswith('#')))",
        'len(rows)',
    ])))
  metadata = {'kernelspec': {'name': kernel, 'display_name': kernel}}
  return nbformat.v4.new_notebook(cells=cells, metadata=metadata)


def _makedirs(path):
  directory = os.path.dirname(path)
  if directory and not os.path.exists(directory):
    os.makedirs(directory)


def write(report, csv_path, notebook_path=None):
  """Writes the CSV, the JSON summary next to it and optionally a notebook."""
  _makedirs(csv_path)
  with open(csv_path, 'w', encoding='utf-8', newline='') as f:
    f.write(dumps_csv(report))
  with open(summary_path(csv_path), 'w', encoding='utf-8', newline='\n') as f:
    f.write(dumps_summary(report))
  if notebook_path:
    write_notebook(report, notebook_path, csv_path)


def write_notebook(report, path, csv_path=None):
  _makedirs(path)
  with open(path, 'w', encoding='utf-8') as f:
    nbformat.write(new_notebook(report, csv_path), f)
