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

from .graph import Graph


def dumps(g):
  lines = ['{} {}'.format(g.n, g.num_edges)]
  lines.extend('{} {}'.format(u, v) for u, v in g.edges())
  return '\n'.join(lines) + '\n'


def loads(source):
  lines = [line.strip() for line in source.splitlines() if line.strip()]
  if not lines:
    raise ValueError('empty graph file')
  try:
    n, m = (int(field) for field in lines[0].split())
    edges = [tuple(int(field) for field in line.split()) for line in lines[1:]]
  except ValueError:
    raise ValueError('graph file must be "n m" followed by "u v" lines')
  if len(edges) != m:
    raise ValueError('header announces {} edges, found {}'.format(m, len(edges)))
  return Graph(n, edges)


def write_graph(g, path):
  with open(path, 'w', encoding='utf-8', newline='\n') as f:
    f.write(dumps(g))


def read_graph(path):
  with open(path, encoding='utf-8') as f:
    return loads(f.read())
