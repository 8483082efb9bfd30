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

import networkx as nx
import numpy as np
import scipy.sparse as sp


class Graph(object):
  """Undirected simple graph over nodes 0..n-1.

  Edges are kept as two parallel arrays `u < v` in ascending (u, v) order,
  which is also the canonical serialization order. Instances are immutable.
  """

  def __init__(self, n, edges=()):
    if n < 0:
      raise ValueError('node count must be non-negative, found {}'.format(n))
    edges = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
    if len(edges) and (edges.min() < 0 or edges.max() >= n):
      raise ValueError('edge endpoint out of range [0, {})'.format(n))
    if np.any(edges[:, 0] == edges[:, 1]):
      raise ValueError('self-loops are not allowed')

    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    keys = np.unique(lo * max(n, 1) + hi)
    self._n = n
    self._u = keys // max(n, 1)
    self._v = keys % max(n, 1)
    for array in (self._u, self._v):
      array.setflags(write=False)

    self._degrees = np.bincount(np.concatenate([self._u, self._v]), minlength=n)
    self._degrees.setflags(write=False)
    self._adjacency = None

  @classmethod
  def complete(cls, n):
    u, v = np.triu_indices(n, 1)
    return cls(n, np.stack([u, v], axis=1))

  @classmethod
  def cycle(cls, n):
    nodes = np.arange(n)
    return cls(n, np.stack([nodes, (nodes + 1) % n], axis=1))

  @classmethod
  def path(cls, n):
    nodes = np.arange(n - 1)
    return cls(n, np.stack([nodes, nodes + 1], axis=1))

  @classmethod
  def from_networkx(cls, nx_graph):
    mapping = {node: i for i, node in enumerate(sorted(nx_graph.nodes()))}
    return cls(len(mapping), [(mapping[u], mapping[v]) for u, v in nx_graph.edges()])

  def to_networkx(self):
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(self._n))
    nx_graph.add_edges_from(self.edges())
    return nx_graph

  @property
  def n(self):
    return self._n

  @property
  def num_edges(self):
    return len(self._u)

  @property
  def degrees(self):
    return self._degrees

  def degree(self, v):
    return int(self._degrees[v])

  @property
  def edge_arrays(self):
    return self._u, self._v

  def edges(self):
    return list(zip(self._u.tolist(), self._v.tolist()))

  @property
  def adjacency(self):
    if self._adjacency is None:
      neighbors = [[] for _ in range(self._n)]
      for u, v in self.edges():
        neighbors[u].append(v)
        neighbors[v].append(u)
      self._adjacency = tuple(tuple(sorted(ns)) for ns in neighbors)
    return self._adjacency

  def neighbors(self, v):
    return self.adjacency[v]

  def adjacency_matrix(self):
    data = np.ones(2 * self.num_edges)
    rows = np.concatenate([self._u, self._v])
    cols = np.concatenate([self._v, self._u])
    return sp.csr_matrix((data, (rows, cols)), shape=(self._n, self._n))

  def induced(self, nodes):
    keep = np.zeros(self._n, dtype=bool)
    keep[list(nodes)] = True
    mask = keep[self._u] & keep[self._v]
    return Graph(self._n, np.stack([self._u[mask], self._v[mask]], axis=1))

  def __eq__(self, other):
    return (isinstance(other, Graph) and self._n == other._n
            and np.array_equal(self._u, other._u)
            and np.array_equal(self._v, other._v))

  def __hash__(self):
    return hash((self._n, self._u.tobytes(), self._v.tobytes()))

  def __repr__(self):
    return 'Graph(n={}, m={})'.format(self._n, self.num_edges)
