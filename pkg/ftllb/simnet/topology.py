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

import numpy as np

from ftllb.graph import Graph

# Every phase multicasts one payload per sending node over all of its ports.
Outbox = collections.namedtuple(
    'Outbox', ['payload', 'sending', 'flags', 'words', 'listening'])


def outbox(payload, sending, flags=None, words=1, listening=None):
  return Outbox(payload, np.asarray(sending, dtype=bool), flags, words, listening)


class Topology(object):
  """Directed arcs of one communication phase.

  Arcs are stored sorted by (dst, src), so the in-ports of a node are its
  senders in ascending order and per-node reductions accumulate in ascending
  sender order.
  """

  def __init__(self, n, src=(), dst=()):
    src = np.asarray(src, dtype=np.int64).ravel()
    dst = np.asarray(dst, dtype=np.int64).ravel()
    if len(src) != len(dst):
      raise ValueError('src and dst must have the same length')
    if len(src) and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
      raise ValueError('arc endpoint out of range [0, {})'.format(n))
    if np.any(src == dst):
      raise ValueError('a node cannot message itself')

    keys = np.unique(dst * max(n, 1) + src)
    self.n = n
    self.src = keys % max(n, 1)
    self.dst = keys // max(n, 1)
    self._keys = keys
    for array in (self.src, self.dst, self._keys):
      array.setflags(write=False)
    self.in_ptr = np.searchsorted(self.dst, np.arange(n + 1))
    self.in_degree = np.diff(self.in_ptr)
    self.out_degree = np.bincount(self.src, minlength=n)

  @classmethod
  def from_graph(cls, g, nodes=None):
    u, v = g.edge_arrays
    if nodes is not None:
      keep = np.zeros(g.n, dtype=bool)
      keep[np.asarray(list(nodes), dtype=np.int64)] = True
      mask = keep[u] & keep[v]
      u, v = u[mask], v[mask]
    return cls(g.n, np.concatenate([u, v]), np.concatenate([v, u]))

  @classmethod
  def from_pairs(cls, n, pairs):
    pairs = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    return cls(n, pairs[:, 0], pairs[:, 1])

  @property
  def num_arcs(self):
    return len(self._keys)

  def ports(self, v):
    return tuple(self.src[self.in_ptr[v]:self.in_ptr[v + 1]].tolist())

  def index(self, src, dst):
    keys = np.asarray(dst, dtype=np.int64) * max(self.n, 1) + np.asarray(src, dtype=np.int64)
    positions = np.searchsorted(self._keys, keys)
    positions = np.minimum(positions, max(self.num_arcs - 1, 0))
    if self.num_arcs == 0 or np.any(self._keys[positions] != keys):
      raise KeyError('arc not in topology')
    return positions

  def mask(self, pairs):
    mask = np.zeros(self.num_arcs, dtype=bool)
    pairs = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    if len(pairs):
      mask[self.index(pairs[:, 0], pairs[:, 1])] = True
    return mask

  def pairs(self, mask=None):
    src, dst = (self.src, self.dst) if mask is None else (self.src[mask], self.dst[mask])
    return np.stack([src, dst], axis=1).tolist()

  def reversed(self, mask=None):
    if mask is None:
      return Topology(self.n, self.dst, self.src)
    return Topology(self.n, self.dst[mask], self.src[mask])

  def to_graph(self, mask=None):
    return Graph(self.n, self.pairs(mask))

  def __eq__(self, other):
    return (isinstance(other, Topology) and self.n == other.n
            and np.array_equal(self._keys, other._keys))

  def __hash__(self):
    return hash((self.n, self._keys.tobytes()))

  def __repr__(self):
    return 'Topology(n={}, arcs={})'.format(self.n, self.num_arcs)


class Inbox(object):
  """Messages delivered to every node in one round."""

  def __init__(self, topology, outbox, delivered):
    self.topology = topology
    self.outbox = outbox
    self.delivered = delivered
    self._dst = topology.dst[delivered]
    self._src = topology.src[delivered]
    self._counts = None

  @property
  def counts(self):
    if self._counts is None:
      self._counts = np.bincount(self._dst, minlength=self.topology.n)
    return self._counts

  def values(self):
    return np.asarray(self.outbox.payload, dtype=float)[self._src]

  def sums(self):
    return np.bincount(self._dst, weights=self.values(), minlength=self.topology.n)

  def medians(self, default=np.nan):
    """Median of each node's received values, the mean of the two middle
    values for an even count."""
    n = self.topology.n
    values = self.values()
    order = np.lexsort((values, self._dst))
    ordered = values[order]
    counts = self.counts
    starts = np.cumsum(counts) - counts
    result = np.full(n, default, dtype=float)
    heard = counts > 0
    lo = ordered[(starts + (counts - 1) // 2)[heard]]
    hi = ordered[(starts + counts // 2)[heard]]
    result[heard] = 0.5 * (lo + hi)
    return result

  def first(self, flagged=True):
    """Value on the lowest port with a delivered message, optionally only
    among messages whose flag is set. Returns (values, found)."""
    keep = np.ones(len(self._src), dtype=bool)
    if flagged and self.outbox.flags is not None:
      keep = np.asarray(self.outbox.flags, dtype=bool)[self._src]
    dst = self._dst[keep]
    src = self._src[keep]
    n = self.topology.n
    found = np.zeros(n, dtype=bool)
    values = np.full(n, np.nan)
    if len(dst):
      # Arcs are sorted by (dst, src): the first arc of each dst is its lowest port.
      heads = np.flatnonzero(np.r_[True, dst[1:] != dst[:-1]])
      found[dst[heads]] = True
      if self.outbox.payload is not None:
        values[dst[heads]] = np.asarray(self.outbox.payload, dtype=float)[src[heads]]
    return values, found

  def senders(self, v):
    return self._src[self._dst == v].tolist()
