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
import math

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from ftllb.errors import DegenerateGraph
from ftllb.errors import NoConvergence

DEFAULT_TOL = 1e-8
DENSE_LIMIT = 2048
LANCZOS_MAX_ITERATIONS = 600

SpectralReport = collections.namedtuple(
    'SpectralReport', ['lambda2', 'residual', 'iterations'])


def normalized_laplacian(g, loops=None):
  """I - D^{-1/2} A D^{-1/2}, where a self-loop adds 1 to A_vv and to deg(v)."""
  a = g.adjacency_matrix()
  degrees = np.asarray(g.degrees, dtype=float)
  if loops is not None:
    loops = np.asarray(loops, dtype=float)
    a = a + sp.diags(loops)
    degrees = degrees + loops
  if np.any(degrees == 0):
    raise DegenerateGraph('node {} has degree 0'.format(int(np.argmin(degrees))))
  d_inv_sqrt = sp.diags(1.0 / np.sqrt(degrees))
  return (sp.identity(g.n, format='csr') - d_inv_sqrt @ a @ d_inv_sqrt).tocsr()


def lambda2(g, tol=DEFAULT_TOL, loops=None, method=None,
            max_iterations=LANCZOS_MAX_ITERATIONS):
  if g.n < 2:
    raise DegenerateGraph('need at least 2 nodes, found {}'.format(g.n))
  laplacian = normalized_laplacian(g, loops)
  if method is None:
    method = 'dense' if g.n <= DENSE_LIMIT else 'lanczos'

  if method == 'dense':
    value, residual, iterations = _dense(laplacian)
  elif method == 'lanczos':
    degrees = np.asarray(g.degrees, dtype=float)
    if loops is not None:
      degrees = degrees + np.asarray(loops, dtype=float)
    kernel = np.sqrt(degrees)
    kernel /= np.linalg.norm(kernel)
    value, residual, iterations = _lanczos(laplacian, kernel, tol, max_iterations)
  else:
    raise ValueError('unknown eigensolver {}'.format(repr(method)))

  if residual > tol:
    raise NoConvergence(
        'lambda2 residual {:.3e} exceeds tolerance {:.3e}'.format(residual, tol),
        residual, iterations)
  return SpectralReport(float(np.clip(value, 0.0, 2.0)), float(residual), iterations)


def regularize(g, d_max):
  """Self-loop counts that raise every degree to d_max."""
  loops = d_max - np.asarray(g.degrees, dtype=float)
  if np.any(loops < 0):
    raise ValueError('a node has degree above d_max={}'.format(d_max))
  return loops


def lambda2_regularized(g, d_max, tol=DEFAULT_TOL):
  return lambda2(g, tol, loops=regularize(g, d_max))


def ideal_lambda2_bound(d_min, d_max):
  return (d_min / d_max) ** 2 / 8.0


def cheeger_bounds(value):
  return value / 2.0, math.sqrt(2.0 * value)


def _dense(laplacian):
  values, vectors = scipy.linalg.eigh(laplacian.toarray())
  value, vector = values[1], vectors[:, 1]
  residual = np.linalg.norm(laplacian @ vector - value * vector)
  return value, residual, 1


def _lanczos(laplacian, kernel, tol, max_iterations):
  # Lanczos with full reorthogonalization, deflating the known kernel
  # vector D^{1/2}1 so the smallest Ritz value converges to lambda2.
  n = laplacian.shape[0]
  steps = min(n - 1, max_iterations)
  rng = np.random.default_rng(0)

  q = rng.standard_normal(n)
  q -= kernel * (kernel @ q)
  q /= np.linalg.norm(q)
  basis = np.zeros((n, steps + 1))
  basis[:, 0] = q
  alphas, betas = [], []

  value, residual = None, math.inf
  for j in range(steps):
    w = laplacian @ basis[:, j]
    alpha = basis[:, j] @ w
    w -= alpha * basis[:, j]
    if j:
      w -= betas[-1] * basis[:, j - 1]
    w -= basis[:, :j + 1] @ (basis[:, :j + 1].T @ w)
    w -= kernel * (kernel @ w)
    beta = np.linalg.norm(w)
    alphas.append(alpha)

    thetas, s = scipy.linalg.eigh_tridiagonal(np.array(alphas), np.array(betas))
    ritz = basis[:, :j + 1] @ s[:, 0]
    value = thetas[0]
    residual = np.linalg.norm(laplacian @ ritz - value * ritz)
    if residual <= tol or beta < 1e-14:
      return value, residual, j + 1

    betas.append(beta)
    basis[:, j + 1] = w / beta

  raise NoConvergence(
      'Lanczos did not converge in {} iterations'.format(steps), residual, steps)
