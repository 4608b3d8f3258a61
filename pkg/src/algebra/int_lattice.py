# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Integer lattices in Z^N: Hermite normal form, kernels and saturation.

All matrices are numpy object arrays so entries stay exact Python ints.
Row operations are 2x2 determinant one matrices from the extended gcd, so
every transform is unimodular.
"""

import math

import numpy as np
import sympy


def exgcd(a, b):
  """Extended GCD.

  Args:
    a: an integer.
    b: an integer.

  Returns:
    A 2x2 integer matrix M of determinant 1 with M @ [a, b] = [gcd(a, b), 0].
  """
  a_sign = -1 if a < 0 else 1
  a *= a_sign
  b_sign = -1 if b < 0 else 1
  b *= b_sign

  m = np.array([[a, 1, 0],
                [b, 0, 1]], dtype=object)
  m = m[::-1]
  while m[1, 0] != 0:
    q = m[0, 0] // m[1, 0]
    m[0] -= q * m[1]
    m = m[::-1]

  g = m[0, 0]
  m = m[:, 1:]
  m *= [a_sign, b_sign]
  if g != 0:
    # Second row from the Bezout identity so that det(M) = 1.
    m[1] = [-b_sign * b // g, a_sign * a // g]
  return np.array(m, dtype=object)


def _as_matrix(rows, dim=None):
  rows = [[int(x) for x in row] for row in rows]
  if not rows:
    if dim is None:
      raise ValueError('An empty row list needs an explicit dimension.')
    return np.zeros((0, dim), dtype=object)
  width = len(rows[0])
  if any(len(row) != width for row in rows):
    raise ValueError('Rows have different lengths: {}'.format(rows))
  if dim is not None and width != dim:
    raise ValueError('Rows have length {}, expected {}.'.format(width, dim))
  return np.array(rows, dtype=object).reshape(len(rows), width)


def hnf_with_transform(rows, dim=None):
  """Row Hermite normal form.

  Pivots are positive, entries above a pivot lie in [0, pivot) and the
  pivot columns strictly increase down the rows.

  Args:
    rows: integer row vectors spanning the lattice.
    dim: ambient dimension, required only when rows is empty.

  Returns:
    (h, u, rank): h is the m x N reduced matrix whose first `rank` rows are
    the HNF basis and whose remaining rows are zero, u is an m x m
    unimodular matrix with u @ A == h. Rows rank.. of u are relations among
    the input rows.
  """
  a = _as_matrix(rows, dim)
  m, n = a.shape
  u = np.eye(m, dtype=object)
  r = 0
  for c in range(n):
    if r == m:
      break
    for i in range(r + 1, m):
      if a[i, c] != 0:
        op = exgcd(a[r, c], a[i, c])
        a[[r, i]] = op.dot(a[[r, i]])
        u[[r, i]] = op.dot(u[[r, i]])
    if a[r, c] == 0:
      continue
    if a[r, c] < 0:
      a[r] = -a[r]
      u[r] = -u[r]
    for i in range(r):
      q = a[i, c] // a[r, c]
      if q:
        a[i] -= q * a[r]
        u[i] -= q * u[r]
    r += 1
  return a, u, r


class IntLattice(object):
  """A sublattice of Z^N kept as its canonical HNF row basis."""

  def __init__(self, rows, dim=None):
    a, _, rank = hnf_with_transform(rows, dim)
    self.dim = a.shape[1]
    self.basis = tuple(tuple(int(x) for x in a[i]) for i in range(rank))

  @classmethod
  def full(cls, dim):
    return cls(np.eye(dim, dtype=object).tolist())

  @property
  def rank(self):
    return len(self.basis)

  def contains(self, v):
    return IntLattice(list(self.basis) + [list(v)], self.dim) == self

  def __eq__(self, other):
    return (isinstance(other, IntLattice) and self.dim == other.dim and
            self.basis == other.basis)

  def __hash__(self):
    return hash((self.dim, self.basis))

  def __repr__(self):
    return 'IntLattice({}, dim={})'.format([list(b) for b in self.basis],
                                           self.dim)


def hnf(rows, dim=None):
  return IntLattice(rows, dim)


def integer_kernel(rows, dim=None):
  """Basis (as rows) of {x in Z^N : A x = 0}."""
  a = _as_matrix(rows, dim)
  _, u, rank = hnf_with_transform(a.T.tolist(), a.shape[0])
  return [[int(x) for x in u[i]] for i in range(rank, u.shape[0])]


def saturate(lattice):
  """(Q-span of L) intersected with Z^N, the primitive closure of L."""
  if lattice.rank == 0:
    return lattice
  kernel = integer_kernel(lattice.basis)
  if not kernel:
    return IntLattice.full(lattice.dim)
  return IntLattice(integer_kernel(kernel, lattice.dim), lattice.dim)


def is_primitive(lattice):
  return saturate(lattice) == lattice


def _gram_det(lattice):
  b = sympy.Matrix([list(row) for row in lattice.basis])
  return int((b * b.T).det())


def lattice_index(sub, sup):
  """[sup : sub] for sub contained in sup of the same rank.

  Raises:
    ValueError: if sub is not contained in sup or has smaller rank.
  """
  if sub.dim != sup.dim or sub.rank != sup.rank:
    raise ValueError('Index is only finite for equal rank, got {} and {}.'
                     .format(sub.rank, sup.rank))
  if any(not sup.contains(row) for row in sub.basis):
    raise ValueError('{!r} is not a sublattice of {!r}.'.format(sub, sup))
  if sub.rank == 0:
    return 1
  ratio, remainder = divmod(_gram_det(sub), _gram_det(sup))
  root = math.isqrt(ratio)
  if remainder or root * root != ratio:
    raise ValueError('Gram determinants are not a square ratio.')
  return root
