# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Value group Q^r with the lexicographic order and its automorphisms.

A GroupVector is either a finite rational vector or the absorbing element
inf, the valuation of 0. A GroupAut is an upper triangular rational matrix
with positive diagonal, which is enough to preserve the lex order.
"""

import functools
from fractions import Fraction
import re

from errors import RankMismatch

INFINITY_TOKENS = ('inf', 'oo', '∞')


def lex_compare(a, b):
  """Compares two group vectors lexicographically.

  Args:
    a: a GroupVector.
    b: a GroupVector.

  Returns:
    -1, 0 or 1. inf is greater than every finite vector and equal to itself.

  Raises:
    RankMismatch: if both vectors are finite and of different rank.
  """
  if a.is_infinity or b.is_infinity:
    return int(a.is_infinity) - int(b.is_infinity)
  if len(a.coords) != len(b.coords):
    raise RankMismatch('Cannot compare rank {} with rank {}.'.format(
        len(a.coords), len(b.coords)))
  for x, y in zip(a.coords, b.coords):
    if x != y:
      return -1 if x < y else 1
  return 0


@functools.total_ordering
class GroupVector(object):
  """An element of Q^r, or inf."""

  __slots__ = ('coords', 'is_infinity')

  def __init__(self, coords=(), is_infinity=False):
    if is_infinity:
      coords = ()
    elif not coords:
      raise ValueError('A finite group vector needs rank >= 1.')
    object.__setattr__(self, 'coords', tuple(Fraction(c) for c in coords))
    object.__setattr__(self, 'is_infinity', bool(is_infinity))

  def __setattr__(self, k, v):
    raise AttributeError('GroupVector is immutable.')

  @classmethod
  def infinity(cls):
    return _INFINITY

  @classmethod
  def zero(cls, rank):
    return cls((0,) * rank)

  @classmethod
  def parse(cls, text):
    """Parses `1/2`, `(1,-3)`, `1,-3` or `inf`."""
    text = str(text).strip()
    if text in INFINITY_TOKENS:
      return _INFINITY
    body = re.sub(r'^[\(\[]|[\)\]]$', '', text)
    try:
      return cls([Fraction(c.strip()) for c in body.split(',')])
    except (ValueError, ZeroDivisionError):
      raise ValueError('Invalid group vector: {}'.format(text))

  @property
  def rank(self):
    return None if self.is_infinity else len(self.coords)

  def _check_rank(self, other):
    if len(self.coords) != len(other.coords):
      raise RankMismatch('Rank {} does not match rank {}.'.format(
          len(self.coords), len(other.coords)))

  def __add__(self, other):
    if self.is_infinity or other.is_infinity:
      return _INFINITY
    self._check_rank(other)
    return GroupVector([x + y for x, y in zip(self.coords, other.coords)])

  def __neg__(self):
    if self.is_infinity:
      raise ValueError('inf has no negative.')
    return GroupVector([-x for x in self.coords])

  def __sub__(self, other):
    if other.is_infinity:
      raise ValueError('Cannot subtract inf.')
    if self.is_infinity:
      return _INFINITY
    return self + (-other)

  def scale(self, q):
    """Multiplies by the rational scalar q."""
    q = Fraction(q)
    if self.is_infinity:
      if q <= 0:
        raise ValueError('inf can only be scaled by a positive rational.')
      return _INFINITY
    return GroupVector([q * x for x in self.coords])

  def __mul__(self, q):
    return self.scale(q)

  __rmul__ = __mul__

  def __truediv__(self, q):
    return self.scale(Fraction(1) / Fraction(q))

  def is_zero(self):
    return not self.is_infinity and not any(self.coords)

  def __eq__(self, other):
    if not isinstance(other, GroupVector):
      return NotImplemented
    if self.is_infinity or other.is_infinity:
      return self.is_infinity == other.is_infinity
    return self.coords == other.coords

  def __lt__(self, other):
    return lex_compare(self, other) < 0

  def __hash__(self):
    return hash(('inf',) if self.is_infinity else self.coords)

  def __str__(self):
    if self.is_infinity:
      return 'inf'
    if len(self.coords) == 1:
      return str(self.coords[0])
    return '({})'.format(','.join(str(c) for c in self.coords))

  def __repr__(self):
    return 'GroupVector({})'.format(self)


_INFINITY = GroupVector(is_infinity=True)


def pairing(u, gammas):
  """Returns <u, gamma> = sum_j u_j * gamma_j for an integer vector u."""
  if len(u) != len(gammas):
    raise RankMismatch('Exponent of length {} paired with {} values.'.format(
        len(u), len(gammas)))
  total = None
  for u_j, gamma_j in zip(u, gammas):
    if gamma_j.is_infinity:
      raise ValueError('Cannot pair with inf.')
    term = gamma_j.scale(u_j)
    total = term if total is None else total + term
  return total


class GroupAut(object):
  """Order preserving automorphism of Q^r given by an upper triangular matrix."""

  def __init__(self, matrix):
    rows = tuple(tuple(Fraction(x) for x in row) for row in matrix)
    r = len(rows)
    if r < 1 or any(len(row) != r for row in rows):
      raise ValueError('Group automorphism must be a square matrix, got {}.'
                       .format(matrix))
    for i in range(r):
      if rows[i][i] <= 0:
        raise ValueError('Diagonal entry {} must be positive.'.format(i))
      if any(rows[i][j] != 0 for j in range(i)):
        raise ValueError('Group automorphism must be upper triangular.')
    self.matrix = rows
    self.inverse_matrix = _upper_triangular_inverse(rows)

  @classmethod
  def identity(cls, rank):
    return cls([[int(i == j) for j in range(rank)] for i in range(rank)])

  @property
  def rank(self):
    return len(self.matrix)

  def is_identity(self):
    return all(self.matrix[i][j] == int(i == j)
               for i in range(self.rank) for j in range(self.rank))

  def apply(self, gamma, power=1):
    """Applies sigma_Gamma^power to gamma; inf is fixed."""
    if gamma.is_infinity:
      return gamma
    if gamma.rank != self.rank:
      raise RankMismatch('Automorphism of rank {} applied to rank {}.'.format(
          self.rank, gamma.rank))
    m = self.matrix if power >= 0 else self.inverse_matrix
    coords = gamma.coords
    for _ in range(abs(power)):
      coords = [sum(row[j] * coords[j] for j in range(self.rank)) for row in m]
    return GroupVector(coords)

  def power(self, k):
    m = self.matrix if k >= 0 else self.inverse_matrix
    result = [[Fraction(int(i == j)) for j in range(self.rank)]
              for i in range(self.rank)]
    for _ in range(abs(k)):
      result = _matmul(m, result)
    return GroupAut(result)

  def __eq__(self, other):
    return isinstance(other, GroupAut) and self.matrix == other.matrix

  def __hash__(self):
    return hash(self.matrix)

  def __repr__(self):
    return 'GroupAut({})'.format(
        [[str(x) for x in row] for row in self.matrix])


def apply_group_aut(m, gamma, power=1):
  return m.apply(gamma, power)


def _matmul(a, b):
  n = len(a)
  return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]


def _upper_triangular_inverse(m):
  """Back substitution; m is upper triangular with nonzero diagonal."""
  r = len(m)
  inv = [[Fraction(0)] * r for _ in range(r)]
  for j in range(r):
    for i in range(j, -1, -1):
      acc = Fraction(int(i == j))
      for k in range(i + 1, j + 1):
        acc -= m[i][k] * inv[k][j]
      inv[i][j] = acc / m[i][i]
  return tuple(tuple(row) for row in inv)
