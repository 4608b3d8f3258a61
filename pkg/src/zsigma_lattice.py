# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""The Z[sigma, sigma^-1]-module K^x and systems A*z = b over it.

(sum_h m_h sigma^h) * z = prod_h sigma^h(z)^(m_h). A d x n matrix A of such
polynomials turns into binomial equations on the orbit tuple
orb(z) = (z_1, sigma(z_1), ..., sigma^ell(z_1), z_2, ...), which is how
matrix_to_coset converts A*z = b into a BinomialCoset.
"""

import collections

from absl import logging

from algebra import int_lattice
from errors import ExpressionError
import expr_parser
import tropical

CosetConversion = collections.namedtuple(
    'CosetConversion', ['ell', 'c_matrices', 'rows', 'shifts', 'coset'])

# Re-exported lattice operations.
hnf = int_lattice.hnf
saturate = int_lattice.saturate
is_primitive = int_lattice.is_primitive


class ZSigmaPoly(object):
  """A Laurent polynomial in sigma with integer coefficients."""

  def __init__(self, coeffs=None):
    coeffs = coeffs or {}
    self.coeffs = {int(h): int(m) for h, m in coeffs.items() if m}

  @classmethod
  def constant(cls, m):
    return cls({0: m})

  @classmethod
  def sigma(cls, h=1):
    return cls({h: 1})

  def _lift(self, other):
    if isinstance(other, ZSigmaPoly):
      return other
    if isinstance(other, int):
      return ZSigmaPoly.constant(other)
    return None

  def __add__(self, other):
    other = self._lift(other)
    if other is None:
      return NotImplemented
    coeffs = dict(self.coeffs)
    for h, m in other.coeffs.items():
      coeffs[h] = coeffs.get(h, 0) + m
    return ZSigmaPoly(coeffs)

  __radd__ = __add__

  def __neg__(self):
    return ZSigmaPoly({h: -m for h, m in self.coeffs.items()})

  def __sub__(self, other):
    other = self._lift(other)
    if other is None:
      return NotImplemented
    return self + (-other)

  def __rsub__(self, other):
    other = self._lift(other)
    if other is None:
      return NotImplemented
    return other - self

  def __mul__(self, other):
    other = self._lift(other)
    if other is None:
      return NotImplemented
    coeffs = {}
    for h, m in self.coeffs.items():
      for k, n in other.coeffs.items():
        coeffs[h + k] = coeffs.get(h + k, 0) + m * n
    return ZSigmaPoly(coeffs)

  __rmul__ = __mul__

  def __pow__(self, k):
    k = int(k)
    if k < 0:
      if len(self.coeffs) != 1 or abs(next(iter(self.coeffs.values()))) != 1:
        raise ValueError('Only +-sigma^h is invertible in Z[sigma].')
      (h, m), = self.coeffs.items()
      return ZSigmaPoly({h * k: m**-k})
    result = ZSigmaPoly.constant(1)
    for _ in range(k):
      result = result * self
    return result

  def shift(self, m):
    """sigma^m * self."""
    return ZSigmaPoly({h + m: c for h, c in self.coeffs.items()})

  def is_zero(self):
    return not self.coeffs

  def min_power(self):
    return min(self.coeffs) if self.coeffs else 0

  def max_power(self):
    return max(self.coeffs) if self.coeffs else 0

  def act(self, z):
    """The module action on a nonzero series z."""
    if z.is_zero():
      raise ValueError('Z[sigma] acts on K^x; got 0.')
    result = z.context.one()
    for h, m in sorted(self.coeffs.items()):
      result = result * z.sigma(h) ** m
    return result

  def __eq__(self, other):
    other = self._lift(other)
    if other is None:
      return NotImplemented
    return self.coeffs == other.coeffs

  def __hash__(self):
    return hash(frozenset(self.coeffs.items()))

  def __str__(self):
    if not self.coeffs:
      return '0'
    pieces = []
    for h in sorted(self.coeffs):
      m = self.coeffs[h]
      if h == 0:
        body = str(abs(m))
      else:
        power = 's' if h == 1 else 's^{}'.format(h)
        body = power if abs(m) == 1 else '{}*{}'.format(abs(m), power)
      pieces.append((m < 0, body))
    text = ('-' if pieces[0][0] else '') + pieces[0][1]
    for negative, body in pieces[1:]:
      text += (' - ' if negative else ' + ') + body
    return text

  def __repr__(self):
    return 'ZSigmaPoly({})'.format(self)


class ZSigmaAlgebra(object):
  """Expression hooks for `1 - s`, `2 + s^-1` and the like."""

  def number(self, q):
    if q.denominator != 1:
      raise ExpressionError('Z[sigma] coefficients are integers, got {}.'
                            .format(q))
    return ZSigmaPoly.constant(int(q))

  def atom(self, name, exponent):
    if name != 's':
      raise ExpressionError('Unknown symbol {!r}; use s for sigma.'.format(
          name))
    if exponent is None:
      return ZSigmaPoly.sigma(1)
    if len(exponent) != 1 or exponent[0].denominator != 1:
      raise ExpressionError('sigma powers are integers, got {}.'.format(
          exponent))
    return ZSigmaPoly.sigma(int(exponent[0]))

  def call(self, name, exponent, args):
    raise ExpressionError('Unexpected call {}(...) in a Z[sigma] literal.'
                          .format(name))

  def divide(self, a, b):
    raise ExpressionError('Division is not defined in Z[sigma].')


def parse_zsigma(text):
  return expr_parser.parse_expression(text, ZSigmaAlgebra())


class ZSigmaMatrix(object):
  """A d x n matrix over Z[sigma, sigma^-1]."""

  def __init__(self, entries):
    entries = [[e if isinstance(e, ZSigmaPoly) else ZSigmaPoly.constant(e)
                for e in row] for row in entries]
    if not entries or not entries[0]:
      raise ValueError('A Z[sigma] matrix must be at least 1 x 1.')
    if any(len(row) != len(entries[0]) for row in entries):
      raise ValueError('Z[sigma] matrix rows have different lengths.')
    self.entries = tuple(tuple(row) for row in entries)

  @classmethod
  def parse(cls, text):
    """Parses `[[1-s],[1-s^2]]`; a flat list is a single column."""
    parsed = expr_parser.parse_list(text, parse_zsigma)
    if not isinstance(parsed, list):
      parsed = [[parsed]]
    rows = [row if isinstance(row, list) else [row] for row in parsed]
    return cls(rows)

  @property
  def shape(self):
    return len(self.entries), len(self.entries[0])

  def act(self, z):
    """(A*z)_i = prod_j A_ij * z_j."""
    d, n = self.shape
    if len(z) != n:
      raise ValueError('Matrix with {} columns applied to {} values.'.format(
          n, len(z)))
    out = []
    for row in self.entries:
      value = z[0].context.one()
      for p, z_j in zip(row, z):
        if not p.is_zero():
          value = value * p.act(z_j)
      out.append(value)
    return out

  def __str__(self):
    return '[{}]'.format(', '.join(
        '[{}]'.format(', '.join(str(e) for e in row)) for row in self.entries))


def module_action(p, z):
  return p.act(z)


def orbit(z, ell):
  """(sigma^0 z_1, ..., sigma^ell z_1, sigma^0 z_2, ...)."""
  return tuple(z_j.sigma(h) for z_j in z for h in range(ell + 1))


def _check_units(b):
  for i, b_i in enumerate(b):
    if b_i.is_indeterminate() or not b_i.valuation().is_zero():
      raise ValueError('Target {} = {} is not a unit.'.format(i, b_i))


def matrix_to_coset(a, b):
  """Converts A*z = b into binomial equations on orb_{0,ell}(z).

  Rows with negative sigma powers are first multiplied by sigma^m (and b_i
  replaced by sigma^m(b_i)); the shifts are recorded.

  Args:
    a: a ZSigmaMatrix.
    b: one unit HahnSeries per row of a.

  Returns:
    CosetConversion(ell, c_matrices, rows, shifts, coset): c_matrices[i] is
    the n x (ell+1) integer matrix of row i, rows its flattening (index
    j*(ell+1)+h) and coset the BinomialCoset those rows define.

  Raises:
    ValueError: on a non-unit target or a size mismatch.
  """
  d, n = a.shape
  if len(b) != d:
    raise ValueError('{} targets for {} rows.'.format(len(b), d))
  _check_units(b)
  shifts, shifted, targets = [], [], []
  for row, b_i in zip(a.entries, b):
    m = max([0] + [-p.min_power() for p in row if not p.is_zero()])
    shifts.append(m)
    shifted.append([p.shift(m) for p in row])
    targets.append(b_i.sigma(m))
  if any(shifts):
    logging.info('Shifted rows of %s by sigma^%s.', a, shifts)
  ell = max(p.max_power() for row in shifted for p in row)
  c_matrices = [[[p.coeffs.get(h, 0) for h in range(ell + 1)] for p in row]
                for row in shifted]
  rows = [[c for entry in c_i for c in entry] for c_i in c_matrices]
  coset = tropical.BinomialCoset.from_equations(b[0].context, rows, targets)
  return CosetConversion(ell, c_matrices, rows, shifts, coset)


def check_orbit_membership(conversion, a, b, z):
  """Returns (direct, via_coset) for a candidate solution z."""
  direct = all(lhs.agrees_with(rhs) for lhs, rhs in zip(a.act(z), b))
  via_coset = conversion.coset.contains(orbit(z, conversion.ell))
  if direct != via_coset:
    logging.warning('Orbit membership disagrees for z = %s: direct %s, '
                    'coset %s.', [str(x) for x in z], direct, via_coset)
  return direct, via_coset


def connected_component_map(psi_exponents):
  """Exponent rows of xi with ker(xi) the identity component of ker(psi)."""
  if not psi_exponents:
    raise ValueError('Need at least one exponent vector.')
  lattice = saturate(hnf(psi_exponents))
  return [list(row) for row in lattice.basis]


def purity_transfer(a, b, z):
  """Replaces a solution z of A*z = b (b units) by the unit solution.

  Returns:
    The unit parts u_j = z_j / t^(v(z_j)); A*u = b because v and the
    section commute with sigma.

  Raises:
    ValueError: if z does not solve the system or b is not a unit vector.
  """
  _check_units(b)
  if not all(lhs.agrees_with(rhs) for lhs, rhs in zip(a.act(z), b)):
    raise ValueError('z does not solve A*z = b; cannot transfer.')
  u = [z_j.unit_part() for z_j in z]
  if not all(lhs.agrees_with(rhs) for lhs, rhs in zip(a.act(u), b)):
    raise ValueError('Unit parts do not solve A*u = b.')
  return u
