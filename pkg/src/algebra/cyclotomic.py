# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Cyclotomic residue fields Q(zeta_n) with the automorphism zeta -> zeta^a.

Elements are stored as rational coefficient vectors over the basis
1, zeta, ..., zeta^(d-1), d = deg(Phi_n), always fully reduced mod Phi_n.
"""

import functools
from fractions import Fraction
import math

from absl import logging
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

_X = sympy.Symbol('x')


def to_fraction(r):
  """Converts a sympy rational (or a domain element of QQ) to a Fraction."""
  return Fraction(str(r))


@functools.lru_cache(maxsize=None)
def cyclotomic_coeffs(n):
  """Coefficients of the n-th cyclotomic polynomial, constant term first."""
  if n < 1:
    raise ValueError('Conductor must be positive, got {}.'.format(n))
  poly = sympy.Poly(sympy.cyclotomic_poly(n, _X), _X)
  return tuple(to_fraction(c) for c in reversed(poly.all_coeffs()))


def multiplicative_order(a, n):
  if n <= 2:
    return 1
  a %= n
  k, x = 1, a
  while x != 1:
    x = x * a % n
    k += 1
  return k


class CycloField(object):
  """The difference field (Q(zeta_n), zeta -> zeta^a)."""

  def __init__(self, n, a=1):
    n, a = int(n), int(a)
    if n < 1:
      raise ValueError('Conductor must be positive, got {}.'.format(n))
    if math.gcd(a % n, n) != 1:
      raise ValueError('Automorphism exponent {} is not a unit mod {}.'.format(
          a, n))
    self.n = n
    self.a = a % n
    self.phi = cyclotomic_coeffs(n)
    self.degree = len(self.phi) - 1
    self._zeta_powers = self._build_zeta_powers()

  def _build_zeta_powers(self):
    powers = []
    current = [Fraction(1)] + [Fraction(0)] * (self.degree - 1)
    for _ in range(self.n):
      powers.append(tuple(current))
      current = self._reduce([Fraction(0)] + current)
    return tuple(powers)

  def _reduce(self, coeffs):
    """Reduces a coefficient list (constant first) modulo the monic Phi_n."""
    p = list(coeffs)
    d = self.degree
    for k in range(len(p) - 1, d - 1, -1):
      c = p[k]
      if c:
        for j in range(d + 1):
          p[k - d + j] -= c * self.phi[j]
    p = p[:d]
    return p + [Fraction(0)] * (d - len(p))

  def __eq__(self, other):
    return (isinstance(other, CycloField) and self.n == other.n and
            self.a == other.a)

  def __hash__(self):
    return hash((self.n, self.a))

  def __repr__(self):
    return 'CycloField(n={}, a={})'.format(self.n, self.a)

  def element(self, coeffs):
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) > self.degree:
      coeffs = self._reduce(coeffs)
    coeffs += [Fraction(0)] * (self.degree - len(coeffs))
    return CycloElement(self, coeffs)

  def from_rational(self, q):
    return self.element([q])

  @property
  def zero(self):
    return self.from_rational(0)

  @property
  def one(self):
    return self.from_rational(1)

  def zeta(self, k=1):
    return CycloElement(self, self._zeta_powers[k % self.n])

  def imaginary_unit(self):
    if self.n % 4:
      raise ValueError('i is not in Q(zeta_{}).'.format(self.n))
    return self.zeta(self.n // 4)

  def coerce(self, x):
    if isinstance(x, CycloElement):
      if x.field.n != self.n:
        raise ValueError('Element of Q(zeta_{}) used in Q(zeta_{}).'.format(
            x.field.n, self.n))
      return x
    return self.from_rational(x)

  def order(self):
    """Order of sigma_k, i.e. of a in (Z/n)^x."""
    return multiplicative_order(self.a, self.n)

  def sigma(self, x, power=1):
    """Applies zeta -> zeta^(a^power) and reduces."""
    if self.n <= 2 or power == 0:
      return x
    e = pow(self.a, power, self.n) if power > 0 else pow(
        pow(self.a, -1, self.n), -power, self.n)
    acc = [Fraction(0)] * self.degree
    for j, c in enumerate(x.coeffs):
      if c:
        for k, z in enumerate(self._zeta_powers[e * j % self.n]):
          acc[k] += c * z
    return CycloElement(self, acc)

  def units(self):
    """The roots of unity of Q(zeta_n): +-zeta^j."""
    seen = []
    for j in range(self.n):
      for sign in (1, -1):
        u = self.zeta(j) * sign
        if u not in seen:
          seen.append(u)
    return seen


class CycloElement(object):
  """An element of Q(zeta_n)."""

  __slots__ = ('field', 'coeffs')

  def __init__(self, field, coeffs):
    self.field = field
    self.coeffs = tuple(coeffs)

  def _coerce(self, other):
    return self.field.coerce(other)

  def __add__(self, other):
    if not isinstance(other, (CycloElement, int, Fraction)):
      return NotImplemented
    other = self._coerce(other)
    return CycloElement(self.field,
                        [x + y for x, y in zip(self.coeffs, other.coeffs)])

  __radd__ = __add__

  def __neg__(self):
    return CycloElement(self.field, [-x for x in self.coeffs])

  def __sub__(self, other):
    return self + (-self._coerce(other))

  def __rsub__(self, other):
    return self._coerce(other) - self

  def __mul__(self, other):
    if not isinstance(other, (CycloElement, int, Fraction)):
      return NotImplemented
    if not isinstance(other, CycloElement):
      q = Fraction(other)
      return CycloElement(self.field, [q * x for x in self.coeffs])
    other = self._coerce(other)
    prod = [Fraction(0)] * (2 * self.field.degree - 1)
    for i, x in enumerate(self.coeffs):
      if x:
        for j, y in enumerate(other.coeffs):
          if y:
            prod[i + j] += x * y
    return CycloElement(self.field, self.field._reduce(prod))  # pylint: disable=protected-access

  __rmul__ = __mul__

  def inverse(self):
    """Field inverse, with the convention 0^-1 = 0."""
    if self.is_zero():
      return self
    f = self.field
    if self.is_rational():
      return f.from_rational(1 / self.coeffs[0])
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                    for c in reversed(self.coeffs)], _X, domain='QQ')
    phi = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                      for c in reversed(f.phi)], _X, domain='QQ')
    inv = p.invert(phi)
    return f.element([to_fraction(c) for c in reversed(inv.all_coeffs())])

  def __truediv__(self, other):
    if isinstance(other, CycloElement):
      return self * other.inverse()
    return self * (Fraction(1) / Fraction(other))

  def __rtruediv__(self, other):
    return self._coerce(other) * self.inverse()

  def __pow__(self, k):
    k = int(k)
    base = self if k >= 0 else self.inverse()
    result = self.field.one
    k = abs(k)
    while k:
      if k & 1:
        result = result * base
      base = base * base
      k >>= 1
    return result

  def sigma(self, power=1):
    return self.field.sigma(self, power)

  def is_zero(self):
    return not any(self.coeffs)

  def is_rational(self):
    return not any(self.coeffs[1:])

  def rational(self):
    if not self.is_rational():
      raise ValueError('{} is not rational.'.format(self))
    return self.coeffs[0]

  def __eq__(self, other):
    if isinstance(other, CycloElement):
      return self.field.n == other.field.n and self.coeffs == other.coeffs
    try:
      q = Fraction(other)
    except (TypeError, ValueError):
      return NotImplemented
    return self.is_rational() and self.coeffs[0] == q

  def __hash__(self):
    if self.is_rational():
      return hash(self.coeffs[0])
    return hash((self.field.n, self.coeffs))

  def _basis_name(self, j):
    if j == 1:
      return 'i' if self.field.n == 4 else 'z'
    return 'z^{}'.format(j)

  def num_terms(self):
    return sum(1 for c in self.coeffs if c)

  def __str__(self):
    terms = []
    for j, c in enumerate(self.coeffs):
      if not c:
        continue
      if j == 0:
        term = str(c)
      elif c == 1:
        term = self._basis_name(j)
      elif c == -1:
        term = '-' + self._basis_name(j)
      else:
        term = '{}*{}'.format(c, self._basis_name(j))
      terms.append(term)
    if not terms:
      return '0'
    text = terms[0]
    for term in terms[1:]:
      text += ' - ' + term[1:] if term.startswith('-') else ' + ' + term
    return text

  def __repr__(self):
    return 'CycloElement({}, n={})'.format(self, self.field.n)


def cyclo_arith(op, x, y=None):
  """Dispatches add, mul, inv or pow (y an integer exponent)."""
  if op == 'add':
    return x + y
  if op == 'mul':
    return x * y
  if op == 'inv':
    return x.inverse()
  if op == 'pow':
    return x ** y
  raise ValueError('Unknown operation: {}'.format(op))


def apply_field_aut(field, x):
  return field.sigma(x)


def solve_linear_difference(field, coeffs, rhs):
  """Solves sum_i coeffs[i] * sigma^i(x) = rhs over Q(zeta_n).

  sigma acts Q-linearly, so this is an exact rational linear system in the
  coordinates of x. Free coordinates are set to zero.

  Args:
    field: the CycloField.
    coeffs: list of CycloElement alpha_0, ..., alpha_m.
    rhs: CycloElement beta.

  Returns:
    A CycloElement solution, or None if the system has no solution in the
    field.

  Raises:
    ValueError: if every coefficient is zero.
  """
  coeffs = [field.coerce(c) for c in coeffs]
  rhs = field.coerce(rhs)
  if all(c.is_zero() for c in coeffs):
    raise ValueError('Linear difference equation with all-zero coefficients.')
  d = field.degree
  columns = []
  for j in range(d):
    e = field.element([int(k == j) for k in range(d)])
    image = field.zero
    for i, alpha in enumerate(coeffs):
      if not alpha.is_zero():
        image = image + alpha * field.sigma(e, i)
    columns.append(image.coeffs)
  rows = [[QQ(columns[j][r].numerator, columns[j][r].denominator)
           for j in range(d)] + [QQ(rhs.coeffs[r].numerator,
                                    rhs.coeffs[r].denominator)]
          for r in range(d)]
  reduced, pivots = DomainMatrix(rows, (d, d + 1), QQ).rref()
  if d in pivots:
    logging.debug('No solution in %s for coefficients %s.', field,
                  [str(c) for c in coeffs])
    return None
  reduced = reduced.to_Matrix()
  x = [Fraction(0)] * d
  for row, col in enumerate(pivots):
    x[col] = to_fraction(reduced[row, d])
  return field.element(x)


def solve_normalized_difference(field, alphas):
  """Solves 1 + alpha_0 x + ... + alpha_n sigma^n(x) = 0, or returns None."""
  return solve_linear_difference(field, alphas, field.from_rational(-1))


def rational_root(q, d):
  """Exact d-th root of a rational, or None if it is not a d-th power."""
  q = Fraction(q)
  if d < 1:
    raise ValueError('Root degree must be positive.')
  if q < 0:
    if d % 2 == 0:
      return None
    root = rational_root(-q, d)
    return None if root is None else -root
  num, num_exact = sympy.integer_nthroot(q.numerator, d)
  den, den_exact = sympy.integer_nthroot(q.denominator, d)
  if not (num_exact and den_exact):
    return None
  return Fraction(int(num), int(den))


def residue_root(field, r, d):
  """Searches c in {+-zeta^j * q : q rational} with c^d = r.

  Returns:
    The first root found in the order of field.units(), or None when the
    bounded search is exhausted.
  """
  r = field.coerce(r)
  if r.is_zero():
    return r
  for u in field.units():
    w = r / (u ** d)
    if w.is_rational():
      q = rational_root(w.rational(), d)
      if q is not None:
        return u * q
  logging.debug('No %d-th root of %s of the form +-zeta^j*q.', d, r)
  return None
