# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Truncated Hahn series k((t^Gamma)) with the twisted automorphism.

A series is a finite, strictly increasing list of (exponent, coefficient)
terms plus an absolute precision bound: everything at or above the bound is
unknown. Precision inf marks an exact series.

sigma acts by  sum a_g t^g  ->  sum sigma_k(a_g) t^(sigma_Gamma(g)),  and the
cross-section s(g) = t^g and the lift c -> c*t^0 both commute with it.
"""

from fractions import Fraction

from absl import logging

from algebra import cyclotomic
from algebra.value_group import GroupVector
from errors import ContextMismatch
from errors import ExpressionError
from errors import IndeterminateLeadingTerm
from errors import RankMismatch
import expr_parser

INF = GroupVector.infinity()


def _is_scalar(x):
  return isinstance(x, (int, Fraction, cyclotomic.CycloElement))


class HahnContext(object):
  """Shared model data: residue field, sigma_Gamma and truncation settings.

  Attributes:
    field: the residue CycloField (carries sigma_k).
    group_aut: the GroupAut sigma_Gamma; its size fixes the rank.
    default_precision: relative GroupVector bound used when an exact series
      with infinitely many terms (an inverse or a root) must be truncated.
    max_series_terms: cap on the number of geometric/binomial terms.
  """

  def __init__(self, field, group_aut, default_precision=None,
               max_series_terms=64):
    self.field = field
    self.group_aut = group_aut
    if default_precision is None:
      default_precision = GroupVector([8] + [0] * (group_aut.rank - 1))
    elif not isinstance(default_precision, GroupVector):
      default_precision = GroupVector.parse(default_precision)
    if default_precision.rank != group_aut.rank or not (
        default_precision > GroupVector.zero(group_aut.rank)):
      raise ValueError('default_precision must be a positive rank {} vector, '
                       'got {}.'.format(group_aut.rank, default_precision))
    self.default_precision = default_precision
    self.max_series_terms = int(max_series_terms)

  @property
  def rank(self):
    return self.group_aut.rank

  def is_isometric(self):
    return self.group_aut.is_identity()

  def __eq__(self, other):
    return (isinstance(other, HahnContext) and self.field == other.field and
            self.group_aut == other.group_aut)

  def __hash__(self):
    return hash((self.field, self.group_aut))

  def __repr__(self):
    return 'HahnContext({!r}, {!r})'.format(self.field, self.group_aut)

  def check(self, other):
    if self != other:
      raise ContextMismatch('Cannot mix {!r} with {!r}.'.format(self, other))

  def vector(self, value):
    """Coerces a rational, a tuple or a GroupVector to a rank-r vector."""
    if isinstance(value, GroupVector):
      gamma = value
    elif isinstance(value, (tuple, list)):
      gamma = GroupVector(value)
    elif isinstance(value, str):
      gamma = GroupVector.parse(value)
    else:
      gamma = GroupVector([value] + [0] * (self.rank - 1))
    if not gamma.is_infinity and gamma.rank != self.rank:
      if gamma.rank == 1:
        gamma = GroupVector(list(gamma.coords) + [0] * (self.rank - 1))
      else:
        raise RankMismatch(
            'Exponent {} does not have rank {}.'.format(gamma, self.rank))
    return gamma

  def series(self, terms=(), precision=INF):
    return HahnSeries(self, terms, precision)

  def zero(self, precision=INF):
    return HahnSeries(self, (), precision)

  def one(self):
    return self.lift(1)

  def monomial(self, coefficient, exponent):
    return HahnSeries(self, [(self.vector(exponent), coefficient)])

  def section(self, gamma):
    """s(gamma) = t^gamma, exact."""
    gamma = self.vector(gamma)
    if gamma.is_infinity:
      raise ValueError('The section is only defined on finite values.')
    return self.monomial(1, gamma)

  def lift(self, c):
    """iota(c) = c * t^0, exact."""
    return self.monomial(c, GroupVector.zero(self.rank))

  def parse(self, text):
    return parse_series(self, text)


def _merge(pairs):
  acc = {}
  for exponent, coefficient in pairs:
    if exponent in acc:
      acc[exponent] = acc[exponent] + coefficient
    else:
      acc[exponent] = coefficient
  return [(e, c) for e, c in acc.items() if not c.is_zero()]


class HahnSeries(object):
  """A truncated Hahn series with exact cyclotomic coefficients."""

  __slots__ = ('context', 'terms', 'precision')

  def __init__(self, context, terms=(), precision=INF):
    field = context.field
    precision = context.vector(precision)
    pairs = [(context.vector(e), field.coerce(c)) for e, c in terms]
    pairs = _merge(pairs)
    pairs = [(e, c) for e, c in pairs if e < precision]
    pairs.sort(key=lambda p: p[0])
    self.context = context
    self.terms = tuple(pairs)
    self.precision = precision

  # Inspection.

  def is_exact(self):
    return self.precision.is_infinity

  def is_zero(self):
    """True for the exact zero series."""
    return not self.terms and self.is_exact()

  def is_indeterminate(self):
    """True when nothing is known below a finite precision."""
    return not self.terms and not self.is_exact()

  def lower_bound(self):
    """Least exponent that may carry a nonzero coefficient."""
    return self.terms[0][0] if self.terms else self.precision

  def coefficient(self, gamma):
    gamma = self.context.vector(gamma)
    if gamma >= self.precision:
      raise IndeterminateLeadingTerm(
          'Coefficient at {} lies beyond precision {}.'.format(
              gamma, self.precision))
    for e, c in self.terms:
      if e == gamma:
        return c
    return self.context.field.zero

  def valuation(self):
    if self.is_indeterminate():
      raise IndeterminateLeadingTerm(
          'Series is O(t^{}), its valuation is unknown.'.format(
              self.precision))
    return self.lower_bound()

  def leading(self):
    """Returns (v, ac, res)."""
    field = self.context.field
    if self.is_zero():
      return INF, field.zero, field.zero
    v = self.valuation()
    ac = self.terms[0][1]
    if v.is_zero():
      return v, ac, ac
    return v, ac, field.zero

  def ac(self):
    return self.leading()[1]

  def res(self):
    return self.leading()[2]

  # Ring structure.

  def _check(self, other):
    if not isinstance(other, HahnSeries):
      return self.context.lift(other)
    self.context.check(other.context)
    return other

  def __add__(self, other):
    if not (isinstance(other, HahnSeries) or _is_scalar(other)):
      return NotImplemented
    other = self._check(other)
    return HahnSeries(self.context, self.terms + other.terms,
                      min(self.precision, other.precision))

  __radd__ = __add__

  def __neg__(self):
    return HahnSeries(self.context, [(e, -c) for e, c in self.terms],
                      self.precision)

  def __sub__(self, other):
    if not (isinstance(other, HahnSeries) or _is_scalar(other)):
      return NotImplemented
    return self + (-self._check(other))

  def __rsub__(self, other):
    if not _is_scalar(other):
      return NotImplemented
    return self._check(other) - self

  def scale(self, c):
    c = self.context.field.coerce(c)
    if c.is_zero():
      return self.context.zero()
    return HahnSeries(self.context, [(e, c * a) for e, a in self.terms],
                      self.precision)

  def __mul__(self, other):
    if not (isinstance(other, HahnSeries) or _is_scalar(other)):
      return NotImplemented
    if not isinstance(other, HahnSeries):
      return self.scale(other)
    self._check(other)
    precision = min(self.precision + other.lower_bound(),
                    other.precision + self.lower_bound())
    pairs = [(e + f, a * b) for e, a in self.terms for f, b in other.terms
             if e + f < precision]
    return HahnSeries(self.context, pairs, precision)

  __rmul__ = __mul__

  def truncate(self, bound):
    bound = self.context.vector(bound)
    return HahnSeries(self.context, self.terms, min(self.precision, bound))

  def _split_leading(self):
    """Writes self = c*t^v*(1 + h) with v(h) > 0; returns (v, c, h)."""
    v, c, _ = self.leading()
    normalized = self * self.context.monomial(c.inverse(), -v)
    return v, c, normalized - 1

  def _relative_precision(self, v, h):
    if not self.is_exact():
      return self.precision - v
    if h.is_zero():
      return INF
    return self.context.default_precision

  def _power_series(self, h, coefficients, relative):
    """Sums coefficients(k) * h^k for k >= 0 to relative precision."""
    ctx = self.context
    acc = ctx.one().truncate(relative)
    if h.is_zero():
      return acc
    h = h.truncate(relative)
    power = ctx.one()
    for k in range(1, ctx.max_series_terms + 1):
      power = power * h
      if not power.terms or power.lower_bound() >= relative:
        return acc
      acc = acc + power * coefficients(k)
    power = power * h
    if power.terms and power.lower_bound() < relative:
      logging.warning('Series expansion capped at %d terms; precision lowered '
                      'to relative %s.', ctx.max_series_terms,
                      power.lower_bound())
      acc = acc.truncate(power.lower_bound())
    return acc

  def inverse(self):
    """Multiplicative inverse to the available precision; 0^-1 = 0."""
    if self.is_zero():
      return self
    v, c, h = self._split_leading()
    relative = self._relative_precision(v, h)
    unit_inverse = self._power_series(h, lambda k: (-1)**k, relative)
    return unit_inverse * self.context.monomial(c.inverse(), -v)

  def __truediv__(self, other):
    if not (isinstance(other, HahnSeries) or _is_scalar(other)):
      return NotImplemented
    if not isinstance(other, HahnSeries):
      return self.scale(self.context.field.coerce(other).inverse())
    return self * self._check(other).inverse()

  def __rtruediv__(self, other):
    return self._check(other) * self.inverse()

  def __pow__(self, k):
    k = int(k)
    base = self if k >= 0 else self.inverse()
    result = self.context.one()
    k = abs(k)
    while k:
      if k & 1:
        result = result * base
      k >>= 1
      if k:
        base = base * base
    return result

  def root(self, d):
    """A d-th root, or None when ac has no d-th root of the form +-zeta^j*q."""
    d = int(d)
    if d < 1:
      raise ValueError('Root degree must be positive, got {}.'.format(d))
    if self.is_zero():
      return self
    v, c, h = self._split_leading()
    c_root = cyclotomic.residue_root(self.context.field, c, d)
    if c_root is None:
      return None
    alpha = Fraction(1, d)
    relative = self._relative_precision(v, h)

    def binomial(k):
      coefficient = Fraction(1)
      for j in range(k):
        coefficient *= (alpha - j) / (j + 1)
      return coefficient

    unit_root = self._power_series(h, binomial, relative)
    return unit_root * self.context.monomial(c_root, v / d)

  def sigma(self, power=1):
    """sigma^power, acting on coefficients, exponents and the precision."""
    ctx = self.context
    if power == 0:
      return self
    aut = ctx.group_aut
    return HahnSeries(ctx, [(aut.apply(e, power), ctx.field.sigma(c, power))
                            for e, c in self.terms],
                      aut.apply(self.precision, power))

  def unit_part(self):
    """z / s(v(z)): valuation 0 with the same ac."""
    if self.is_zero():
      raise IndeterminateLeadingTerm('The unit part of 0 is undefined.')
    return self * self.context.section(-self.valuation())

  # Comparison and printing.

  def __eq__(self, other):
    if not isinstance(other, HahnSeries):
      try:
        other = self.context.lift(other)
      except (TypeError, ValueError):
        return NotImplemented
    return (self.context == other.context and self.terms == other.terms and
            self.precision == other.precision)

  def __ne__(self, other):
    result = self.__eq__(other)
    return result if result is NotImplemented else not result

  def __hash__(self):
    # Exact constants hash like the scalar they equal.
    if self.is_exact() and all(e.is_zero() for e, _ in self.terms):
      return hash(self.terms[0][1]) if self.terms else hash(0)
    return hash((self.terms, self.precision))

  def agrees_with(self, other):
    """Equality of the known parts, up to the smaller precision."""
    other = self._check(other)
    bound = min(self.precision, other.precision)
    return self.truncate(bound).terms == other.truncate(bound).terms

  def __str__(self):
    return format_series(self)

  def __repr__(self):
    return 'HahnSeries({})'.format(self)


def _format_exponent(gamma):
  if gamma.rank == 1:
    return '({})'.format(gamma.coords[0])
  return '({})'.format(','.join(str(c) for c in gamma.coords))


def format_series(f):
  """Canonical literal, e.g. `1 + 1/2*t^(1) - 1/8*t^(2) + O(t^(3))`."""
  pieces = []
  for e, c in f.terms:
    coefficient = str(c)
    if c.num_terms() > 1:
      coefficient = '({})'.format(coefficient)
    if e.is_zero():
      piece = coefficient
    elif c == 1:
      piece = 't^' + _format_exponent(e)
    elif c == -1:
      piece = '-t^' + _format_exponent(e)
    else:
      piece = '{}*t^{}'.format(coefficient, _format_exponent(e))
    pieces.append(piece)
  if not f.is_exact():
    pieces.append('O(t^{})'.format(_format_exponent(f.precision)))
  if not pieces:
    return '0'
  text = pieces[0]
  for piece in pieces[1:]:
    text += ' - ' + piece[1:] if piece.startswith('-') else ' + ' + piece
  return text


def format_coefficient(c):
  """Prints a series as a factor: bare when it is a single rational."""
  text = str(c)
  if len(c.terms) == 1 and c.is_exact() and c.terms[0][0].is_zero() and (
      c.terms[0][1].num_terms() == 1):
    return text
  return '({})'.format(text)


def format_monomials(monomials):
  """Joins (coefficient series, [factor strings]) pairs into a sum."""
  pieces = []
  for c, factors in monomials:
    sign = ''
    if str(c).startswith('-'):
      sign, c = '-', -c
    body = '*'.join(factors)
    if not factors:
      piece = format_coefficient(c)
    elif c == 1:
      piece = body
    else:
      piece = '{}*{}'.format(format_coefficient(c), body)
    pieces.append(sign + piece)
  if not pieces:
    return '0'
  text = pieces[0]
  for piece in pieces[1:]:
    text += ' - ' + piece[1:] if piece.startswith('-') else ' + ' + piece
  return text


class SeriesAlgebra(object):
  """Expression hooks that build HahnSeries values."""

  def __init__(self, context):
    self.context = context

  def number(self, q):
    return self.context.lift(q)

  def constant(self, name):
    field = self.context.field
    if name == 'i':
      try:
        return field.imaginary_unit()
      except ValueError as e:
        raise ExpressionError(str(e))
    if name == 'z':
      return field.zeta()
    return None

  def atom(self, name, exponent):
    ctx = self.context
    if name == 't':
      gamma = ctx.vector(tuple(exponent) if exponent else 1)
      return ctx.section(gamma)
    c = self.constant(name)
    if c is None:
      raise ExpressionError('Unknown symbol {!r} in a series literal.'.format(
          name))
    value = ctx.lift(c)
    return value if exponent is None else value ** _integer(exponent)

  def call(self, name, exponent, args):
    if name == 'O' and exponent is None and len(args) == 1:
      bound = args[0]
      if len(bound.terms) != 1 or not bound.is_exact():
        raise ExpressionError('O(...) takes a single monomial t^(q).')
      return self.context.zero(bound.terms[0][0])
    raise ExpressionError('Unknown function {!r} in a series literal.'.format(
        name))

  def divide(self, a, b):
    return a / b


def _integer(exponent):
  if len(exponent) != 1 or exponent[0].denominator != 1:
    raise ExpressionError('Expected an integer power, got {}.'.format(
        exponent))
  return int(exponent[0])


def parse_series(context, text):
  value = expr_parser.parse_expression(text, SeriesAlgebra(context))
  if not isinstance(value, HahnSeries):
    value = context.lift(value)
  return value


def hs_add(f, g):
  return f + g


def hs_mul(f, g):
  return f * g


def hs_inv(f):
  return f.inverse()


def hs_leading(f):
  return f.leading()


def hs_embed(context, kind, value):
  """kind is 'section' (value a group element) or 'lift' (a residue)."""
  if kind == 'section':
    return context.section(value)
  if kind == 'lift':
    return context.lift(value)
  raise ValueError('Unknown embedding kind: {}'.format(kind))


def hs_sigma(f, power=1):
  return f.sigma(power)


def hs_unit_part(z):
  return z.unit_part()


def hs_root(f, d):
  return f.root(d)


def gauss_valuation(cs, a):
  """min_i {v(c_i) + i*v(a)}, skipping exact zero coefficients."""
  va = a.valuation()
  best = INF
  for i, c in enumerate(cs):
    if c.is_zero():
      continue
    best = min(best, c.valuation() + va.scale(i))
  return best


def is_torsion_free_witness(z, n):
  """Checks that v(z^n) = 0 forces v(z) = 0."""
  zn = z ** n
  if not zn.valuation().is_zero():
    return True
  return z.valuation().is_zero()
