# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Difference polynomials G(x) = g(x, sigma(x), ..., sigma^n(x)).

A SigmaPolynomial maps multi-indices (i_0, ..., i_n) to Hahn series
coefficients. Taylor coefficients are the normalized partial derivatives of
g in T_0..T_n, which makes

  G(a + e) = sum_i G_(i)(a) * prod_j sigma^j(e)^(i_j)

an exact identity.
"""
import collections
import itertools
import math

from absl import logging

from algebra import cyclotomic
from algebra.value_group import GroupVector
from errors import ExpressionError
from errors import IndeterminateAtPrecision
from errors import NonIsometric
from errors import ResidueObstruction
from errors import TropdiffError
import expr_parser
import hahn_series

INF = GroupVector.infinity()

Complexity = collections.namedtuple('Complexity',
                                    ['order', 'top_degree', 'total_degree'])

HenselConfig = collections.namedtuple('HenselConfig', ['ok', 'delta', 'reason'])

HenselResult = collections.namedtuple(
    'HenselResult', ['root', 'delta', 'steps', 'iterations'])

LinearValuation = collections.namedtuple(
    'LinearValuation', ['value', 'predicted', 'degenerate'])

ResidueReduction = collections.namedtuple(
    'ResidueReduction',
    ['residue', 'complexity', 'residue_complexity', 'preserved'])


def _pad(index, length):
  return tuple(index) + (0,) * (length - len(index))


def unit_index(j, length):
  return tuple(int(k == j) for k in range(length))


class SigmaPolynomial(object):
  """A sigma-polynomial with Hahn series coefficients."""

  def __init__(self, context, coeffs=None, order_bound=None):
    self.context = context
    coeffs = dict(coeffs or {})
    if order_bound is None:
      order_bound = max([len(i) - 1 for i in coeffs] + [0])
    length = order_bound + 1
    merged = {}
    for index, c in coeffs.items():
      if any(e < 0 for e in index):
        raise ValueError('Negative exponent in {}.'.format(index))
      if len(index) > length and any(index[length:]):
        raise ValueError('Index {} exceeds order bound {}.'.format(
            index, order_bound))
      index = _pad(tuple(int(e) for e in index[:length]), length)
      if not isinstance(c, hahn_series.HahnSeries):
        c = context.lift(c)
      context.check(c.context)
      merged[index] = merged[index] + c if index in merged else c
    self.coeffs = {i: c for i, c in merged.items() if not c.is_zero()}
    self.order_bound = order_bound

  @classmethod
  def variable(cls, context, j=0):
    """sigma^j(x)."""
    return cls(context, {unit_index(j, j + 1): context.one()})

  @classmethod
  def constant(cls, context, c):
    return cls(context, {(0,): c})

  def is_zero(self):
    return not self.coeffs

  def is_constant(self):
    return all(not any(i) for i in self.coeffs)

  def _lift(self, other):
    if isinstance(other, SigmaPolynomial):
      self.context.check(other.context)
      return other
    return SigmaPolynomial.constant(self.context, other)

  def __add__(self, other):
    other = self._lift(other)
    length = max(self.order_bound, other.order_bound) + 1
    coeffs = collections.defaultdict(self.context.zero)
    for poly in (self, other):
      for i, c in poly.coeffs.items():
        coeffs[_pad(i, length)] = coeffs[_pad(i, length)] + c
    return SigmaPolynomial(self.context, coeffs, length - 1)

  __radd__ = __add__

  def __neg__(self):
    return SigmaPolynomial(self.context,
                           {i: -c for i, c in self.coeffs.items()},
                           self.order_bound)

  def __sub__(self, other):
    return self + (-self._lift(other))

  def __rsub__(self, other):
    return self._lift(other) - self

  def __mul__(self, other):
    other = self._lift(other)
    length = max(self.order_bound, other.order_bound) + 1
    coeffs = collections.defaultdict(self.context.zero)
    for i, c in self.coeffs.items():
      for j, d in other.coeffs.items():
        k = tuple(x + y for x, y in zip(_pad(i, length), _pad(j, length)))
        coeffs[k] = coeffs[k] + c * d
    return SigmaPolynomial(self.context, coeffs, length - 1)

  __rmul__ = __mul__

  def __pow__(self, k):
    k = int(k)
    if k < 0:
      raise ValueError('sigma-polynomials only have non-negative powers.')
    result = SigmaPolynomial.constant(self.context, 1)
    for _ in range(k):
      result = result * self
    return result

  def shift(self, k=1):
    """sigma^k applied to G: coefficients get sigma^k, indices move up k."""
    if k < 0:
      raise ValueError('Only non-negative shifts are sigma-polynomials.')
    return SigmaPolynomial(
        self.context,
        {(0,) * k + i: c.sigma(k) for i, c in self.coeffs.items()},
        self.order_bound + k)

  def __eq__(self, other):
    if not isinstance(other, SigmaPolynomial):
      return NotImplemented
    length = max(self.order_bound, other.order_bound) + 1
    return (self.context == other.context and
            {_pad(i, length): c for i, c in self.coeffs.items()} ==
            {_pad(i, length): c for i, c in other.coeffs.items()})

  def __hash__(self):
    return hash(frozenset((tuple(i), c) for i, c in self.coeffs.items()))

  def order(self):
    """Largest j with sigma^j(x) occurring; 0 for constants."""
    used = [j for i in self.coeffs for j, e in enumerate(i) if e]
    return max(used) if used else 0

  def complexity(self):
    if self.is_zero():
      raise ValueError('The zero sigma-polynomial has no complexity.')
    n = self.order()
    return Complexity(n, max(_pad(i, n + 1)[n] for i in self.coeffs),
                      max(sum(i) for i in self.coeffs))

  def max_exponents(self):
    length = self.order_bound + 1
    return tuple(max([i[j] for i in self.coeffs] + [0]) for j in range(length))

  def __call__(self, a):
    return self.evaluate(a)

  def evaluate(self, a):
    """G(a), substituting sigma^j(a) for T_j."""
    if not isinstance(a, hahn_series.HahnSeries):
      a = self.context.lift(a)
    self.context.check(a.context)
    maxes = self.max_exponents()
    powers = []
    for j, top in enumerate(maxes):
      base = a.sigma(j) if top else None
      table = [self.context.one()]
      for _ in range(top):
        table.append(table[-1] * base)
      powers.append(table)
    total = self.context.zero()
    for i, c in sorted(self.coeffs.items()):
      term = c
      for j, e in enumerate(i):
        if e:
          term = term * powers[j][e]
      total = total + term
    return total

  def taylor(self, index):
    """G_(i) with g_(i) = (1/i!) d^i g."""
    index = tuple(int(e) for e in index)
    length = max(self.order_bound + 1, len(index))
    index = _pad(index, length)
    coeffs = {}
    for e, c in self.coeffs.items():
      e = _pad(e, length)
      if all(x >= y for x, y in zip(e, index)):
        factor = 1
        for x, y in zip(e, index):
          factor *= math.comb(x, y)
        coeffs[tuple(x - y for x, y in zip(e, index))] = c * factor
    return SigmaPolynomial(self.context, coeffs, length - 1)

  def taylor_indices(self):
    """Every nonzero multi-index i with G_(i) != 0."""
    maxes = self.max_exponents()
    for index in itertools.product(*[range(m + 1) for m in maxes]):
      if any(index) and not self.taylor(index).is_zero():
        yield index

  def trop(self, gamma):
    """min over monomials of v(c) + sum_j i_j * sigma_Gamma^j(gamma)."""
    aut = self.context.group_aut
    best = INF
    for i, c in self.coeffs.items():
      value = c.valuation()
      for j, e in enumerate(i):
        if e:
          value = value + aut.apply(gamma, j).scale(e)
      best = min(best, value)
    return best

  def __str__(self):
    return format_sigma_poly(self)

  def __repr__(self):
    return 'SigmaPolynomial({})'.format(self)


def _variable_name(j):
  if j == 0:
    return 'x'
  if j == 1:
    return 's(x)'
  return 's^{}(x)'.format(j)


def format_sigma_poly(g):
  monomials = []
  for i in sorted(g.coeffs, key=lambda i: (-sum(i), tuple(-e for e in i))):
    factors = []
    for j, e in enumerate(i):
      if e == 1:
        factors.append(_variable_name(j))
      elif e:
        factors.append('{}^{}'.format(_variable_name(j), e))
    monomials.append((g.coeffs[i], factors))
  return hahn_series.format_monomials(monomials)


class SigmaPolyAlgebra(object):
  """Expression hooks for sigma-polynomial literals over a model."""

  def __init__(self, context):
    self.context = context
    self.series = hahn_series.SeriesAlgebra(context)

  def _const(self, value):
    return SigmaPolynomial.constant(self.context, value)

  def number(self, q):
    return self._const(self.series.number(q))

  def atom(self, name, exponent):
    if name == 'x':
      g = SigmaPolynomial.variable(self.context)
      return g if exponent is None else g**hahn_series._integer(exponent)  # pylint: disable=protected-access
    return self._const(self.series.atom(name, exponent))

  def call(self, name, exponent, args):
    if name == 's':
      if len(args) != 1:
        raise ExpressionError('s(...) takes one argument.')
      k = 1 if exponent is None else hahn_series._integer(exponent)  # pylint: disable=protected-access
      if k < 0:
        raise ExpressionError('Negative sigma powers are not sigma-polynomials.')
      return args[0].shift(k)
    if name == 'O':
      bounds = []
      for arg in args:
        if not arg.is_constant():
          raise ExpressionError('O(...) takes a monomial in t.')
        bounds.append(arg.coeffs.get((0,) * (arg.order_bound + 1),
                                     self.context.zero()))
      return self._const(self.series.call(name, exponent, bounds))
    raise ExpressionError('Unknown function {!r}.'.format(name))

  def divide(self, a, b):
    if not b.is_constant() or b.is_zero():
      raise ExpressionError('Can only divide by a nonzero constant.')
    c = b.coeffs[(0,) * (b.order_bound + 1)]
    return a * c.inverse()


def parse_sigma_poly(context, text):
  return expr_parser.parse_expression(text, SigmaPolyAlgebra(context))


def sp_eval(g, a):
  return g.evaluate(a)


def sp_complexity(g):
  return g.complexity()


def sp_taylor(g, index):
  return g.taylor(index)


def _determinate_valuation(f, what):
  if f.is_indeterminate():
    raise IndeterminateAtPrecision(
        '{} is O(t^{}); raise the working precision.'.format(
            what, f.precision))
  return f.valuation()


def sp_hensel_config(g, a):
  """Checks the sigma-Hensel configuration of (G, a).

  Returns:
    HenselConfig(ok, delta, reason): delta = v(G(a)) when ok, otherwise
    reason names the first violated clause.

  Raises:
    IndeterminateAtPrecision: if a clause cannot be decided.
  """
  if g.is_zero() or g.is_constant():
    return HenselConfig(False, None, 'G is constant')
  value = g.evaluate(a)
  if value.is_zero():
    return HenselConfig(False, None, 'G(a) = 0')
  delta = _determinate_valuation(value, 'G(a)')
  if not delta > GroupVector.zero(g.context.rank):
    return HenselConfig(False, None, 'v(G(a)) = {} is not > 0'.format(delta))
  for index in g.taylor_indices():
    v = g.taylor(index).evaluate(a)
    v = INF if v.is_zero() else _determinate_valuation(
        v, 'G_{}(a)'.format(index))
    if not v.is_zero():
      return HenselConfig(
          False, None, 'v(G_{}(a)) = {} is not 0'.format(list(index), v))
  return HenselConfig(True, delta, None)


def sp_hensel_lift(g, a, target_precision, max_iterations=64):
  """sigma-Hensel lifting in the isometric case.

  Each step solves the residue equation
    sum_j res(G_(e_j)(a)) * sigma^j(c) = -ac(G(a))
  and moves a by c * t^delta, delta = v(G(a)).

  Args:
    g: the SigmaPolynomial.
    a: HahnSeries approximate root in sigma-Hensel configuration.
    target_precision: stop once v(G(b)) >= this.
    max_iterations: bound on the number of evaluations.

  Returns:
    HenselResult(root, delta, steps, iterations); steps lists (delta, c).

  Raises:
    NonIsometric: sigma_Gamma is not the identity.
    ResidueObstruction: a residue equation has no solution in Q(zeta_n).
    IndeterminateAtPrecision: precision or the iteration budget ran out.
    TropdiffError: (G, a) is not in sigma-Hensel configuration.
  """
  ctx = g.context
  if not ctx.is_isometric():
    raise NonIsometric('sigma-Hensel lifting needs sigma_Gamma = id, got '
                       '{!r}.'.format(ctx.group_aut))
  if not isinstance(a, hahn_series.HahnSeries):
    a = ctx.lift(a)
  target = ctx.vector(target_precision)
  config = sp_hensel_config(g, a)
  if not config.ok:
    raise TropdiffError('Not in sigma-Hensel configuration: {}.'.format(
        config.reason))
  field = ctx.field
  linear = [g.taylor(unit_index(j, g.order_bound + 1))
            for j in range(g.order_bound + 1)]
  steps = []
  iterations = 0
  current = a
  while True:
    iterations += 1
    value = g.evaluate(current)
    if value.is_zero():
      break
    if value.is_indeterminate():
      if value.precision >= target:
        break
      raise IndeterminateAtPrecision(
          'G(b) is O(t^{}) below the target {}.'.format(value.precision,
                                                       target))
    delta = value.valuation()
    if delta >= target:
      break
    if iterations > max_iterations:
      raise IndeterminateAtPrecision(
          'No convergence to {} after {} iterations.'.format(
              target, max_iterations))
    alphas = [lin.evaluate(current).res() for lin in linear]
    if all(alpha.is_zero() for alpha in alphas):
      raise ResidueObstruction('All linear residues vanish at {}.'.format(
          current))
    c = cyclotomic.solve_linear_difference(field, alphas, -value.ac())
    if c is None:
      raise ResidueObstruction(
          'sum_j ({}) * sigma^j(c) = {} has no solution in {!r}.'.format(
              ', '.join(str(x) for x in alphas), -value.ac(), field))
    logging.debug('sigma-Hensel step %d: delta=%s, c=%s', iterations, delta, c)
    steps.append((delta, c))
    current = current + ctx.monomial(c, delta)
  logging.info('sigma-Hensel lift reached %s in %d iterations.', target,
               iterations)
  return HenselResult(current, config.delta, steps, iterations)


def _valuation_or_inf(f):
  if f.is_zero():
    return INF
  return _determinate_valuation(f, 'f(a)')


def sp_is_regular(a, family):
  """True iff v(f(a)) = trop(f)(v(a)) for every f in family."""
  for f in family:
    if f.is_zero():
      raise ValueError('Regularity is tested against nonzero polynomials.')
    gamma = _valuation_or_inf(a)
    if _valuation_or_inf(f.evaluate(a)) != f.trop(gamma):
      return False
  return True


def sp_linear_valuation(bs, a):
  """Valuation of P(a) = sum_i b_i sigma^i(a) against its prediction.

  Returns:
    LinearValuation(value, predicted, degenerate): predicted is
    min_i v(b_i) + sigma_Gamma^i(v(a)), and degenerate tells whether the
    residues of the minimal terms cancel.
  """
  if not bs:
    raise ValueError('Empty linear sigma-polynomial.')
  ctx = bs[0].context
  field = ctx.field
  va = a.valuation()
  terms = []
  for i, b in enumerate(bs):
    if b.is_zero():
      continue
    terms.append((b.valuation() + ctx.group_aut.apply(va, i), b.ac(), i))
  predicted = min(v for v, _, _ in terms)
  leading = field.zero
  for v, ac, i in terms:
    if v == predicted:
      leading = leading + ac * field.sigma(a.ac(), i)
  value = sum((b * a.sigma(i) for i, b in enumerate(bs)), ctx.zero())
  return LinearValuation(_valuation_or_inf(value), predicted,
                         leading.is_zero())


def sp_residue(g):
  """res(G): the sigma-polynomial over the residue field.

  Coefficients of positive valuation reduce to 0; every coefficient must lie
  in the valuation ring.

  Raises:
    ValueError: a coefficient has negative valuation.
    IndeterminateAtPrecision: a coefficient is O(t^p) with p <= 0.
  """
  ctx = g.context
  zero = GroupVector.zero(ctx.rank)
  coeffs = {}
  for index, c in g.coeffs.items():
    if c.is_indeterminate():
      if c.precision > zero:
        continue
      raise IndeterminateAtPrecision(
          'Coefficient of {} is O(t^{}); its residue is unknown.'.format(
              list(index), c.precision))
    if c.valuation() < zero:
      raise ValueError('Coefficient {} of {} is not in the valuation '
                       'ring.'.format(c, list(index)))
    coeffs[index] = ctx.lift(c.res())
  return SigmaPolynomial(ctx, coeffs, g.order_bound)


def sp_residue_reduction(g):
  """Compares the complexity of G with that of res(G).

  When they agree and res(G) is minimal for res(a), a root a of G adds no new
  values: E<a> keeps the value group of E and has residue field k(E)<res(a)>.

  Returns:
    ResidueReduction(residue, complexity, residue_complexity, preserved);
    residue_complexity is None when res(G) = 0.
  """
  if g.is_zero() or g.is_constant():
    raise ValueError('Residue reduction needs a nonconstant sigma-polynomial.')
  complexity = g.complexity()
  residue = sp_residue(g)
  residue_complexity = None if residue.is_zero() else residue.complexity()
  return ResidueReduction(residue, complexity, residue_complexity,
                          residue_complexity == complexity)
