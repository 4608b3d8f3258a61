# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Tropical polynomials, initial forms and binomial cosets over a Hahn model.

A Laurent polynomial f = sum c_u x^u with HahnSeries coefficients
tropicalizes to gamma -> min{v(c_u) + <u, gamma>}. Initial forms use the
fixed cross-section gamma -> t^gamma, so in_gamma(f) collects ac(c_u) over
the exponents attaining that minimum.

Binomial cosets {y : y^u = b_u, u in Lambda} are stored on the canonical HNF
basis of Lambda.
"""

import collections
import re

from absl import logging

from algebra import int_lattice
from algebra.value_group import GroupVector
from algebra.value_group import pairing
from errors import ExpressionError
from errors import IndeterminateAtPrecision
from errors import IndeterminateLeadingTerm
import expr_parser
import hahn_series

KapranovReport = collections.namedtuple(
    'KapranovReport', ['passed', 'trop_roots', 'newton', 'discrepancy'])
BinomialInitial = collections.namedtuple(
    'BinomialInitial', ['lattice', 'targets', 'irreducible', 'proper'])
FundamentalResult = collections.namedtuple(
    'FundamentalResult', ['status', 'witness', 'reason', 'precision'],
    defaults=(None,))

CONSISTENT = 'consistent'
INCONSISTENT = 'inconsistent'
UNKNOWN = 'unknown'

_VARIABLE_RE = re.compile(r'^y([1-9]\d*)$')


def _pad(u, n):
  return tuple(u) + (0,) * (n - len(u))


def _valuation(c):
  try:
    return c.valuation()
  except IndeterminateLeadingTerm as e:
    raise IndeterminateAtPrecision(str(e))


def _variable_name(j, nvars):
  return 'x' if nvars == 1 else 'y{}'.format(j + 1)


def _format_factors(u, nvars):
  factors = []
  for j, e in enumerate(u):
    if e == 1:
      factors.append(_variable_name(j, nvars))
    elif e:
      factors.append('{}^{}'.format(_variable_name(j, nvars), e))
  return factors


def monomial_value(z, u):
  """z^u for a tuple of series z and an integer vector u."""
  if len(z) != len(u):
    raise ValueError('Point of length {} for exponent {}.'.format(len(z), u))
  result = z[0].context.one()
  for z_j, e in zip(z, u):
    if e:
      result = result * z_j ** e
  return result


class LaurentPoly(object):
  """sum_u c_u x^u with nonzero HahnSeries coefficients, u in Z^n."""

  def __init__(self, context, coeffs=None, nvars=None):
    coeffs = coeffs or {}
    if nvars is None:
      nvars = max([len(u) for u in coeffs] + [0])
    acc = {}
    for u, c in coeffs.items():
      if len(u) > nvars:
        raise ValueError('Exponent {} has more than {} variables.'.format(
            u, nvars))
      u = _pad(u, nvars)
      if not isinstance(c, hahn_series.HahnSeries):
        c = context.lift(c)
      context.check(c.context)
      acc[u] = acc[u] + c if u in acc else c
    self.context = context
    self.nvars = nvars
    self.coeffs = {u: c for u, c in acc.items() if not c.is_zero()}

  @classmethod
  def constant(cls, context, c, nvars=0):
    return cls(context, {(0,) * nvars: c}, nvars)

  @classmethod
  def variable(cls, context, j, nvars=None):
    nvars = j + 1 if nvars is None else nvars
    return cls(context, {tuple(int(k == j) for k in range(nvars)): 1}, nvars)

  def is_zero(self):
    return not self.coeffs

  def is_monomial(self):
    return len(self.coeffs) == 1

  def support(self):
    return sorted(self.coeffs)

  def _lift(self, other):
    if isinstance(other, LaurentPoly):
      self.context.check(other.context)
      return other
    if isinstance(other, hahn_series.HahnSeries) or hahn_series._is_scalar(
        other):
      return LaurentPoly.constant(self.context, other)
    return None

  def __add__(self, other):
    other = self._lift(other)
    if other is None:
      return NotImplemented
    n = max(self.nvars, other.nvars)
    coeffs = {_pad(u, n): c for u, c in self.coeffs.items()}
    for u, c in other.coeffs.items():
      u = _pad(u, n)
      coeffs[u] = coeffs[u] + c if u in coeffs else c
    return LaurentPoly(self.context, coeffs, n)

  __radd__ = __add__

  def __neg__(self):
    return LaurentPoly(self.context, {u: -c for u, c in self.coeffs.items()},
                       self.nvars)

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
    n = max(self.nvars, other.nvars)
    coeffs = {}
    for u, a in self.coeffs.items():
      for w, b in other.coeffs.items():
        key = tuple(x + y for x, y in zip(_pad(u, n), _pad(w, n)))
        coeffs[key] = coeffs[key] + a * b if key in coeffs else a * b
    return LaurentPoly(self.context, coeffs, n)

  __rmul__ = __mul__

  def __pow__(self, k):
    k = int(k)
    if k < 0:
      if not self.is_monomial():
        raise ValueError('Only monomials have negative powers.')
      (u, c), = self.coeffs.items()
      return LaurentPoly(self.context, {tuple(x * k for x in u): c**k},
                         self.nvars)
    result = LaurentPoly.constant(self.context, 1, self.nvars)
    for _ in range(k):
      result = result * self
    return result

  def __eq__(self, other):
    if not isinstance(other, LaurentPoly):
      return NotImplemented
    n = max(self.nvars, other.nvars)
    return (self.context == other.context and
            {_pad(u, n): c for u, c in self.coeffs.items()} ==
            {_pad(u, n): c for u, c in other.coeffs.items()})

  def __hash__(self):
    return hash(frozenset(self.coeffs.items()))

  def sigma(self, power=1):
    """Applies sigma to every coefficient; exponents are untouched."""
    return LaurentPoly(self.context,
                       {u: c.sigma(power) for u, c in self.coeffs.items()},
                       self.nvars)

  def evaluate(self, z):
    total = self.context.zero()
    for u, c in self.coeffs.items():
      total = total + c * monomial_value(z, u)
    return total

  def __call__(self, *z):
    return self.evaluate(z)

  def __str__(self):
    monomials = [(self.coeffs[u], _format_factors(u, self.nvars))
                 for u in sorted(self.coeffs, reverse=True)]
    return hahn_series.format_monomials(monomials)

  def __repr__(self):
    return 'LaurentPoly({})'.format(self)


class LaurentAlgebra(object):
  """Expression hooks for `y1^2*y2^-1 - (1+t)*x` style literals."""

  def __init__(self, context):
    self.context = context
    self.series = hahn_series.SeriesAlgebra(context)

  def _const(self, c):
    return LaurentPoly.constant(self.context, c)

  def number(self, q):
    return self._const(self.series.number(q))

  def atom(self, name, exponent):
    if name == 'x':
      j = 0
    else:
      m = _VARIABLE_RE.match(name)
      if m is None:
        return self._const(self.series.atom(name, exponent))
      j = int(m.group(1)) - 1
    e = 1 if exponent is None else hahn_series._integer(exponent)
    return LaurentPoly(self.context, {tuple(int(k == j) * e
                                            for k in range(j + 1)): 1})

  def call(self, name, exponent, args):
    bounds = []
    for arg in args:
      if arg.nvars and any(any(u) for u in arg.coeffs):
        raise ExpressionError('{}(...) takes a constant.'.format(name))
      bounds.append(sum(arg.coeffs.values(), self.context.zero()))
    return self._const(self.series.call(name, exponent, bounds))

  def divide(self, a, b):
    if any(any(u) for u in b.coeffs) or b.is_zero():
      raise ExpressionError('Can only divide by a nonzero constant.')
    return a * sum(b.coeffs.values(), self.context.zero()).inverse()


def parse_laurent(context, text, nvars=None):
  """Parses a Laurent polynomial; nvars pads (or checks) the variable count."""
  f = expr_parser.parse_expression(text, LaurentAlgebra(context))
  if nvars is not None:
    if f.nvars > nvars:
      raise ExpressionError('{!r} uses more than {} variables.'.format(
          text, nvars))
    f = LaurentPoly(context, f.coeffs, nvars)
  return f


class TropicalPolynomial(object):
  """min_i {gamma_i + <u_i, x>} over pieces (gamma_i, u_i)."""

  def __init__(self, pieces):
    pieces = {(gamma, tuple(int(x) for x in u)) for gamma, u in pieces}
    if not pieces:
      raise ValueError('A tropical polynomial needs at least one piece.')
    lengths = {len(u) for _, u in pieces}
    if len(lengths) != 1:
      raise ValueError('Pieces have exponents of lengths {}.'.format(
          sorted(lengths)))
    if any(gamma.is_infinity for gamma, _ in pieces):
      raise ValueError('Pieces must have finite constants.')
    self.pieces = tuple(sorted(pieces, key=lambda p: (p[1], p[0])))
    self.nvars = lengths.pop()

  def _point(self, gamma):
    if isinstance(gamma, GroupVector):
      gamma = [gamma]
    gamma = list(gamma)
    if len(gamma) != self.nvars:
      raise ValueError('Point of dimension {} for {} variables.'.format(
          len(gamma), self.nvars))
    return gamma

  def evaluate(self, gamma):
    """Returns (value, argmin_count) at the point gamma."""
    gamma = self._point(gamma)
    values = [c + pairing(u, gamma) for c, u in self.pieces]
    best = min(values)
    return best, sum(1 for value in values if value == best)

  def is_root(self, gamma):
    return self.evaluate(gamma)[1] >= 2

  def __add__(self, other):
    """Tropical sum: the pointwise minimum."""
    return TropicalPolynomial(self.pieces + other.pieces)

  def __mul__(self, other):
    """Tropical product: the pointwise sum."""
    return TropicalPolynomial(
        [(c + d, tuple(x + y for x, y in zip(u, w)))
         for c, u in self.pieces for d, w in other.pieces])

  def __eq__(self, other):
    return isinstance(other, TropicalPolynomial) and self.pieces == other.pieces

  def __hash__(self):
    return hash(self.pieces)

  def __repr__(self):
    return 'TropicalPolynomial({})'.format(
        [(str(c), list(u)) for c, u in self.pieces])


def tropicalize(f):
  """trop(f) = {(v(c_u), u)}.

  Raises:
    IndeterminateAtPrecision: if some coefficient has no known leading term.
    ValueError: for the zero polynomial.
  """
  if f.is_zero():
    raise ValueError('The zero polynomial has no tropicalization.')
  return TropicalPolynomial([(_valuation(c), u) for u, c in f.coeffs.items()])


def trop_eval(trop, gamma):
  return trop.evaluate(gamma)


def trop_add(a, b):
  return a + b


def trop_roots_univariate(trop):
  """All breakpoints of a univariate tropical polynomial, sorted."""
  if trop.nvars != 1:
    raise ValueError('Expected a univariate tropical polynomial, got {} '
                     'variables.'.format(trop.nvars))
  candidates = set()
  for k, (c, (u,)) in enumerate(trop.pieces):
    for d, (w,) in trop.pieces[k + 1:]:
      if u != w:
        candidates.add((c - d) / (w - u))
  return sorted(gamma for gamma in candidates if trop.is_root(gamma))


class InitialForm(object):
  """A Laurent polynomial over the residue field."""

  def __init__(self, context, coeffs, nvars):
    self.context = context
    self.nvars = nvars
    self.coeffs = {u: c for u, c in coeffs.items() if not c.is_zero()}

  def is_monomial(self):
    return len(self.coeffs) <= 1

  def sigma(self, power=1):
    field = self.context.field
    return InitialForm(self.context,
                       {u: field.sigma(c, power) for u, c in self.coeffs.items()},
                       self.nvars)

  def __eq__(self, other):
    return (isinstance(other, InitialForm) and self.nvars == other.nvars and
            self.coeffs == other.coeffs)

  def __hash__(self):
    return hash(frozenset(self.coeffs.items()))

  def __str__(self):
    monomials = [(self.context.lift(self.coeffs[u]),
                  _format_factors(u, self.nvars))
                 for u in sorted(self.coeffs, reverse=True)]
    return hahn_series.format_monomials(monomials)

  def __repr__(self):
    return 'InitialForm({})'.format(self)


def initial_form(f, gamma):
  """in_gamma(f) = sum of ac(c_u) x^u over u minimizing v(c_u) + <u, gamma>."""
  trop = tropicalize(f)
  gamma = trop._point(gamma)
  values = {u: _valuation(c) + pairing(u, gamma) for u, c in f.coeffs.items()}
  best = min(values.values())
  return InitialForm(f.context, {u: f.coeffs[u].ac()
                                 for u, value in values.items()
                                 if value == best}, f.nvars)


def _slope(p, q):
  return (q[1] - p[1]) / (q[0] - p[0])


def newton_valuations(f):
  """Valuations of the roots of a univariate f, with multiplicity.

  Reads the slopes of the lower convex hull of {(u, v(c_u))}: an edge of
  slope s and horizontal length l contributes -s with multiplicity l.
  """
  if f.nvars != 1:
    raise ValueError('Newton polygons need a univariate polynomial.')
  if len(f.coeffs) < 2:
    raise ValueError('A monomial has no roots in the torus: {}'.format(f))
  points = sorted((u[0], _valuation(c)) for u, c in f.coeffs.items())
  # Andrew's monotone chain, lower half.
  hull = []
  for p in points:
    while len(hull) >= 2 and _slope(hull[-1], p) <= _slope(hull[-2], hull[-1]):
      hull.pop()
    hull.append(p)
  valuations = []
  for p, q in zip(hull, hull[1:]):
    valuations.extend([-_slope(p, q)] * (q[0] - p[0]))
  return sorted(valuations)


def kapranov_check(f):
  """Compares tropical roots, Newton valuations and initial forms."""
  roots = trop_roots_univariate(tropicalize(f))
  newton = newton_valuations(f)
  discrepancy = None
  if roots != sorted(set(newton)):
    discrepancy = 'tropical roots {} differ from root valuations {}'.format(
        [str(g) for g in roots], [str(g) for g in newton])
  else:
    for gamma in roots:
      form = initial_form(f, gamma)
      if form.is_monomial():
        discrepancy = 'in_{}(f) = {} is a monomial'.format(gamma, form)
        break
  if discrepancy:
    logging.warning('Kapranov check failed for %s: %s', f, discrepancy)
  return KapranovReport(discrepancy is None, roots, newton, discrepancy)


class BinomialCoset(object):
  """{y in (K^x)^N : y^u = b_u for u in the HNF basis of Lambda}.

  Attributes:
    context: the HahnContext of the targets.
    lattice: the IntLattice Lambda.
    targets: one HahnSeries per basis row.
    proper: False when the defining equations are contradictory.
  """

  def __init__(self, context, lattice, targets, proper=True):
    targets = tuple(t if isinstance(t, hahn_series.HahnSeries)
                    else context.lift(t) for t in targets)
    if len(targets) != lattice.rank:
      raise ValueError('{} targets for a rank {} lattice.'.format(
          len(targets), lattice.rank))
    for t in targets:
      context.check(t.context)
    self.context = context
    self.lattice = lattice
    self.targets = targets
    self.proper = proper

  @classmethod
  def from_equations(cls, context, rows, targets):
    """Canonicalizes y^{rows[i]} = targets[i] onto the HNF basis."""
    if len(rows) != len(targets):
      raise ValueError('{} rows but {} targets.'.format(len(rows),
                                                        len(targets)))
    targets = [t if isinstance(t, hahn_series.HahnSeries) else context.lift(t)
               for t in targets]
    h, u, rank = int_lattice.hnf_with_transform(rows)
    values = []
    for i in range(u.shape[0]):
      value = context.one()
      for j, e in enumerate(u[i]):
        if e:
          value = value * targets[j] ** int(e)
      values.append(value)
    proper = all(value.agrees_with(context.one()) for value in values[rank:])
    if not proper:
      logging.info('Binomial equations are inconsistent; coset is empty.')
    lattice = int_lattice.IntLattice([list(r) for r in h[:rank]], h.shape[1])
    return cls(context, lattice, values[:rank], proper)

  @property
  def nvars(self):
    return self.lattice.dim

  def equations(self):
    return list(zip(self.lattice.basis, self.targets))

  def contains(self, z):
    return self.proper and all(
        monomial_value(z, u).agrees_with(b) for u, b in self.equations())

  def sigma(self, power=1):
    return BinomialCoset(self.context, self.lattice,
                         [b.sigma(power) for b in self.targets], self.proper)

  def __repr__(self):
    return 'BinomialCoset({})'.format(
        ', '.join('y^{} = {}'.format(list(u), b) for u, b in self.equations()))


def binomial_initial(coset):
  """in_0 of a unit-target coset: residue targets plus the irreducible flag.

  Raises:
    ValueError: if some target is not a unit.
  """
  if not coset.proper:
    return BinomialInitial(coset.lattice, (), False, False)
  residues = []
  for u, b in coset.equations():
    if not _valuation(b).is_zero():
      raise ValueError('Target {} of y^{} is not a unit.'.format(b, list(u)))
    residues.append(b.res())
  return BinomialInitial(coset.lattice, tuple(residues),
                         int_lattice.is_primitive(coset.lattice), True)


def fundamental_check_binomial(coset, gamma):
  """Decides whether the coset has a point of valuation gamma.

  The witness is s(gamma) * w with w a unit vector solving w^u = unit part
  of b_u, found by back substitution over the HNF rows with free
  coordinates set to 1.

  Returns:
    FundamentalResult(status, witness, reason, precision) with status one of
    CONSISTENT, INCONSISTENT or UNKNOWN. A CONSISTENT witness satisfies
    z^u = b_u up to precision, the least precision of the two sides over all
    equations; it is infinite only when every equation holds exactly.
  """
  ctx = coset.context
  if isinstance(gamma, GroupVector):
    gamma = [gamma]
  gamma = [ctx.vector(g) for g in gamma]
  if len(gamma) != coset.nvars:
    raise ValueError('Point of dimension {} for {} variables.'.format(
        len(gamma), coset.nvars))
  if not coset.proper:
    return FundamentalResult(INCONSISTENT, None, 'the coset is empty')
  for u, b in coset.equations():
    vb = _valuation(b)
    value = pairing(u, gamma)
    if value != vb:
      return FundamentalResult(
          INCONSISTENT, None, '<{}, gamma> = {} but v(b) = {}'.format(
              list(u), value, vb))

  w = [ctx.one()] * coset.nvars
  for u, b in reversed(coset.equations()):
    pivot = next(j for j, e in enumerate(u) if e)
    rest = ctx.one()
    for j in range(pivot + 1, len(u)):
      if u[j]:
        rest = rest * w[j] ** u[j]
    rhs = b.unit_part() / rest
    root = rhs.root(u[pivot])
    if root is None:
      return FundamentalResult(
          UNKNOWN, None, 'no {}-th root of {} of the form +-zeta^j*q'.format(
              u[pivot], rhs.ac()))
    w[pivot] = root

  witness = tuple(ctx.section(g) * w_j for g, w_j in zip(gamma, w))
  if not coset.contains(witness):
    return FundamentalResult(UNKNOWN, None, 'witness failed verification')
  precision = min(min(monomial_value(witness, u).precision, b.precision)
                  for u, b in coset.equations())
  return FundamentalResult(CONSISTENT, witness, None, precision)
