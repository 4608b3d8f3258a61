# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
r"""Why the fixed field of an ac-valued difference field is not closed.

With P(x) = (x - i)(x + i) and Q(x, y) = P(x)P(y) - t, setting y = 0 leaves
x^2 + 1 = t. Its root x = i*(1 - t)^(1/2) has res(x) = i, and sigma(i) = -i,
so the open ball v(z - x) > 0 holds no sigma-fixed point even though Q has
a solution arbitrarily close to the fixed field.
"""
import collections

from absl import logging

from errors import TropdiffError
import sigma_poly

FixedFieldReport = collections.namedtuple(
    'FixedFieldReport', ['passed', 'root', 'residue', 'sigma_residue',
                         'residue_fixed', 'value', 'iterations', 'conclusion'])

_EQUATION = 'x^2 + 1 - t'


def _failure(reason):
  logging.warning('Fixed-field demo not run: %s', reason)
  return FixedFieldReport(False, None, None, None, None, None, 0, reason)


def demo_fixed_field(context, precision):
  """Lifts x^2 + 1 - t from i and checks the residue is not fixed.

  Args:
    context: a HahnContext whose residue field contains i with
      sigma_k(i) = -i and whose sigma_Gamma is the identity.
    precision: required lower bound on v(x^2 + 1 - t) at the root.

  Returns:
    A FixedFieldReport. passed is False (with the reason as conclusion) when
    the model does not satisfy the precondition.

  Raises:
    TropdiffError: propagated from sigma-Hensel lifting.
  """
  field = context.field
  try:
    i = field.imaginary_unit()
  except ValueError as e:
    return _failure(str(e))
  if field.sigma(i) != -i:
    return _failure('sigma_k(i) = {} is not -i in {!r}.'.format(
        field.sigma(i), field))
  g = sigma_poly.parse_sigma_poly(context, _EQUATION)
  result = sigma_poly.sp_hensel_lift(g, context.lift(i), precision)
  x = result.root
  value = g.evaluate(x)
  target = context.vector(precision)
  if not value.is_zero() and value.lower_bound() < target:
    raise TropdiffError('v(G(x)) = {} is below {}.'.format(
        value.lower_bound(), target))
  residue = x.res()
  sigma_residue = field.sigma(residue)
  fixed = sigma_residue == residue
  if fixed:
    conclusion = 'res(x) = {} is sigma-fixed; no obstruction.'.format(residue)
  else:
    conclusion = ('res(x) = {} but sigma(res(x)) = {}: the ball v(z - x) > 0 '
                  'contains no fixed point.'.format(residue, sigma_residue))
  logging.info('Fixed-field demo: %s', conclusion)
  return FixedFieldReport(not fixed, x, residue, sigma_residue, fixed, value,
                          result.iterations, conclusion)
