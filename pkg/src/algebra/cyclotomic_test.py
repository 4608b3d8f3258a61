# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Tests for cyclotomic residue fields and the linear difference solver."""
from fractions import Fraction

from absl import logging
from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
import sympy

from algebra import cyclotomic
from algebra.cyclotomic import CycloField


def _poly_mul(p, q):
  out = [0] * (len(p) + len(q) - 1)
  for i, x in enumerate(p):
    for j, y in enumerate(q):
      out[i + j] += x * y
  return out


def _poly_div_exact(p, q):
  """Exact division of integer polynomials, constant term first."""
  p = list(p)
  out = [0] * (len(p) - len(q) + 1)
  for k in range(len(out) - 1, -1, -1):
    c = p[k + len(q) - 1] // q[-1]
    out[k] = c
    for j, y in enumerate(q):
      p[k + j] -= c * y
  assert not any(p), 'inexact division'
  return out


def _phi_by_division(n, cache):
  """Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d."""
  if n in cache:
    return cache[n]
  p = [-1] + [0] * (n - 1) + [1]
  q = [1]
  for d in range(1, n):
    if n % d == 0:
      q = _poly_mul(q, _phi_by_division(d, cache))
  cache[n] = _poly_div_exact(p, q)
  return cache[n]


def _random_element(rng, field):
  return field.element([Fraction(int(rng.randint(-5, 6)), int(rng.randint(1, 4)))
                        for _ in range(field.degree)])


class CyclotomicPolynomialTest(absltest.TestCase):

  def test_table_up_to_64(self):
    cache = {}
    for n in range(1, 65):
      self.assertEqual(list(cyclotomic.cyclotomic_coeffs(n)),
                       [Fraction(c) for c in _phi_by_division(n, cache)])

  def test_rejects_bad_conductor(self):
    with self.assertRaises(ValueError):
      CycloField(0)
    with self.assertRaises(ValueError):
      CycloField(4, 2)


class CycloArithTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.rng = np.random.RandomState(111111)

  def test_i_squared(self):
    f = CycloField(4)
    i = f.imaginary_unit()
    self.assertEqual(cyclotomic.cyclo_arith('mul', i, i), -1)

  def test_inverse_of_one_plus_i(self):
    f = CycloField(4)
    i = f.imaginary_unit()
    self.assertEqual(cyclotomic.cyclo_arith('inv', 1 + i), (1 - i) / 2)

  def test_inverse_of_zero(self):
    f = CycloField(7)
    self.assertTrue(cyclotomic.cyclo_arith('inv', f.zero).is_zero())

  @parameterized.parameters(3, 5, 8, 12, 15)
  def test_random_inverses(self, n):
    f = CycloField(n)
    for _ in range(20):
      x = _random_element(self.rng, f)
      if x.is_zero():
        continue
      self.assertEqual(x * x.inverse(), 1)

  def test_pow(self):
    f = CycloField(6)
    z = f.zeta()
    self.assertEqual(cyclotomic.cyclo_arith('pow', z, 6), 1)
    self.assertEqual(z ** -1, z ** 5)

  def test_print(self):
    f = CycloField(4)
    i = f.imaginary_unit()
    self.assertEqual(str(1 - i / 2), '1 - 1/2*i')
    self.assertEqual(str(CycloField(5).zeta(3)), 'z^3')
    self.assertEqual(str(f.zero), '0')


class FieldAutTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.rng = np.random.RandomState(111111)

  def test_conjugation(self):
    f = CycloField(4, 3)
    i = f.imaginary_unit()
    self.assertEqual(cyclotomic.apply_field_aut(f, i), -i)

  def test_rationals_are_fixed(self):
    f = CycloField(1)
    q = f.from_rational(Fraction(7, 3))
    self.assertEqual(cyclotomic.apply_field_aut(f, q), q)

  def test_zeta5(self):
    f = CycloField(5, 2)
    z = f.zeta()
    self.assertEqual(cyclotomic.apply_field_aut(f, z + z**4), z**2 + z**3)

  @parameterized.parameters((5, 2), (8, 3), (12, 5), (7, 3), (9, 2))
  def test_is_automorphism_of_finite_order(self, n, a):
    f = CycloField(n, a)
    for _ in range(10):
      x, y = _random_element(self.rng, f), _random_element(self.rng, f)
      self.assertEqual(f.sigma(x + y), f.sigma(x) + f.sigma(y))
      self.assertEqual(f.sigma(x * y), f.sigma(x) * f.sigma(y))
      self.assertEqual(f.sigma(f.sigma(x), -1), x)
      self.assertEqual(f.sigma(x, f.order()), x)
    self.assertEqual(f.order(), cyclotomic.multiplicative_order(a, n))


class LinearDifferenceTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.rng = np.random.RandomState(111111)

  def test_conjugation_solvable(self):
    f = CycloField(4, 3)
    x = cyclotomic.solve_linear_difference(f, [1, 2], 3)
    self.assertEqual(x, 1)

  def test_conjugation_unsolvable(self):
    f = CycloField(4, 3)
    self.assertIsNone(cyclotomic.solve_linear_difference(f, [1, -1], 1))

  def test_scalar(self):
    f = CycloField(1)
    self.assertEqual(cyclotomic.solve_linear_difference(f, [5], 10), 2)

  def test_all_zero_coefficients(self):
    with self.assertRaises(ValueError):
      cyclotomic.solve_linear_difference(CycloField(4), [0, 0], 1)

  def test_normalized_equation(self):
    f = CycloField(4, 3)
    i = f.imaginary_unit()
    x = cyclotomic.solve_normalized_difference(f, [i, 2])
    self.assertEqual(1 + i * x + 2 * f.sigma(x), 0)

  @parameterized.parameters((3, 2), (4, 3), (5, 2), (7, 3), (8, 5), (12, 7))
  def test_agrees_with_gauss_jordan(self, n, a):
    f = CycloField(n, a)
    for _ in range(8):
      coeffs = [_random_element(self.rng, f) for _ in range(3)]
      rhs = _random_element(self.rng, f)
      if all(c.is_zero() for c in coeffs):
        continue
      x = cyclotomic.solve_linear_difference(f, coeffs, rhs)
      d = f.degree
      columns = []
      for j in range(d):
        e = f.element([int(k == j) for k in range(d)])
        image = sum((c * f.sigma(e, k) for k, c in enumerate(coeffs)), f.zero)
        columns.append([sympy.Rational(q.numerator, q.denominator)
                        for q in image.coeffs])
      a_mat = sympy.Matrix(columns).T
      b_vec = sympy.Matrix([sympy.Rational(q.numerator, q.denominator)
                            for q in rhs.coeffs])
      try:
        a_mat.gauss_jordan_solve(b_vec)
        solvable = True
      except ValueError:
        solvable = False
      self.assertEqual(x is not None, solvable)
      if x is not None:
        lhs = sum((c * f.sigma(x, k) for k, c in enumerate(coeffs)), f.zero)
        self.assertEqual(lhs, rhs)


class RootTest(parameterized.TestCase):

  @parameterized.parameters(
      (Fraction(4, 9), 2, Fraction(2, 3)),
      (Fraction(-8, 27), 3, Fraction(-2, 3)),
      (Fraction(2), 2, None),
      (Fraction(-4), 2, None),
      (Fraction(10**40), 4, Fraction(10**10)),
      (Fraction(3**50), 5, Fraction(3**10)),
      (Fraction(3**50 + 1), 5, None),
      (Fraction(0), 3, Fraction(0)),
  )
  def test_rational_root(self, q, d, expected):
    self.assertEqual(cyclotomic.rational_root(q, d), expected)

  def test_residue_root_of_minus_one(self):
    f = CycloField(4)
    r = cyclotomic.residue_root(f, -1, 2)
    self.assertEqual(r * r, -1)

  def test_residue_root_fails_for_two(self):
    self.assertIsNone(cyclotomic.residue_root(CycloField(1), 2, 2))


if __name__ == '__main__':
  logging.set_verbosity(logging.WARNING)
  absltest.main()
