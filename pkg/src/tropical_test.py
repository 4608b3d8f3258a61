# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Tests for tropicalization, initial forms and binomial cosets."""
from fractions import Fraction

from absl import logging
from absl.testing import absltest
from absl.testing import parameterized
import numpy as np

from algebra import int_lattice
from algebra.value_group import GroupVector
from errors import IndeterminateAtPrecision
import hparams_config
import tropical
from tropical import BinomialCoset
from tropical import LaurentPoly


def _context(name):
  return hparams_config.build_context(hparams_config.get_model_config(name))


def _g(*coords):
  return GroupVector(coords)


def _random_coefficient(rng, ctx):
  field = ctx.field
  terms = []
  for _ in range(int(rng.randint(1, 3))):
    c = field.element([Fraction(int(rng.randint(-4, 5)), int(rng.randint(1, 3)))
                       for _ in range(field.degree)])
    terms.append((Fraction(int(rng.randint(-36, 37)), 12), c))
  f = ctx.series(terms)
  return f if f.terms else ctx.lift(int(rng.randint(1, 5)))


def _random_univariate(rng, ctx, max_support=6):
  size = int(rng.randint(2, max_support + 1))
  exponents = rng.choice(np.arange(-2, 5), size=size, replace=False)
  return LaurentPoly(ctx, {(int(e),): _random_coefficient(rng, ctx)
                           for e in exponents}, 1)


def _random_poly(rng, ctx, nvars):
  coeffs = {}
  for _ in range(int(rng.randint(1, 5))):
    u = tuple(int(x) for x in rng.randint(-2, 4, size=nvars))
    coeffs[u] = _random_coefficient(rng, ctx)
  return LaurentPoly(ctx, coeffs, nvars)


def _random_point(rng, nvars):
  return [_g(Fraction(int(rng.randint(-8, 9)), int(rng.randint(1, 4))))
          for _ in range(nvars)]


class TropicalizeTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.ctx = _context('PC')

  def parse(self, text):
    return tropical.parse_laurent(self.ctx, text)

  def test_read_valuations(self):
    trop = tropical.tropicalize(self.parse('t*x + x^2'))
    self.assertEqual(set(trop.pieces), {(_g(1), (1,)), (_g(0), (2,))})

  def test_cancelling_coefficient(self):
    trop = tropical.tropicalize(self.parse('x^2 - (1+t)*x + t'))
    self.assertEqual(set(trop.pieces),
                     {(_g(0), (2,)), (_g(0), (1,)), (_g(1), (0,))})

  def test_single_term(self):
    trop = tropical.tropicalize(self.parse('i*t^(1/2)*y1*y2^-1'))
    self.assertEqual(trop.pieces, ((_g(Fraction(1, 2)), (1, -1)),))

  def test_indeterminate(self):
    with self.assertRaises(IndeterminateAtPrecision):
      tropical.tropicalize(self.parse('x + O(t^(2))'))

  @parameterized.parameters(
      (1, (_g(2), 2)),
      (0, (_g(0), 1)),
  )
  def test_trop_eval(self, gamma, expected):
    trop = tropical.tropicalize(self.parse('t*x + x^2'))
    self.assertEqual(tropical.trop_eval(trop, _g(gamma)), expected)

  def test_single_piece_is_never_a_root(self):
    trop = tropical.tropicalize(self.parse('t*x^3'))
    for gamma in (-1, 0, Fraction(1, 3), 5):
      self.assertEqual(trop.evaluate(_g(gamma))[1], 1)

  @parameterized.parameters(
      ('x^2 - (1+t)*x + t', [0, 1]),
      ('x^2 - t', [Fraction(1, 2)]),
      ('x + 1', [0]),
      ('t^(3)*x^-1 + x^2', [1]),
  )
  def test_trop_roots(self, text, expected):
    roots = tropical.trop_roots_univariate(tropical.tropicalize(
        self.parse(text)))
    self.assertEqual(roots, [_g(g) for g in expected])

  def test_product_is_pointwise_sum(self):
    rng = np.random.RandomState(111111)
    for _ in range(60):
      nvars = int(rng.randint(1, 3))
      f, g = _random_poly(rng, self.ctx, nvars), _random_poly(rng, self.ctx,
                                                              nvars)
      tf, tg = tropical.tropicalize(f), tropical.tropicalize(g)
      tfg = tropical.tropicalize(f * g)
      for _ in range(3):
        gamma = _random_point(rng, nvars)
        self.assertEqual(tfg.evaluate(gamma)[0],
                         tf.evaluate(gamma)[0] + tg.evaluate(gamma)[0])
        self.assertEqual((tf * tg).evaluate(gamma)[0], tfg.evaluate(gamma)[0])

  def test_trop_add(self):
    a = tropical.tropicalize(self.parse('x'))
    b = tropical.tropicalize(self.parse('t'))
    total = tropical.trop_add(a, b)
    self.assertEqual(total.evaluate(_g(2))[0], _g(1))
    self.assertTrue(total.is_root(_g(1)))


class InitialFormTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.ctx = _context('PC')

  def parse(self, text):
    return tropical.parse_laurent(self.ctx, text)

  @parameterized.parameters(
      ('t*x + x^2', 1, 'x^2 + x'),
      ('x^2 - (1+t)*x + t', 0, 'x^2 - x'),
      ('i*t*x + x^2', 1, 'x^2 + i*x'),
      ('3*t^(2)*x - 2*t^(1)', 5, '-2'),
  )
  def test_initial_form(self, text, gamma, expected):
    self.assertEqual(str(tropical.initial_form(self.parse(text), _g(gamma))),
                     expected)

  def test_equivariance_example(self):
    f = self.parse('i*t*x + x^2')
    rhs = tropical.initial_form(f.sigma(), _g(2))
    self.assertEqual(str(rhs), 'x^2 - i*x')
    self.assertEqual(tropical.initial_form(f, _g(1)).sigma(), rhs)

  def test_random_equivariance(self):
    rng = np.random.RandomState(111111)
    aut = self.ctx.group_aut
    for _ in range(120):
      nvars = int(rng.randint(1, 3))
      f = _random_poly(rng, self.ctx, nvars)
      gamma = _random_point(rng, nvars)
      lhs = tropical.initial_form(f, gamma).sigma()
      rhs = tropical.initial_form(f.sigma(), [aut.apply(g) for g in gamma])
      self.assertEqual(lhs, rhs)

  def test_unit_invariance(self):
    rng = np.random.RandomState(111111)
    t = self.ctx.section(1)
    for _ in range(50):
      f = _random_poly(rng, self.ctx, 2)
      unit = 1 + t * _random_coefficient(rng, self.ctx).unit_part()
      gamma = _random_point(rng, 2)
      self.assertEqual(tropical.initial_form(f * unit, gamma),
                       tropical.initial_form(f, gamma))


class KapranovTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.ctx = _context('PC')

  def parse(self, text):
    return tropical.parse_laurent(self.ctx, text)

  @parameterized.parameters(
      ('x^2 - t', [Fraction(1, 2)] * 2),
      ('x^2 - (1+t)*x + t', [0, 1]),
      ('x - 3*t^(5/2)', [Fraction(5, 2)]),
      ('x^3 + x + 1', [0, 0, 0]),
  )
  def test_newton_valuations(self, text, expected):
    self.assertEqual(tropical.newton_valuations(self.parse(text)),
                     [_g(g) for g in expected])

  def test_monomial(self):
    with self.assertRaises(ValueError):
      tropical.newton_valuations(self.parse('t*x^2'))

  @parameterized.parameters('x^2 - (1+t)*x + t', 'x^2 - t', 'x + x^2')
  def test_pass(self, text):
    report = tropical.kapranov_check(self.parse(text))
    self.assertTrue(report.passed, report.discrepancy)

  @parameterized.parameters('PC', 'ISO')
  def test_random_corpus(self, model):
    ctx = _context(model)
    rng = np.random.RandomState(111111)
    for _ in range(120):
      f = _random_univariate(rng, ctx)
      report = tropical.kapranov_check(f)
      self.assertTrue(report.passed, '{}: {}'.format(f, report.discrepancy))
      degree = max(u[0] for u in f.coeffs) - min(u[0] for u in f.coeffs)
      self.assertLen(report.newton, degree)


class BinomialTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.ctx = _context('ISO')
    self.t = self.ctx.section(1)

  def test_initial_of_primitive_coset(self):
    coset = BinomialCoset(self.ctx, int_lattice.hnf([[1, -1]]), [1 + self.t])
    initial = tropical.binomial_initial(coset)
    self.assertEqual(initial.targets, (self.ctx.field.one,))
    self.assertTrue(initial.irreducible)

  def test_reducible(self):
    coset = BinomialCoset(self.ctx, int_lattice.hnf([[2, 0]]), [1])
    self.assertFalse(tropical.binomial_initial(coset).irreducible)

  def test_point(self):
    u = self.ctx.parse('2 - i*t^(1/2)')
    coset = BinomialCoset(self.ctx, int_lattice.hnf([[1]]), [u])
    initial = tropical.binomial_initial(coset)
    self.assertEqual(initial.targets, (self.ctx.field.from_rational(2),))
    self.assertTrue(initial.irreducible)

  def test_non_unit_target(self):
    coset = BinomialCoset(self.ctx, int_lattice.hnf([[1]]), [self.t])
    with self.assertRaises(ValueError):
      tropical.binomial_initial(coset)

  def test_sigma_commutes(self):
    ctx = _context('PC')
    rng = np.random.RandomState(111111)
    for _ in range(40):
      lattice = int_lattice.hnf(rng.randint(-3, 4, size=(2, 3)).tolist())
      targets = [_random_coefficient(rng, ctx).unit_part()
                 for _ in range(lattice.rank)]
      coset = BinomialCoset(ctx, lattice, targets)
      lhs = tropical.binomial_initial(coset.sigma())
      rhs = tropical.binomial_initial(coset)
      self.assertEqual(lhs.targets,
                       tuple(ctx.field.sigma(r) for r in rhs.targets))
      self.assertEqual(lhs.lattice, rhs.lattice)

  def test_irreducible_iff_primitive(self):
    rng = np.random.RandomState(111111)
    for _ in range(100):
      n = int(rng.randint(1, 4))
      lattice = int_lattice.hnf(
          rng.randint(-3, 4, size=(int(rng.randint(1, n + 1)), n)).tolist())
      targets = [_random_coefficient(rng, self.ctx).unit_part()
                 for _ in range(lattice.rank)]
      initial = tropical.binomial_initial(
          BinomialCoset(self.ctx, lattice, targets))
      self.assertEqual(initial.irreducible, int_lattice.is_primitive(lattice))

  def test_from_equations(self):
    coset = BinomialCoset.from_equations(
        self.ctx, [[1, -1, 0], [1, 0, -1]], [2, 3])
    self.assertTrue(coset.proper)
    self.assertEqual(coset.lattice.basis, ((1, 0, -1), (0, 1, -1)))
    z = (self.ctx.lift(6), self.ctx.lift(3), self.ctx.lift(2))
    self.assertTrue(coset.contains(z))

  def test_improper(self):
    q = _context('Q')
    coset = BinomialCoset.from_equations(q, [[1], [2]], [2, 3])
    self.assertFalse(coset.proper)
    self.assertFalse(tropical.binomial_initial(coset).proper)
    self.assertTrue(
        BinomialCoset.from_equations(q, [[1], [2]], [2, 4]).proper)


class FundamentalTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.ctx = _context('ISO')
    self.t = self.ctx.section(1)

  def test_consistent(self):
    coset = BinomialCoset.from_equations(self.ctx, [[1, 1]], [self.t])
    half = _g(Fraction(1, 2))
    result = tropical.fundamental_check_binomial(coset, [half, half])
    self.assertEqual(result.status, tropical.CONSISTENT)
    root = self.ctx.section(Fraction(1, 2))
    self.assertEqual(result.witness, (root, root))
    self.assertTrue(result.precision.is_infinity)

  def test_non_monomial_target_precision(self):
    target = 1 + self.t
    coset = BinomialCoset.from_equations(self.ctx, [[2]], [target])
    result = tropical.fundamental_check_binomial(coset, _g(0))
    self.assertEqual(result.status, tropical.CONSISTENT)
    self.assertFalse(result.precision.is_infinity)
    (z,) = result.witness
    self.assertEqual((z * z).precision, result.precision)
    self.assertTrue((z * z).agrees_with(target))
    self.assertNotEqual(z * z, target)

  def test_inconsistent(self):
    coset = BinomialCoset.from_equations(self.ctx, [[1, 1]], [self.t])
    result = tropical.fundamental_check_binomial(coset, [_g(0), _g(0)])
    self.assertEqual(result.status, tropical.INCONSISTENT)
    self.assertIsNone(result.precision)

  def test_unknown_over_rationals(self):
    q = _context('Q')
    coset = BinomialCoset.from_equations(q, [[2]], [2])
    result = tropical.fundamental_check_binomial(coset, _g(0))
    self.assertEqual(result.status, tropical.UNKNOWN)
    self.assertIsNone(result.witness)

  def test_square_root_of_minus_one(self):
    coset = BinomialCoset.from_equations(self.ctx, [[2]], [-1])
    result = tropical.fundamental_check_binomial(coset, _g(0))
    self.assertEqual(result.status, tropical.CONSISTENT)
    (z,) = result.witness
    self.assertEqual(z * z, -self.ctx.one())

  def test_random_witnesses(self):
    rng = np.random.RandomState(111111)
    for _ in range(40):
      rows = rng.randint(-2, 3, size=(2, 3)).tolist()
      point = [self.ctx.monomial(int(rng.randint(1, 4)),
                                 Fraction(int(rng.randint(-4, 5)), 2))
               for _ in range(3)]
      targets = [tropical.monomial_value(point, u) for u in rows]
      coset = BinomialCoset.from_equations(self.ctx, rows, targets)
      self.assertTrue(coset.contains(point))
      gamma = [z.valuation() for z in point]
      result = tropical.fundamental_check_binomial(coset, gamma)
      self.assertNotEqual(result.status, tropical.INCONSISTENT)
      if result.status == tropical.CONSISTENT:
        self.assertTrue(coset.contains(result.witness))
        self.assertEqual([z.valuation() for z in result.witness], gamma)


class LiteralTest(parameterized.TestCase):

  @parameterized.parameters(
      'y1^2*y2^-1 - (1 + t^(1))',
      'x^2 - (1 + t^(1))*x + (t^(1))',
      'x^3 - i*x^-1',
  )
  def test_round_trip(self, text):
    ctx = _context('PC')
    self.assertEqual(str(tropical.parse_laurent(ctx, text)), text)

  def test_padding(self):
    ctx = _context('PC')
    f = tropical.parse_laurent(ctx, 'y1 + 1', nvars=3)
    self.assertEqual(f.nvars, 3)
    self.assertIn((1, 0, 0), f.coeffs)
    with self.assertRaises(ValueError):
      tropical.parse_laurent(ctx, 'y4', nvars=3)


if __name__ == '__main__':
  logging.set_verbosity(logging.WARNING)
  absltest.main()
