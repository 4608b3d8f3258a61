# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Tests for the command-line front end."""
import json
import os

from absl import logging
from absl.testing import absltest
from absl.testing import parameterized

import tropdiff

_INTRO = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..',
                      'configs', 'problems', 'intro_qi.json')


def _run(command, model='ISO', args=(), **options):
  return tropdiff.execute(command, model, list(args), options)


class CommandTest(parameterized.TestCase):

  def test_trop_roots(self):
    code, payload = _run('trop roots', 'PC', ['x^2 - (1+t)*x + t'])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(tropdiff.render(payload), '{"roots":["0","1"]}')

  def test_amalg_decide_intro(self):
    code, payload = _run('amalg decide', args=[_INTRO])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'solvable': False, 'witness': None})

  def test_amalg_decide_inline(self):
    problem = {'n': 5, 'base': {'H': [1, 2, 3, 4], 'b': 1},
               'left': {'H': [1], 'b': 2}, 'right': {'H': [1, 4], 'b': 2}}
    code, payload = _run('amalg decide', args=[json.dumps(problem)])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'solvable': True,
                               'witness': {'H': [1], 'b': 2}})

  def test_amalg_base(self):
    code, payload = _run('amalg base', args=['{"n": 4, "H": [1, 3], "b": 1}'])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertFalse(payload['is_base'])
    self.assertTrue(payload['ambient_relative'])
    self.assertEqual(payload['top_extension_count'], 2)
    self.assertEqual(payload['certificate'],
                     [{'H': [1], 'b': 1}, {'H': [1], 'b': 3}])

  def test_zsigma_coset(self):
    code, payload = _run('zsigma coset', A='[[1-s],[1-s^2]]', b='[1,1]')
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload['ell'], 2)
    self.assertEqual(payload['C'], [[1, -1, 0], [1, 0, -1]])
    self.assertEqual(payload['C_matrices'], [[[1, -1, 0]], [[1, 0, -1]]])
    self.assertTrue(payload['proper'])

  def test_zsigma_check(self):
    code, payload = _run('zsigma check', 'PC', A='[[1-s],[1-s^2]]',
                         b='[1,1]', z='[t^(1/2)]')
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'direct': False, 'via_coset': False})

  def test_lattice_saturate(self):
    code, payload = _run('lattice saturate', args=['[[2,0],[0,2]]'])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'basis': [[1, 0], [0, 1]], 'index': 4,
                               'primitive': False})

  def test_lattice_cc_map(self):
    code, payload = _run('lattice cc-map', args=['[[2,2]]'])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'xi': [[1, 1]]})

  def test_sigma_complexity(self):
    code, payload = _run('sigma complexity', args=['s^2(x)^3*x + s(x)'])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'complexity': [2, 3, 4]})

  def test_sigma_hensel(self):
    code, payload = _run('sigma hensel', args=['x*s(x) - (1+t)'], a='1',
                         precision='3')
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload['delta'], '1')
    self.assertLen(payload['steps'], 2)

  def test_sigma_residue(self):
    code, payload = _run('sigma residue', args=['t*s(x)^2 + x - 1'])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload['complexity'], [1, 2, 2])
    self.assertEqual(payload['residue_complexity'], [0, 1, 1])
    self.assertFalse(payload['preserved'])
    code, payload = _run('sigma residue', args=['x^2 + 1 - t'])
    self.assertTrue(payload['preserved'])

  def test_hahn_inverse_of_zero(self):
    code, payload = _run('hahn inv', args=['0'])
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'series': '0'})

  def test_hahn_valuation(self):
    self.assertEqual(_run('hahn v', 'PC', ['t^(1/2) + t'])[1],
                     {'valuation': '1/2'})
    self.assertEqual(_run('hahn v', 'PC', ['0'])[1], {'valuation': 'inf'})

  def test_cyclo_solve(self):
    code, payload = _run('cyclo solve', args=['[-1, 1]'], b='1')
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertEqual(payload, {'solvable': False, 'solution': None})
    code, payload = _run('cyclo solve', args=['[2]'], b='1')
    self.assertTrue(payload['solvable'])

  def test_demo(self):
    code, payload = _run('demo fixed-field', precision='4')
    self.assertEqual(code, tropdiff.EXIT_OK)
    self.assertTrue(payload['passed'])
    self.assertFalse(payload['residue_fixed'])
    self.assertIn('contains no fixed point', payload['conclusion'])


class ExitCodeTest(parameterized.TestCase):

  def test_unknown_command(self):
    code, payload = _run('trop nothing', args=['x'])
    self.assertEqual(code, tropdiff.EXIT_USAGE)
    self.assertEqual(payload['error']['kind'], 'usage_error')

  def test_parse_error(self):
    code, payload = _run('trop roots', args=['(x + 1'])
    self.assertEqual(code, tropdiff.EXIT_USAGE)
    self.assertEqual(payload['error']['kind'], 'parse_error')

  def test_missing_option(self):
    code, _ = _run('zsigma coset', A='[[1-s]]')
    self.assertEqual(code, tropdiff.EXIT_USAGE)

  def test_residue_obstruction(self):
    code, payload = _run('sigma hensel', args=['s(x) - x - t'], a='0',
                         precision='3')
    self.assertEqual(code, tropdiff.EXIT_DOMAIN)
    self.assertEqual(payload['error']['kind'], 'residue_obstruction')

  def test_non_isometric(self):
    code, payload = _run('demo fixed-field', 'PC', precision='3')
    self.assertEqual(code, tropdiff.EXIT_DOMAIN)
    self.assertEqual(payload['error']['kind'], 'non_isometric')


class BatchTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.lines = [
        json.dumps({'command': 'trop roots', 'model': 'PC',
                    'args': ['x^2 - (1+t)*x + t']}),
        '',
        json.dumps({'command': 'amalg decide', 'args': [_INTRO]}),
        'not json',
        json.dumps({'command': 'zsigma coset',
                    'options': {'A': '[[1-s],[1-s^2]]', 'b': '[1,1]'}}),
        json.dumps({'command': 'sigma hensel', 'args': ['s(x) - x - t'],
                    'options': {'a': '0', 'precision': '3'}}),
    ]

  def test_order_and_codes(self):
    code, responses = tropdiff.run_batch(self.lines, workers=3)
    self.assertEqual(code, tropdiff.EXIT_DOMAIN)
    self.assertLen(responses, 5)
    self.assertEqual(responses[0]['result'], {'roots': ['0', '1']})
    self.assertFalse(responses[1]['result']['solvable'])
    self.assertEqual(responses[2]['error']['kind'], 'usage_error')
    self.assertEqual(responses[3]['result']['ell'], 2)
    self.assertEqual(responses[4]['error']['kind'], 'residue_obstruction')

  @parameterized.parameters(
      ({'command': 'hahn inv', 'model': ['ISO'], 'args': ['t']},),
      ({'command': 'hahn inv', 'args': ['t'], 'options': [1]},),
      ({'command': ['hahn', 'inv'], 'args': ['t']},),
      ({'command': 'hahn inv', 'args': 5},),
      (['hahn inv'],),
  )
  def test_malformed_line_keeps_others(self, bad):
    lines = [json.dumps({'command': 'hahn inv', 'args': ['t']}),
             json.dumps(bad),
             json.dumps({'command': 'hahn v', 'args': ['t']})]
    code, responses = tropdiff.run_batch(lines, workers=2)
    self.assertEqual(code, tropdiff.EXIT_USAGE)
    self.assertLen(responses, 3)
    self.assertEqual(responses[0]['result'], {'series': 't^(-1)'})
    self.assertEqual(responses[1]['error']['kind'], 'usage_error')
    self.assertEqual(responses[2]['result'], {'valuation': '1'})

  def test_deterministic(self):
    first = [tropdiff.render(r) for r in tropdiff.run_batch(self.lines)[1]]
    second = [tropdiff.render(r)
              for r in tropdiff.run_batch(self.lines, workers=1)[1]]
    self.assertEqual(first, second)


if __name__ == '__main__':
  logging.set_verbosity(logging.WARNING)
  absltest.main()
