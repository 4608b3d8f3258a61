# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Tests for model configs."""
from fractions import Fraction
import os

from absl import logging
from absl.testing import absltest
from absl.testing import parameterized

from algebra.value_group import GroupVector
import hparams_config

_MODELS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..',
                           'configs', 'models')


class HparamsConfigTest(parameterized.TestCase):

  def test_config_override(self):
    c = hparams_config.Config({'a': 1, 'b': 2})
    self.assertEqual(c.as_dict(), {'a': 1, 'b': 2})

    c.update({'a': 10})
    self.assertEqual(c.as_dict(), {'a': 10, 'b': 2})

    c.b = 20
    self.assertEqual(c.as_dict(), {'a': 10, 'b': 20})

    c.override('a=true,b=ss')
    self.assertEqual(c.as_dict(), {'a': True, 'b': 'ss'})

    with self.assertRaises(KeyError):
      c.override('c=1')

  def test_nested_override(self):
    c = hparams_config.get_model_config('PC')
    c.override('residue.a=1,group.sigma=[[3]]')
    self.assertEqual(c.residue.as_dict(), {'n': 4, 'a': 1})
    self.assertEqual(c.group.sigma, [[3]])
    c.override('group.sigma=[[1, 0], [0, 2]],group.rank=2')
    self.assertEqual(c.group.as_dict(), {'rank': 2, 'sigma': [[1, 0], [0, 2]]})
    with self.assertRaises(ValueError):
      c.override('residue.n')

  def test_yaml_round_trip(self):
    tmp = self.create_tempdir()
    path = os.path.join(tmp.full_path, 'model.yaml')
    c = hparams_config.get_model_config('LEX2')
    c.save_to_yaml(path)
    self.assertEqual(hparams_config.get_model_config(path).as_dict(),
                     c.as_dict())

  @parameterized.parameters(('pc.yaml', 'PC'), ('iso.yaml', 'ISO'))
  def test_files_match_presets(self, filename, preset):
    from_file = hparams_config.build_context(
        hparams_config.get_model_config(os.path.join(_MODELS_DIR, filename)))
    self.assertEqual(from_file, hparams_config.build_context(
        hparams_config.get_model_config(preset)))

  def test_rank_two_file(self):
    ctx = hparams_config.build_context(hparams_config.get_model_config(
        os.path.join(_MODELS_DIR, 'lex2.yaml')))
    self.assertEqual(ctx.rank, 2)
    self.assertFalse(ctx.is_isometric())
    self.assertEqual(ctx.group_aut.apply(GroupVector([0, 2])),
                     GroupVector([1, 6]))
    self.assertEqual(ctx.default_precision, GroupVector([6, 0]))
    self.assertEqual(ctx.group_aut.matrix[0][1], Fraction(1, 2))

  def test_unknown_model(self):
    with self.assertRaises(ValueError):
      hparams_config.get_model_config('puiseux')

  @parameterized.parameters(
      ({'residue': {'n': 4, 'a': 2}},),
      ({'group': {'rank': 2, 'sigma': [[1]]}},),
      ({'group': {'rank': 1, 'sigma': [[-1]]}},),
      ({'group': {'rank': 2, 'sigma': [[1, 0], [1, 1]]}},),
  )
  def test_invalid_models(self, override):
    with self.assertRaises(ValueError):
      hparams_config.build_context(override)


if __name__ == '__main__':
  logging.set_verbosity(logging.WARNING)
  absltest.main()
