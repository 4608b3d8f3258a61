# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Model configs: residue field, value group automorphism and truncation.

A model is the data (n, a, sigma_Gamma) of a cross-sectioned Hahn field
Q(zeta_n)((t^Gamma)) plus the knobs that bound the exact computations.
Configs are nested attribute dicts that can be overridden from a dict, a
yaml file or a `k=v,k2.sub=v` string.
"""
import ast
import copy
from fractions import Fraction
from typing import Any, Dict, Text

import yaml

from algebra.cyclotomic import CycloField
from algebra.value_group import GroupAut
from algebra.value_group import GroupVector
import hahn_series


def _literal(text):
  """`true`/`false`, a Python literal, or the bare string."""
  text = text.strip()
  if text in {'true', 'false'}:
    return text == 'true'
  try:
    return ast.literal_eval(text)
  except (ValueError, SyntaxError):
    return text


def _merge(target, src):
  for k, v in src.items():
    if isinstance(target.get(k), dict) and isinstance(v, dict):
      _merge(target[k], v)
    else:
      target[k] = v


class Config(object):
  """Nested attribute dict holding one model."""

  def __init__(self, config_dict=None):
    self.update(config_dict)

  def __setattr__(self, k, v):
    if isinstance(v, Config):
      v = v.as_dict()
    self.__dict__[k] = Config(v) if isinstance(v, dict) else copy.deepcopy(v)

  def __getattr__(self, k):
    try:
      return self.__dict__[k]
    except KeyError:
      raise AttributeError(k)

  def __repr__(self):
    return 'Config({!r})'.format(self.as_dict())

  def _update(self, config_dict, allow_new_keys):
    for k, v in (config_dict or {}).items():
      if k not in self.__dict__ and not allow_new_keys:
        raise KeyError('Unknown model key `{}`.'.format(k))
      current = self.__dict__.get(k)
      if isinstance(current, Config) and isinstance(v, (dict, Config)):
        current._update(v if isinstance(v, dict) else v.as_dict(),  # pylint: disable=protected-access
                        allow_new_keys)
      else:
        setattr(self, k, v)

  def update(self, config_dict):
    """Merges config_dict, adding keys as needed."""
    self._update(config_dict, allow_new_keys=True)

  def override(self, overrides, allow_new_keys=False):
    """Merges a dict, a yaml path or a `k=v,k2.sub=v` string into known keys."""
    if isinstance(overrides, Config):
      overrides = overrides.as_dict()
    elif isinstance(overrides, str):
      if '=' in overrides:
        overrides = self.parse_from_str(overrides)
      elif overrides.endswith(('.yaml', '.yml')):
        overrides = self.parse_from_yaml(overrides)
      else:
        raise ValueError('Expected a yaml path or k=v pairs, got {!r}.'.format(
            overrides))
    elif not isinstance(overrides, dict):
      raise ValueError('Cannot override a model with {!r}.'.format(overrides))
    self._update(overrides, allow_new_keys)

  def parse_from_yaml(self, yaml_file_path: Text) -> Dict[Any, Any]:
    with open(yaml_file_path, 'r') as f:
      return yaml.safe_load(f) or {}

  def save_to_yaml(self, yaml_file_path):
    with open(yaml_file_path, 'w') as f:
      yaml.dump(self.as_dict(), f, default_flow_style=False)

  def parse_from_str(self, config_str: Text) -> Dict[Any, Any]:
    """'residue.a=1,group.rank=2' -> {'residue': {'a': 1}, 'group': ...}.

    Values are Python literals, so a comma inside brackets belongs to the
    value: 'group.sigma=[[1, 0], [0, 2]]' is one pair.
    """
    config_dict = {}
    for pair in _split_pairs(config_str):
      if '=' not in pair:
        raise ValueError('Invalid override {!r} in {!r}.'.format(
            pair, config_str))
      key, value = pair.split('=', 1)
      nested = _literal(value)
      for part in reversed(key.strip().split('.')):
        nested = {part: nested}
      _merge(config_dict, nested)
    return config_dict

  def as_dict(self):
    return {k: v.as_dict() if isinstance(v, Config) else copy.deepcopy(v)
            for k, v in self.__dict__.items()}


def _split_pairs(config_str):
  pairs, depth, start = [], 0, 0
  for pos, ch in enumerate(config_str):
    if ch in '([{':
      depth += 1
    elif ch in ')]}':
      depth -= 1
    elif ch == ',' and depth == 0:
      pairs.append(config_str[start:pos])
      start = pos + 1
  pairs.append(config_str[start:])
  return [p for p in pairs if p.strip()]


def default_model_configs():
  """Returns the default model configs."""
  h = Config()

  h.name = 'trivial'

  # Residue field Q(zeta_n) with sigma_k: zeta -> zeta^a.
  h.residue = dict(n=1, a=1)

  # Value group Q^rank, lex ordered; sigma_Gamma is an upper triangular
  # matrix with positive diagonal, rows as lists of rationals (strings ok).
  h.group = dict(rank=1, sigma=[[1]])

  # Relative bound used to truncate exact inverses and roots.
  h.default_precision = 8
  h.max_series_terms = 64

  h.hensel_max_iterations = 64
  h.batch_workers = 4
  return h


model_presets = {
    # Complex Puiseux series with conjugation and t -> t^2.
    'PC': dict(name='PC', residue=dict(n=4, a=3), group=dict(rank=1,
                                                             sigma=[[2]])),
    # Same residue data, isometric sigma.
    'ISO': dict(name='ISO', residue=dict(n=4, a=3), group=dict(rank=1,
                                                               sigma=[[1]])),
    'Q': dict(name='Q', residue=dict(n=1, a=1), group=dict(rank=1,
                                                           sigma=[[1]])),
    'LEX2': dict(name='LEX2', residue=dict(n=4, a=3),
                 group=dict(rank=2, sigma=[[1, 0], [0, 1]])),
}


def get_model_config(model_name='ISO'):
  """Get the config for a preset name or a yaml file."""
  h = default_model_configs()
  if model_name in model_presets:
    h.override(model_presets[model_name])
  elif str(model_name).endswith(('.yaml', '.yml')):
    h.override(model_name)
  else:
    raise ValueError('Unknown model name: {}'.format(model_name))
  return h


def _fraction(x):
  return Fraction(str(x))


def build_context(config):
  """Validates a model config and returns its HahnContext.

  Args:
    config: a Config (or dict) shaped like default_model_configs().

  Returns:
    The immutable HahnContext of the model.

  Raises:
    ValueError: if the residue or group data is invalid.
  """
  if not isinstance(config, Config):
    h = default_model_configs()
    h.override(config)
    config = h
  field = CycloField(config.residue.n, config.residue.a)
  rank = int(config.group.rank)
  sigma = [[_fraction(x) for x in row] for row in config.group.sigma]
  if len(sigma) != rank:
    raise ValueError('sigma has {} rows, expected rank {}.'.format(
        len(sigma), rank))
  aut = GroupAut(sigma)
  precision = config.default_precision
  if isinstance(precision, (list, tuple)):
    precision = GroupVector([_fraction(x) for x in precision])
  else:
    precision = GroupVector([_fraction(precision)] + [0] * (rank - 1))
  return hahn_series.HahnContext(field, aut, precision,
                                 config.max_series_terms)
