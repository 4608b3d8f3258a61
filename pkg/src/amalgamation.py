# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Amalgamation of difference subfields of (Q(zeta_n), zeta -> zeta^a).

By Galois correspondence a difference subfield is a pair (H, bH): H is a
subgroup of (Z/n)^x (the field is its fixed field) and sigma acts as
zeta -> zeta^b for any b in the coset bH. Everything is decided inside the
single ambient Q(zeta_n); amalgamation bases are ambient-relative.

Value groups of difference fields always amalgamate, and a problem can fail
even when the residue fields amalgamate too. In a Hahn field k((R)) over an
algebraically closed k, adjoin s = sqrt(t^pi) to K = k((Z))(t^pi) twice: once
with sigma(s) = s and once with sigma(s) = -s. The residue fields are both k
and the value groups agree, yet the two extensions do not amalgamate over K.
With an equivariant angular component the obstruction moves to the residue
side: the sign sigma(s)/s = ac(sigma(s))/ac(s) is residue data, and the
problem becomes the quadratic pattern below, with sqrt(2) = zeta_8 + zeta_8^7
in place of s:

  base  = Q           H = (Z/8)^x, b = 1
  left  = Q(sqrt(2))  H = {1, 7},  b = 1   (sigma fixes sqrt(2))
  right = Q(sqrt(2))  H = {1, 7},  b = 3   (sigma negates sqrt(2))

A common extension needs b in {1, 7} and in {3, 5}, so decide_amalgamation
reports the problem unsolvable.
"""

import collections
import functools
import json
import math

from absl import logging

from algebra.value_group import GroupAut

AmalgVerdict = collections.namedtuple('AmalgVerdict', ['solvable', 'witness'])
BaseReport = collections.namedtuple(
    'BaseReport', ['is_base', 'certificate', 'ambient_relative'])


@functools.lru_cache(maxsize=None)
def unit_group(n):
  """(Z/n)^x as sorted residues; for n = 1 this is {0}."""
  if n < 1:
    raise ValueError('Conductor must be positive, got {}.'.format(n))
  return tuple(k for k in range(n) if math.gcd(k, n) == 1)


def _closure(n, gens):
  group = {1 % n}
  frontier = list(group)
  while frontier:
    x = frontier.pop()
    for g in gens:
      y = x * g % n
      if y not in group:
        group.add(y)
        frontier.append(y)
  return frozenset(group)


@functools.lru_cache(maxsize=None)
def subgroups(n):
  """All subgroups of (Z/n)^x, smallest first."""
  found = {_closure(n, ())}
  frontier = list(found)
  while frontier:
    h = frontier.pop()
    for g in unit_group(n):
      if g not in h:
        bigger = _closure(n, tuple(h) + (g,))
        if bigger not in found:
          found.add(bigger)
          frontier.append(bigger)
  return tuple(sorted(found, key=lambda h: (len(h), sorted(h))))


class CycloDiffSubfield(object):
  """The fixed field of H in Q(zeta_n) with sigma induced by b."""

  def __init__(self, n, h, b):
    n = int(n)
    units = unit_group(n)
    h = frozenset(int(x) % n for x in h)
    if not h or 1 % n not in h:
      raise ValueError('H must contain 1, got {}.'.format(sorted(h)))
    if not h <= set(units):
      raise ValueError('H must consist of units mod {}, got {}.'.format(
          n, sorted(h)))
    if any(x * y % n not in h for x in h for y in h):
      raise ValueError('H = {} is not closed under multiplication mod {}.'
                       .format(sorted(h), n))
    b = int(b) % n
    if math.gcd(b, n) != 1:
      raise ValueError('b = {} is not coprime to {}.'.format(b, n))
    self.n = n
    self.h = h
    self.coset = frozenset(b * x % n for x in h)
    self.b = min(self.coset)

  @classmethod
  def from_dict(cls, n, data):
    try:
      return cls(n, data['H'], data['b'])
    except (KeyError, TypeError) as e:
      raise ValueError('Malformed subfield {!r}: {}'.format(data, e))

  def as_dict(self):
    return {'H': sorted(self.h), 'b': self.b}

  @property
  def degree(self):
    return len(unit_group(self.n)) // len(self.h)

  def __eq__(self, other):
    return (isinstance(other, CycloDiffSubfield) and self.n == other.n and
            self.h == other.h and self.b == other.b)

  def __hash__(self):
    return hash((self.n, self.h, self.b))

  def __repr__(self):
    return 'CycloDiffSubfield(n={}, H={}, b={})'.format(self.n, sorted(self.h),
                                                        self.b)


def _check_ambient(x, y):
  if x.n != y.n:
    raise ValueError('Subfields live in different ambients: n = {} and {}.'
                     .format(x.n, y.n))


def is_extension(big, small):
  """True iff (big) is a difference field extension of (small)."""
  _check_ambient(big, small)
  return big.h <= small.h and big.b in small.coset


class AmalgProblem(object):
  """Two extensions left, right of a common base."""

  def __init__(self, base, left, right):
    for side, name in ((left, 'left'), (right, 'right')):
      if not is_extension(side, base):
        raise ValueError('The {} field {!r} does not extend {!r}.'.format(
            name, side, base))
    self.base = base
    self.left = left
    self.right = right

  @property
  def n(self):
    return self.base.n

  def swapped(self):
    return AmalgProblem(self.base, self.right, self.left)

  @classmethod
  def from_dict(cls, data):
    try:
      n = int(data['n'])
      sides = [CycloDiffSubfield.from_dict(n, data[k])
               for k in ('base', 'left', 'right')]
    except (KeyError, TypeError) as e:
      raise ValueError('Malformed amalgamation problem: {}'.format(e))
    return cls(*sides)

  def as_dict(self):
    return {'n': self.n, 'base': self.base.as_dict(),
            'left': self.left.as_dict(), 'right': self.right.as_dict()}


def load_problem(path_or_dict):
  """Reads {"n": .., "base": {"H": [..], "b": ..}, "left": .., "right": ..}."""
  if isinstance(path_or_dict, dict):
    return AmalgProblem.from_dict(path_or_dict)
  with open(path_or_dict) as f:
    return AmalgProblem.from_dict(json.load(f))


def decide_amalgamation(problem):
  """Solvable iff b_L H_L and b_R H_R meet; the witness has H_L & H_R."""
  common = problem.left.coset & problem.right.coset
  if not common:
    logging.info('No common sigma: %s vs %s.', sorted(problem.left.coset),
                 sorted(problem.right.coset))
    return AmalgVerdict(False, None)
  witness = CycloDiffSubfield(problem.n, problem.left.h & problem.right.h,
                              min(common))
  return AmalgVerdict(True, witness)


def enumerate_subfields(n):
  """Every difference subfield (H, bH) of Q(zeta_n)."""
  out = []
  for h in subgroups(n):
    seen = set()
    for b in unit_group(n):
      if b not in seen:
        x = CycloDiffSubfield(n, h, b)
        seen |= x.coset
        out.append(x)
  return out


def brute_force_amalgamation(problem):
  """Searches every (H3, b3) for a common extension of left and right."""
  n = problem.n
  for h in subgroups(n):
    if not h <= problem.left.h & problem.right.h:
      continue
    for b in unit_group(n):
      x = CycloDiffSubfield(n, h, b)
      if is_extension(x, problem.left) and is_extension(x, problem.right):
        return AmalgVerdict(True, x)
  return AmalgVerdict(False, None)


def extensions(x):
  return [y for y in enumerate_subfields(x.n) if is_extension(y, x)]


def top_extension_count(x):
  """Number of ways to extend sigma from x to all of Q(zeta_n)."""
  return len(x.coset)


def is_amalgamation_base(x):
  """Checks every pair of extensions of x inside Q(zeta_n).

  Returns:
    BaseReport(is_base, certificate, ambient_relative=True); certificate is
    a failing (left, right) pair when x is not a base.
  """
  ext = extensions(x)
  for i, left in enumerate(ext):
    for right in ext[i + 1:]:
      if not decide_amalgamation(AmalgProblem(x, left, right)).solvable:
        return BaseReport(False, (left, right), True)
  return BaseReport(True, None, True)


def _value_group(data, where):
  if data is None:
    return None
  try:
    sigma = data['sigma']
    rank = int(data.get('rank', len(sigma)))
    aut = GroupAut(sigma)
  except (KeyError, TypeError, ValueError) as e:
    raise ValueError('Malformed value group data at {}: {}'.format(where, e))
  if aut.rank != rank:
    raise ValueError('Value group at {} has rank {} but a {}x{} sigma.'.format(
        where, rank, aut.rank, aut.rank))
  return aut


def reduce_valued_to_residue(descriptor):
  """Projects an ac-valued difference amalgamation problem to its residues.

  Each side carries residue data {"H", "b"} and optionally
  "value_group": {"rank", "sigma"}. Value difference groups always
  amalgamate, so they are validated and then dropped.

  Raises:
    ValueError: for a malformed descriptor.
  """
  try:
    sides = {k: descriptor[k] for k in ('base', 'left', 'right')}
  except (KeyError, TypeError) as e:
    raise ValueError('Malformed valued problem: {}'.format(e))
  groups = {k: _value_group(side.get('value_group'), k)
            for k, side in sides.items()}
  base_group = groups['base']
  if base_group is not None:
    for k in ('left', 'right'):
      if groups[k] is not None and groups[k].rank < base_group.rank:
        raise ValueError('The {} value group has rank {} < base rank {}.'
                         .format(k, groups[k].rank, base_group.rank))
  residue = {'n': descriptor.get('n')}
  for k, side in sides.items():
    residue[k] = {'H': side.get('H'), 'b': side.get('b')}
  return AmalgProblem.from_dict(residue)
