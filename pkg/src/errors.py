# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Exceptions raised by tropdiff.

All of them are ValueErrors, so callers that only care about bad input can
keep catching ValueError.
"""


class TropdiffError(ValueError):
  """Base class for domain errors."""

  kind = 'domain_error'


class RankMismatch(TropdiffError):
  kind = 'rank_mismatch'


class ContextMismatch(TropdiffError):
  """Two series (or polynomials) live in different models."""

  kind = 'context_mismatch'


class IndeterminateLeadingTerm(TropdiffError):
  """A series has no known term below its precision bound."""

  kind = 'indeterminate_leading_term'


class IndeterminateAtPrecision(TropdiffError):
  """The working precision is too low to decide a clause."""

  kind = 'indeterminate_at_precision'


class ResidueObstruction(TropdiffError):
  """A residue linear difference equation has no solution in the residue field."""

  kind = 'residue_obstruction'


class NonIsometric(TropdiffError):
  kind = 'non_isometric'


class ExpressionError(TropdiffError):
  """Malformed expression literal."""

  kind = 'parse_error'
