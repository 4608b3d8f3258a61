# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Expression literals shared by every tropdiff grammar.

One recursive descent parser reads sums, products, quotients and powers.
What the identifiers mean is decided by an algebra object with four hooks:

  number(q)                 -> value for a rational literal
  atom(name, exponent)      -> value for `name` or `name^e`
  call(name, exponent, args)-> value for `name(...)` or `name^e(...)`
  divide(a, b)              -> a / b

Exponents are tuples of Fractions: `^2` gives (2,), `^(1/2,3)` gives
(1/2, 3).
"""

from fractions import Fraction
import re

from errors import ExpressionError

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))')


def tokenize(text):
  tokens = []
  pos = 0
  text = text.rstrip()
  while pos < len(text):
    m = _TOKEN_RE.match(text, pos)
    if m is None:
      break
    if m.group(1) is not None:
      tokens.append(('num', m.group(1), m.start(1)))
    elif m.group(2) is not None:
      tokens.append(('name', m.group(2), m.start(2)))
    elif m.group(3) is not None:
      if m.group(3) not in '+-*/^(),':
        raise ExpressionError('Unexpected character {!r} at {} in {!r}.'.format(
            m.group(3), m.start(3), text))
      tokens.append(('op', m.group(3), m.start(3)))
    pos = m.end()
  return tokens


class _Parser(object):
  """Recursive descent over the token list."""

  def __init__(self, text, algebra):
    self.text = text
    self.algebra = algebra
    self.tokens = tokenize(text)
    self.pos = 0

  def error(self, message):
    where = (self.tokens[self.pos][2] if self.pos < len(self.tokens)
             else len(self.text))
    return ExpressionError('{} at {} in {!r}.'.format(message, where,
                                                      self.text))

  def peek(self, value=None):
    if self.pos >= len(self.tokens):
      return None
    tok = self.tokens[self.pos]
    if value is not None and tok[1] != value:
      return None
    return tok

  def take(self, value=None):
    tok = self.peek(value)
    if tok is None:
      raise self.error('Expected {!r}'.format(value) if value else
                       'Unexpected end of input')
    self.pos += 1
    return tok

  def parse(self):
    if not self.tokens:
      raise ExpressionError('Empty expression.')
    value = self.expr()
    if self.pos != len(self.tokens):
      raise self.error('Trailing input')
    return value

  def expr(self):
    value = self.term()
    while self.peek('+') or self.peek('-'):
      op = self.take()[1]
      rhs = self.term()
      value = value + rhs if op == '+' else value - rhs
    return value

  def term(self):
    value = self.unary()
    while self.peek('*') or self.peek('/'):
      op = self.take()[1]
      rhs = self.unary()
      value = value * rhs if op == '*' else self.algebra.divide(value, rhs)
    return value

  def unary(self):
    if self.peek('-'):
      self.take()
      return -self.unary()
    if self.peek('+'):
      self.take()
      return self.unary()
    return self.power()

  def power(self):
    value = self.primary()
    if self.peek('^'):
      self.take()
      exponent = self.exponent()
      if len(exponent) != 1 or exponent[0].denominator != 1:
        raise self.error('Only integer powers are allowed here')
      value = value ** int(exponent[0])
    return value

  def primary(self):
    tok = self.peek()
    if tok is None:
      raise self.error('Unexpected end of input')
    if tok[0] == 'num':
      self.take()
      return self.algebra.number(Fraction(int(tok[1])))
    if tok[1] == '(':
      self.take()
      value = self.expr()
      self.take(')')
      return value
    if tok[0] == 'name':
      self.take()
      exponent = None
      if self.peek('^'):
        self.take()
        exponent = self.exponent()
      if self.peek('('):
        self.take()
        args = [self.expr()]
        while self.peek(','):
          self.take()
          args.append(self.expr())
        self.take(')')
        return self.algebra.call(tok[1], exponent, args)
      return self.algebra.atom(tok[1], exponent)
    raise self.error('Unexpected {!r}'.format(tok[1]))

  def rational(self):
    sign = 1
    if self.peek('-'):
      self.take()
      sign = -1
    value = Fraction(int(self.take()[1]))
    if self.peek('/'):
      self.take()
      tok = self.take()
      if tok[0] != 'num' or int(tok[1]) == 0:
        raise self.error('Invalid denominator')
      value /= int(tok[1])
    return sign * value

  def exponent(self):
    if self.peek('('):
      self.take()
      coords = [self.rational()]
      while self.peek(','):
        self.take()
        coords.append(self.rational())
      self.take(')')
      return tuple(coords)
    tok = self.peek()
    if tok is None or (tok[0] != 'num' and tok[1] != '-'):
      raise self.error('Expected an exponent')
    sign = 1
    if self.peek('-'):
      self.take()
      sign = -1
    return (sign * Fraction(int(self.take()[1])),)


def parse_expression(text, algebra):
  """Parses `text` into a value built by `algebra`."""
  try:
    return _Parser(str(text), algebra).parse()
  except ZeroDivisionError:
    raise ExpressionError('Division by zero in {!r}.'.format(text))


def split_top_level(text):
  """Splits `[a, b, [c, d]]` into ['a', 'b', '[c, d]']."""
  text = text.strip()
  if not (text.startswith('[') and text.endswith(']')):
    raise ExpressionError('Expected a bracketed list: {!r}.'.format(text))
  body = text[1:-1]
  items, depth, start = [], 0, 0
  for pos, ch in enumerate(body):
    if ch in '[(':
      depth += 1
    elif ch in '])':
      depth -= 1
    elif ch == ',' and depth == 0:
      items.append(body[start:pos].strip())
      start = pos + 1
  tail = body[start:].strip()
  if tail or items:
    items.append(tail)
  if any(not item for item in items):
    raise ExpressionError('Empty list entry in {!r}.'.format(text))
  return items


def parse_list(text, parse_fn):
  """Parses a possibly nested bracketed list, applying parse_fn to leaves."""
  text = text.strip()
  if text.startswith('['):
    return [parse_list(item, parse_fn) for item in split_top_level(text)]
  return parse_fn(text)
