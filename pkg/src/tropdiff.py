# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
"""Command-line front end.

  python tropdiff.py trop roots --model=PC "x^2 - (1+t)*x + t"
  python tropdiff.py zsigma coset --A="[[1-s],[1-s^2]]" --b="[1,1]"
  python tropdiff.py amalg decide ../configs/problems/intro_qi.json
  python tropdiff.py --batch < requests.ndjson

Results go to stdout as deterministic JSON; logs go to stderr. Exit codes:
0 for a result (negative verdicts included), 2 for a domain error, 1 for a
parse or usage error.
"""
import concurrent.futures
import functools
import json
import os
import sys

from absl import app
from absl import flags
from absl import logging

from algebra import cyclotomic
from algebra import int_lattice
import amalgamation
from errors import ExpressionError
from errors import TropdiffError
import expr_parser
import fixed_field_demo
import hahn_series
import hparams_config
import sigma_poly
import tropical
import zsigma_lattice

FLAGS = flags.FLAGS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2

_OPTION_FLAGS = ('A', 'b', 'z', 'a', 'gamma', 'rows', 'index', 'power',
                 'precision')


def define_flags():
  """Define the flags."""
  flags.DEFINE_string('model', 'ISO',
                      'Model preset (PC, ISO, Q, LEX2) or a yaml file.')
  flags.DEFINE_string('precision', None,
                      'Target precision: a rational or a tuple like (1,0).')
  flags.DEFINE_bool('json', True, 'Compact JSON; otherwise indented JSON.')
  flags.DEFINE_bool('batch', False,
                    'Read newline-delimited JSON requests from stdin.')
  flags.DEFINE_string('A', None, 'Z[sigma] matrix, e.g. [[1-s],[1-s^2]].')
  flags.DEFINE_string('b', None, 'List of target series, e.g. [1, 1].')
  flags.DEFINE_string('z', None, 'List of candidate series.')
  flags.DEFINE_string('a', None, 'Approximate root or evaluation point.')
  flags.DEFINE_string('gamma', None, 'Value group point, e.g. 1/2 or [1, 0].')
  flags.DEFINE_string('rows', None, 'Integer exponent rows, e.g. [[1,-1]].')
  flags.DEFINE_string('index', None, 'Taylor multi-index, e.g. [1, 0].')
  flags.DEFINE_integer('power', 1, 'Power of sigma.')


@functools.lru_cache(maxsize=None)
def load_model(model):
  config = hparams_config.get_model_config(model)
  return config, hparams_config.build_context(config)


def _json_value(x):
  """Exact values become strings; containers are converted recursively."""
  if isinstance(x, (bool, int, str)) or x is None:
    return x
  if isinstance(x, dict):
    return {str(k): _json_value(v) for k, v in x.items()}
  if isinstance(x, (list, tuple)):
    return [_json_value(v) for v in x]
  return str(x)


def render(obj, compact=True):
  if compact:
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))
  return json.dumps(obj, sort_keys=True, indent=2)


def _arg(args, k, what):
  if len(args) <= k:
    raise ExpressionError('Missing argument: {}.'.format(what))
  return args[k]


def _option(options, key, what=None):
  value = options.get(key)
  if value is None:
    raise ExpressionError('Missing option --{}{}.'.format(
        key, ' ({})'.format(what) if what else ''))
  return value


def _series_list(ctx, text):
  parsed = expr_parser.parse_list(text, ctx.parse)
  return parsed if isinstance(parsed, list) else [parsed]


def _int_rows(text):
  def leaf(s):
    try:
      return int(s)
    except ValueError:
      raise ExpressionError('Expected an integer, got {!r}.'.format(s))
  rows = expr_parser.parse_list(text, leaf)
  if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
    raise ExpressionError('Expected a list of integer rows: {!r}.'.format(text))
  return rows


def _point(ctx, text):
  """`1/2`, `(1,0)` or a list of such."""
  text = str(text).strip()
  try:
    if text.startswith('['):
      return [ctx.vector(item) for item in expr_parser.split_top_level(text)]
    return [ctx.vector(text)]
  except ValueError as e:
    if isinstance(e, TropdiffError):
      raise
    raise ExpressionError(str(e))


def _precision(ctx, options, default=None):
  value = options.get('precision', default)
  if value is None:
    raise ExpressionError('Missing option --precision.')
  try:
    return ctx.vector(str(value))
  except ValueError as e:
    raise ExpressionError(str(e))


def _residue(ctx, text):
  f = ctx.parse(text)
  if f.is_zero():
    return ctx.field.zero
  if not f.is_exact() or any(not e.is_zero() for e, _ in f.terms):
    raise ExpressionError('{!r} is not a residue field constant.'.format(text))
  return f.terms[0][1]


def _valuation_str(f):
  return 'inf' if f.is_zero() else f.valuation()


# hahn


def _hahn_eval(ctx, args, options):
  f = ctx.parse(_arg(args, 0, 'series'))
  if options.get('precision') is not None:
    f = f.truncate(_precision(ctx, options))
  return {'series': f}


def _hahn_v(ctx, args, options):
  return {'valuation': _valuation_str(ctx.parse(_arg(args, 0, 'series')))}


def _hahn_ac(ctx, args, options):
  return {'ac': ctx.parse(_arg(args, 0, 'series')).ac()}


def _hahn_sigma(ctx, args, options):
  f = ctx.parse(_arg(args, 0, 'series'))
  return {'series': hahn_series.hs_sigma(f, int(options.get('power', 1)))}


def _hahn_inv(ctx, args, options):
  return {'series': hahn_series.hs_inv(ctx.parse(_arg(args, 0, 'series')))}


def _hahn_leading(ctx, args, options):
  v, ac, res = hahn_series.hs_leading(ctx.parse(_arg(args, 0, 'series')))
  return {'valuation': v, 'ac': ac, 'res': res}


# trop


def _laurent(ctx, args, nvars=None):
  return tropical.parse_laurent(ctx, _arg(args, 0, 'Laurent polynomial'),
                                nvars)


def _gamma(ctx, args, options):
  text = options.get('gamma')
  if text is None:
    text = _arg(args, 1, 'gamma')
  return _point(ctx, text)


def _trop_roots(ctx, args, options):
  trop = tropical.tropicalize(_laurent(ctx, args, 1))
  return {'roots': tropical.trop_roots_univariate(trop)}


def _trop_eval(ctx, args, options):
  f = _laurent(ctx, args)
  value, count = tropical.trop_eval(tropical.tropicalize(f),
                                    _gamma(ctx, args, options))
  return {'value': value, 'argmin_count': count, 'root': count >= 2}


def _trop_initial(ctx, args, options):
  form = tropical.initial_form(_laurent(ctx, args), _gamma(ctx, args, options))
  return {'initial_form': form, 'monomial': form.is_monomial()}


def _trop_newton(ctx, args, options):
  return {'valuations': tropical.newton_valuations(_laurent(ctx, args, 1))}


def _trop_kapranov(ctx, args, options):
  report = tropical.kapranov_check(_laurent(ctx, args, 1))
  return {'passed': report.passed, 'trop_roots': report.trop_roots,
          'newton': report.newton, 'discrepancy': report.discrepancy}


def _trop_fundamental(ctx, args, options):
  rows = _int_rows(_option(options, 'rows', 'exponent rows'))
  targets = _series_list(ctx, _option(options, 'b', 'targets'))
  coset = tropical.BinomialCoset.from_equations(ctx, rows, targets)
  result = tropical.fundamental_check_binomial(coset,
                                               _gamma(ctx, args, options))
  return {'status': result.status, 'witness': result.witness,
          'reason': result.reason, 'precision': result.precision}


# sigma


def _sigma_poly(ctx, args, k=0):
  return sigma_poly.parse_sigma_poly(ctx, _arg(args, k, 'sigma-polynomial'))


def _sigma_point(ctx, options):
  return ctx.parse(_option(options, 'a', 'point'))


def _sigma_config(ctx, args, options):
  config = sigma_poly.sp_hensel_config(_sigma_poly(ctx, args),
                                       _sigma_point(ctx, options))
  return {'ok': config.ok, 'delta': config.delta, 'reason': config.reason}


def _sigma_hensel(ctx, args, options):
  config, _ = load_model(options['model'])
  result = sigma_poly.sp_hensel_lift(
      _sigma_poly(ctx, args), _sigma_point(ctx, options),
      _precision(ctx, options), config.hensel_max_iterations)
  return {'root': result.root, 'delta': result.delta,
          'iterations': result.iterations,
          'steps': [[delta, c] for delta, c in result.steps]}


def _sigma_complexity(ctx, args, options):
  return {'complexity': list(sigma_poly.sp_complexity(_sigma_poly(ctx, args)))}


def _sigma_residue(ctx, args, options):
  report = sigma_poly.sp_residue_reduction(_sigma_poly(ctx, args))
  return {'residue': report.residue,
          'complexity': list(report.complexity),
          'residue_complexity': (None if report.residue_complexity is None
                                 else list(report.residue_complexity)),
          'preserved': report.preserved}


def _sigma_taylor(ctx, args, options):
  index = expr_parser.parse_list(_option(options, 'index', 'multi-index'), int)
  if not isinstance(index, list):
    index = [index]
  return {'taylor': sigma_poly.sp_taylor(_sigma_poly(ctx, args), index)}


def _sigma_regular(ctx, args, options):
  family = [sigma_poly.parse_sigma_poly(ctx, text) for text in args]
  return {'regular': sigma_poly.sp_is_regular(_sigma_point(ctx, options),
                                              family)}


# zsigma


def _zsigma_system(ctx, options, with_z=False):
  a = zsigma_lattice.ZSigmaMatrix.parse(_option(options, 'A', 'matrix'))
  b = _series_list(ctx, _option(options, 'b', 'targets'))
  if not with_z:
    return a, b
  return a, b, _series_list(ctx, _option(options, 'z', 'candidate'))


def _zsigma_coset(ctx, args, options):
  a, b = _zsigma_system(ctx, options)
  conversion = zsigma_lattice.matrix_to_coset(a, b)
  coset = conversion.coset
  return {'ell': conversion.ell, 'C': conversion.rows,
          'C_matrices': conversion.c_matrices, 'shifts': conversion.shifts,
          'lattice': [list(u) for u in coset.lattice.basis],
          'targets': coset.targets, 'proper': coset.proper}


def _zsigma_check(ctx, args, options):
  a, b, z = _zsigma_system(ctx, options, with_z=True)
  conversion = zsigma_lattice.matrix_to_coset(a, b)
  direct, via_coset = zsigma_lattice.check_orbit_membership(
      conversion, a, b, z)
  return {'direct': direct, 'via_coset': via_coset}


def _zsigma_transfer(ctx, args, options):
  a, b, z = _zsigma_system(ctx, options, with_z=True)
  return {'u': zsigma_lattice.purity_transfer(a, b, z)}


# lattice


def _lattice_saturate(ctx, args, options):
  lattice = int_lattice.hnf(_int_rows(_arg(args, 0, 'rows')))
  saturated = int_lattice.saturate(lattice)
  index = int_lattice.lattice_index(lattice, saturated) if lattice.rank else 1
  return {'basis': [list(u) for u in saturated.basis], 'index': index,
          'primitive': index == 1}


def _lattice_cc_map(ctx, args, options):
  return {'xi': zsigma_lattice.connected_component_map(
      _int_rows(_arg(args, 0, 'rows')))}


# amalg


def _json_argument(text):
  text = text.strip()
  if text.startswith('{'):
    try:
      return json.loads(text)
    except json.JSONDecodeError as e:
      raise ExpressionError('Invalid JSON: {}'.format(e))
  if not os.path.exists(text):
    raise ExpressionError('No such file: {}'.format(text))
  with open(text) as f:
    return json.load(f)


def _amalg_decide(ctx, args, options):
  problem = amalgamation.reduce_valued_to_residue(
      _json_argument(_arg(args, 0, 'problem')))
  verdict = amalgamation.decide_amalgamation(problem)
  return {'solvable': verdict.solvable,
          'witness': verdict.witness.as_dict() if verdict.witness else None}


def _amalg_base(ctx, args, options):
  data = _json_argument(_arg(args, 0, 'subfield'))
  try:
    x = amalgamation.CycloDiffSubfield.from_dict(data['n'], data)
  except (KeyError, TypeError) as e:
    raise ExpressionError('Malformed subfield: {}'.format(e))
  report = amalgamation.is_amalgamation_base(x)
  certificate = None
  if report.certificate:
    certificate = [side.as_dict() for side in report.certificate]
  return {'is_base': report.is_base, 'certificate': certificate,
          'ambient_relative': report.ambient_relative,
          'top_extension_count': amalgamation.top_extension_count(x)}


# demo and cyclo


def _demo_fixed_field(ctx, args, options):
  precision = _precision(ctx, options, default=4)
  report = fixed_field_demo.demo_fixed_field(ctx, precision)
  return dict(report._asdict())


def _cyclo_solve(ctx, args, options):
  text = _arg(args, 0, 'coefficients')
  items = expr_parser.split_top_level(text) if text.strip().startswith(
      '[') else [text]
  coeffs = [_residue(ctx, item) for item in items]
  rhs = _residue(ctx, _option(options, 'b', 'right-hand side'))
  if all(c.is_zero() for c in coeffs):
    raise ExpressionError('All coefficients are zero.')
  solution = cyclotomic.solve_linear_difference(ctx.field, coeffs, rhs)
  return {'solvable': solution is not None, 'solution': solution}


COMMANDS = {
    ('hahn', 'eval'): _hahn_eval,
    ('hahn', 'v'): _hahn_v,
    ('hahn', 'ac'): _hahn_ac,
    ('hahn', 'sigma'): _hahn_sigma,
    ('hahn', 'inv'): _hahn_inv,
    ('hahn', 'leading'): _hahn_leading,
    ('trop', 'roots'): _trop_roots,
    ('trop', 'eval'): _trop_eval,
    ('trop', 'initial'): _trop_initial,
    ('trop', 'newton'): _trop_newton,
    ('trop', 'kapranov'): _trop_kapranov,
    ('trop', 'fundamental'): _trop_fundamental,
    ('sigma', 'config'): _sigma_config,
    ('sigma', 'hensel'): _sigma_hensel,
    ('sigma', 'complexity'): _sigma_complexity,
    ('sigma', 'taylor'): _sigma_taylor,
    ('sigma', 'residue'): _sigma_residue,
    ('sigma', 'regular'): _sigma_regular,
    ('zsigma', 'coset'): _zsigma_coset,
    ('zsigma', 'check'): _zsigma_check,
    ('zsigma', 'transfer'): _zsigma_transfer,
    ('lattice', 'saturate'): _lattice_saturate,
    ('lattice', 'cc-map'): _lattice_cc_map,
    ('amalg', 'decide'): _amalg_decide,
    ('amalg', 'base'): _amalg_base,
    ('demo', 'fixed-field'): _demo_fixed_field,
    ('cyclo', 'solve'): _cyclo_solve,
}


def execute(command, model='ISO', args=(), options=None):
  """Runs one request.

  Args:
    command: 'group name', e.g. 'trop roots'.
    model: preset name or yaml path.
    args: positional arguments (strings).
    options: dict of option values keyed like the flags.

  Returns:
    (exit_code, payload): payload is the JSON-ready result, or
    {"error": {"kind", "message"}} on failure.
  """
  handler = COMMANDS.get(tuple(str(command).split()))
  if handler is None:
    return EXIT_USAGE, {'error': {'kind': 'usage_error',
                                  'message': 'Unknown command: {!r}.'.format(
                                      command)}}
  try:
    options = dict(options or {})
    options['model'] = model
    _, ctx = load_model(model)
    result = handler(ctx, list(args), options)
  except ExpressionError as e:
    return EXIT_USAGE, {'error': {'kind': e.kind, 'message': str(e)}}
  except TropdiffError as e:
    logging.info('%s failed: %s', command, e)
    return EXIT_DOMAIN, {'error': {'kind': e.kind, 'message': str(e)}}
  except (ValueError, KeyError, TypeError, OSError) as e:
    return EXIT_USAGE, {'error': {'kind': 'usage_error', 'message': str(e)}}
  return EXIT_OK, _json_value(result)


def _batch_request(line):
  try:
    request = json.loads(line)
    command = request['command']
    model = request.get('model', 'ISO')
    args = request.get('args', [])
  except (ValueError, KeyError, TypeError, AttributeError) as e:
    return EXIT_USAGE, {'error': {'kind': 'usage_error',
                                  'message': 'Bad request: {}'.format(e)}}
  try:
    code, payload = execute(command, model, args, request.get('options'))
  except Exception as e:  # pylint: disable=broad-except
    logging.exception('Request %r failed.', line)
    code, payload = EXIT_USAGE, {'error': {'kind': 'usage_error',
                                             'message': str(e)}}
  response = {'command': command, 'model': model, 'args': args}
  if code == EXIT_OK:
    response['result'] = payload
  else:
    response.update(payload)
  return code, response


def run_batch(lines, workers=None):
  """Evaluates NDJSON requests concurrently; responses keep input order."""
  lines = [line for line in lines if line.strip()]
  if workers is None:
    workers = hparams_config.default_model_configs().batch_workers
  logging.info('Batch of %d requests on %d workers.', len(lines), workers)
  with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
    responses = list(pool.map(_batch_request, lines))
  code = max([c for c, _ in responses] + [EXIT_OK])
  return code, [r for _, r in responses]


def main(argv):
  if FLAGS.batch:
    code, responses = run_batch(sys.stdin.readlines())
    for response in responses:
      print(render(response))
    sys.exit(code)
  if len(argv) < 3:
    print(render({'error': {'kind': 'usage_error',
                            'message': 'Usage: tropdiff <group> <command> '
                                       '[args] [--flags]'}}))
    sys.exit(EXIT_USAGE)
  options = {k: getattr(FLAGS, k) for k in _OPTION_FLAGS
             if getattr(FLAGS, k) is not None}
  code, payload = execute(' '.join(argv[1:3]), FLAGS.model, argv[3:], options)
  print(render(payload, compact=FLAGS.json))
  sys.exit(code)


if __name__ == '__main__':
  define_flags()
  logging.set_verbosity(logging.WARNING)
  app.run(main)
