"""Pytest wiring: absl tests expect parsed flags (e.g. --test_tmpdir)."""
from absl import flags


def pytest_configure(config):
  del config
  if not flags.FLAGS.is_parsed():
    flags.FLAGS.mark_as_parsed()
