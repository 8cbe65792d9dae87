"""
Shared fixtures: one registry for the whole session and the fast local config.
"""

import random

import pytest

from mahler.config import load_config
from mahler.forms import FormRegistry


@pytest.fixture(scope='session')
def registry():
    return FormRegistry()


@pytest.fixture(scope='session')
def local_config():
    return load_config('local')


@pytest.fixture
def rng():
    return random.Random(20240601)
