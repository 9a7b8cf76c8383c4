"""Shared fixtures: the small algebras every test module works on"""

import os
import random

import pytest

from config.config import Config
from linfty.dgla import lie_algebra
from linfty.structure import dgla_structure

SL2_TABLE = {('h', 'e'): {'e': 2}, ('h', 'f'): {'f': -2}, ('e', 'f'): {'h': 1}}
AFF1_TABLE = {('x', 'y'): {'y': 1}}
BOREL_TABLE = {('e11', 'e12'): {'e12': 1}, ('e12', 'e22'): {'e12': 1}}

# rho(x), rho(y) of the adjoint action of aff(1) on V = span(a, b), a ~ x, b ~ y
AFF1_ADJOINT = [
    [[0, 0], [0, 1]],
    [[0, 0], [-1, 0]],
]


@pytest.fixture
def sl2():
    return lie_algebra('sl2', ['h', 'e', 'f'], SL2_TABLE)


@pytest.fixture
def aff1():
    return lie_algebra('aff1', ['x', 'y'], AFF1_TABLE)


@pytest.fixture
def borel():
    """Upper triangular 2x2 matrices"""
    return lie_algebra('b2', ['e11', 'e12', 'e22'], BOREL_TABLE)


@pytest.fixture
def sl2_structure(sl2):
    return dgla_structure(sl2, cap=3)


@pytest.fixture
def aff1_structure(aff1):
    return dgla_structure(aff1, cap=3)


@pytest.fixture
def rng():
    return random.Random(Config.RANDOM['seed'])


@pytest.fixture
def corpus():
    """Path of a document in the shipped corpus"""
    def path(name):
        return os.path.join(Config.DOCUMENTS['directory'], name + Config.DOCUMENTS['extension'])
    return path


@pytest.fixture
def log_file(tmp_path, monkeypatch):
    """Send the CLI's rotating log file into the test directory"""
    path = str(tmp_path / 'logs' / 'verifier.log')
    monkeypatch.setitem(Config.LOGGING, 'file_path', path)
    monkeypatch.setitem(Config.LOGGING, 'log_resources', False)
    return path
