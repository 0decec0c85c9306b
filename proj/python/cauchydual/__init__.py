"""Subnormality checks for Cauchy duals of multiplication operators on Dirichlet-type spaces."""

import csv
import io
import json

from . import _core
from ._core import SCHEMA_VERSION, Error

__all__ = ["SCHEMA_VERSION", "Error", "analyze", "paper_check", "kernel", "sweep"]


def _policy(policy):
    return None if policy is None else json.dumps(policy)


def analyze(measure, oracle=False, policy=None):
    """Full pipeline on one measure ("turns:weights" or a JSON document)."""
    return json.loads(_core.analyze(measure, oracle, _policy(policy)))


def paper_check(measure=None, rotate=None, policy=None):
    return json.loads(_core.paper_check(measure, rotate, _policy(policy)))


def kernel(measure, z, lam, policy=None):
    return json.loads(_core.kernel(measure, complex(z), complex(lam), _policy(policy)))


def sweep(grid=12, weights=((1.0, 1.0, 1.0),), jobs=0, policy=None):
    """Rows of the three-atom sweep as dicts keyed by the CSV header."""
    text = _core.sweep(grid, [tuple(w) for w in weights], jobs, _policy(policy))
    return list(csv.DictReader(io.StringIO(text)))
