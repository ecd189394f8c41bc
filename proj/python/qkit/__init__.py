"""Finite-dimensional quantum toolkit (Python bindings)."""

import json as _json

from ._qkit import *  # noqa: F401,F403
from ._qkit import QkitError, run_scenario_json


def run_scenario(name, **options):
    """Run a verification scenario and return its report as a dict."""
    return _json.loads(run_scenario_json(name, **options))
