"""Ordered ideal triangulations, FAMED certification and state-integral numerics."""

import json as _json
import os as _os

_here = _os.path.dirname(__file__)
if "FAMEDKIT_PRESET_DIR" not in _os.environ and _os.path.isdir(_os.path.join(_here, "presets")):
    _os.environ["FAMEDKIT_PRESET_DIR"] = _os.path.join(_here, "presets")

from ._core import (  # noqa: E402
    InputError,
    QuadratureError,
    SingularMatrix,
    __version__,
    bloch_wigner,
    dilog,
    flattening,
    jones,
    lobachevsky,
    log_phi_b,
    one_loop,
    partition_modulus,
    phi_b,
    predicted_modulus,
    preset_dir,
    preset_names,
    run_criterion,
    volume_functional,
)
from . import _core


def parse(file):
    return _json.loads(_core._parse(file))


def matrices(file):
    return _json.loads(_core._matrices(file))


def famed(file, drop_edge=-1, convention="gpp-gp"):
    return _json.loads(_core._famed(file, drop_edge, convention))


def nz(file, drop_edge=-1, convention="gpp-gp"):
    return _json.loads(_core._nz(file, drop_edge, convention))


def solve(file, u=0j):
    out = _json.loads(_core._solve(file, complex(u)))
    out["z"] = [complex(*p) for p in out["z"]]
    out["y"] = [complex(*p) for p in out["y"]]
    return out


def maximize_volume(file, theta=None, curve="l"):
    return _json.loads(_core._maximize_volume(file, theta, curve))


def cli(*args):
    """Run the command-line front end; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
