"""Damped transport by divergence-free flows on the flat torus."""

import json

from ._core import (
    AnalyticField,
    Error,
    FlowMap,
    VectorField,
    canonicalize,
    check_config,
    compute_c0,
    ergodicity,
    fit_decay_rate,
    interpolate,
    inviscid_norms,
    log_window_end,
    lp_norm,
    run_config,
    run_criterion,
    set_thread_count,
    solve_inviscid,
    solve_viscous,
    spatial_average,
    to_spectral,
    version,
)


def run_experiment(text, out_dir=""):
    """Runs a config given as text and returns the summary as a dict."""
    return json.loads(run_config(text, out_dir))


__version__ = version()
