"""Python access to the altdec core: frames, sigma-delta quantization,
decimation, the sample codec and the experiment harness."""

import json

from ._core import (
    AltdecError,
    decimate,
    decode,
    encode,
    fit_slopes,
    harmonic_frame,
    preset,
    run_experiment,
    scaling_entry,
    sigma_delta,
    verify_all as _verify_all,
)


def verify_all(max_m=24):
    """Identity report as a dict."""
    return json.loads(_verify_all(max_m))


__all__ = [
    "AltdecError",
    "decimate",
    "decode",
    "encode",
    "fit_slopes",
    "harmonic_frame",
    "preset",
    "run_experiment",
    "scaling_entry",
    "sigma_delta",
    "verify_all",
]
