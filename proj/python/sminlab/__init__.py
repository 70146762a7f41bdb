"""Python access to the sminlab core."""

import json

from ._core import (
    DegenerateStructure,
    InvalidInput,
    PreconditionError,
    UnsupportedSize,
    cube_demo,
    row_distances,
    run_suite,
    sample_matrix,
    singular_data,
    singular_values,
    suite_names,
    wilson_interval,
)

__all__ = [
    "DegenerateStructure",
    "InvalidInput",
    "PreconditionError",
    "UnsupportedSize",
    "cube_demo",
    "estimate_tail",
    "row_distances",
    "run_suite",
    "sample_matrix",
    "singular_data",
    "singular_values",
    "suite_names",
    "wilson_interval",
]


def estimate_tail(config, workers=0):
    """Run a tail experiment.

    `config` is a dict in the JSON config format accepted by
    ``smin-lab tail --config``. Returns the decoded result document.
    """
    from ._core import _estimate_tail_json

    return json.loads(_estimate_tail_json(json.dumps(config), workers))
