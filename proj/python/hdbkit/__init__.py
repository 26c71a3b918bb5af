"""Healthy Diet Basket adequacy scoring over FAO food balance sheets.

Thin wrapper around the compiled ``_hdbkit`` extension. The heavy lifting
(ingestion, splicing, scoring, aggregation, projections) lives in C++; this
package exposes the scoring primitives and the pipeline entry points.
"""

try:
    from ._hdbkit import (  # noqa: F401
        PipelineError,
        __version__,
        adequacy_ratios,
        group_labels,
        hdbi,
        run,
        score_supply,
        targets,
        total_energy,
        validate,
    )
except ImportError:  # running against a build tree where the module is top-level
    from _hdbkit import (  # noqa: F401
        PipelineError,
        __version__,
        adequacy_ratios,
        group_labels,
        hdbi,
        run,
        score_supply,
        targets,
        total_energy,
        validate,
    )

__all__ = [
    "PipelineError",
    "adequacy_ratios",
    "group_labels",
    "hdbi",
    "run",
    "score_supply",
    "targets",
    "total_energy",
    "validate",
]
