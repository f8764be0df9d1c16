"""CSP solver with d-way, 2-way, restricted 2-way and adaptive branching."""

from ._core import (
    Decision,
    InstanceParseError,
    Problem,
    SearchReport,
    SweepPoint,
    TTestResult,
    brute_force_count,
    e_sweep,
    generate_nqueens,
    generate_rb,
    paired_t_test,
    parse_instance,
    render_instance,
    solve,
    spearman_trend,
)

__all__ = [
    "Decision",
    "InstanceParseError",
    "Problem",
    "SearchReport",
    "SweepPoint",
    "TTestResult",
    "brute_force_count",
    "e_sweep",
    "generate_nqueens",
    "generate_rb",
    "paired_t_test",
    "parse_instance",
    "render_instance",
    "solve",
    "spearman_trend",
]
