"""Sheets of spherical conjugacy classes: catalog, slice certification and a finite-field oracle."""

import json

from ._core import (
    REPORT_SCHEMA,
    BudgetExceeded,
    catalog,
    certify,
    equation_chain,
    gamma_shape,
    group_order,
    oracle_classes,
    run_report,
    witness,
)


def report(command, **kwargs):
    """run_report parsed into a dict."""
    return json.loads(run_report(command, **kwargs))


__all__ = [
    "REPORT_SCHEMA",
    "BudgetExceeded",
    "catalog",
    "certify",
    "equation_chain",
    "gamma_shape",
    "group_order",
    "oracle_classes",
    "report",
    "run_report",
    "witness",
]
