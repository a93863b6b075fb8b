"""Broadband bosonic channel capacities (C++ core via pybind11)."""

from ._core import (
    CapacityReport,
    ChannelSpec,
    ConfigError,
    ConvergenceError,
    DomainError,
    NoiseModel,
    NumericError,
    OccupationPoint,
    PhysicalInputs,
    Quantity,
    SpectrumSolution,
    analytic_K,
    capacity_factor,
    capacity_report,
    g_entropy,
    gamma_fn,
    kernel,
    lambda_fn,
    mutual_information_thermal,
    thermal_ratio,
)

__all__ = [
    "CapacityReport",
    "ChannelSpec",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "NoiseModel",
    "NumericError",
    "OccupationPoint",
    "PhysicalInputs",
    "Quantity",
    "SpectrumSolution",
    "analytic_K",
    "capacity_factor",
    "capacity_report",
    "g_entropy",
    "gamma_fn",
    "kernel",
    "lambda_fn",
    "mutual_information_thermal",
    "thermal_ratio",
]
__version__ = "0.1.0"
