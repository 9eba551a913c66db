"""Canonical group quantization toolkit for the noncommutative plane."""

__version__ = "0.1.0"

from .poly import Observable, Scalar, Q1, Q2, P1, P2, THETA, HBAR, ONE

__all__ = [
    "Observable",
    "Scalar",
    "Q1",
    "Q2",
    "P1",
    "P2",
    "THETA",
    "HBAR",
    "ONE",
    "__version__",
]
