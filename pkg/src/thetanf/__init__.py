"""Theta series of trace-zero forms of totally real number fields."""

from .numfield import FieldRecord, Polynomial, field_lattice
from .qform import QuadraticForm, ThetaSeries, theta_series

__all__ = ["FieldRecord", "Polynomial", "QuadraticForm", "ThetaSeries", "field_lattice", "theta_series"]
__version__ = "0.1.0"
