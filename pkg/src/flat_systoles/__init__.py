"""Systoles of origamis via graphs of saddle connections."""

from .errors import FlatSystolesError
from .lengths import ExactLength
from .origami import Origami, Permutation, Stratum, parse_origami

__all__ = ["ExactLength", "FlatSystolesError", "Origami", "Permutation", "Stratum", "parse_origami"]
__version__ = "0.1.0"
