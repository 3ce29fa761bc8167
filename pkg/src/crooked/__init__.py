"""Crooked functions on GF(2^m), their Preparata-like codes and crooked graphs."""

from .gf2m import FieldContext, field_new
from .vbf import VectorialFunction, from_power, gold, is_apn, is_crooked

__all__ = [
    "FieldContext",
    "VectorialFunction",
    "field_new",
    "from_power",
    "gold",
    "is_apn",
    "is_crooked",
]
__version__ = "0.1.0"
