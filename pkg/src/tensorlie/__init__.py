"""Exact computation of Lie structures on tensor-product Lie algebras."""

from tensorlie.exactfield import QQ, GF, Field, Fp, char_guard, field_arith

__all__ = ["QQ", "GF", "Field", "Fp", "char_guard", "field_arith"]
__version__ = "0.1.0"
