"""Exact computations with subdirect powers of finite semigroups."""

__version__ = "0.1.0"
