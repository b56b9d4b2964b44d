"""Exact-arithmetic quantum cluster seeds for double Bruhat cells."""

from . import cgl, coxeter, dbc, qtorus, seedcore, verify

__all__ = ["cgl", "coxeter", "dbc", "qtorus", "seedcore", "verify"]
