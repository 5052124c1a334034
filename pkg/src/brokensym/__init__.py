"""Exact computations of the E₁/E₂ pages of the broken-symmetry spectral
sequence of braid closures, with Bott–Samelson bimodules, a Koszul
Hochschild complex, and a Hecke-algebra HOMFLY oracle."""

from __future__ import annotations

__version__ = "0.1.0"

# Bumped whenever cached results could change; part of every cache key.
CACHE_VERSION = "brokensym-0.1.0-r1"
