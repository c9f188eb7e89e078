"""Thetanull counting and Kempf rank verification for principally polarized abelian varieties."""

__version__ = "0.1.0"
