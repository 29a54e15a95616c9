"""Quivers with a frozen vertex and the Boolean reflection monoids they present."""

__version__ = "0.1.0"
