"""Computads, terms and free algebras for sorted signatures over finite
direct categories, with the classification, factorisation and cofibrancy
machinery built on top of them."""

__all__ = ["__version__"]
__version__ = "0.1.0"
