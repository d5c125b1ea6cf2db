"""Exact planar rigidity ranks for (mostly 4-valent) graphs."""

__version__ = "0.1.0"
