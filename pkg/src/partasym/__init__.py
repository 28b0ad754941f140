"""Exact counts and circle-method asymptotics for six partition families."""

__version__ = "0.1.0"
