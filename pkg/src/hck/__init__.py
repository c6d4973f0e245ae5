"""Homotopy colimits of covers and hypercovers of finite spaces, checked at chain level."""

__version__ = "0.1.0"
