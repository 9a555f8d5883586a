"""Perfect state transfer on the Johnson association scheme, in exact arithmetic."""

__version__ = "0.1.0"
