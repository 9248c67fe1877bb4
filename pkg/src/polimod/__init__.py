"""polimod: collect, extract, annotate, and analyze platform moderation policies."""

__version__ = "0.1.0"
