"""privlens: find personal-data occurrences and processing flows in code."""

__version__ = "0.1.0"
