"""Editorial assistant: keyword ranking and headline shareability scoring."""

__version__ = "0.1.0"
