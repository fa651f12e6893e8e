"""HTTP service exposing analysis, the article feed and configuration."""

from .app import create_app

__all__ = ["create_app"]
