"""HTTP service: transcript uploads, nugget banks, evaluation sessions."""

from .app import create_app
from .store import FileStore

__all__ = ["FileStore", "create_app"]
