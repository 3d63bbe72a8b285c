"""
Services Module

The run archive.
"""

from .archive import archive_run, list_runs

__all__ = ["archive_run", "list_runs"]
