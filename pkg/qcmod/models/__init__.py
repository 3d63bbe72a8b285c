"""
Database Models Module

SQLAlchemy ORM models of the run archive.
"""

from .run_record import RunRecord

__all__ = [
    "RunRecord",
]
