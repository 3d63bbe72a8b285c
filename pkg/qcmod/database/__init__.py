"""
Database Package

Connection and session management for the optional SQLite run archive.
"""

from .connection import init_archive_db, get_archive_db, get_archive_engine
from .base import Base, create_database_engine, create_session_maker, get_database_url
from .init_db import create_tables, initialize_archive

__all__ = [
    "init_archive_db",
    "get_archive_db",
    "get_archive_engine",
    "Base",
    "create_database_engine",
    "create_session_maker",
    "get_database_url",
    "create_tables",
    "initialize_archive",
]
