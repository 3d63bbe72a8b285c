"""
Archive Connection

Engine and session management for the SQLite run archive.
"""

from typing import Generator, Optional

from ..settings import archive_path
from .base import create_database_engine, create_session_maker, get_database_session


# Global engine and session maker for the archive
_archive_engine = None
_archive_session_maker = None
_archive_location = None


def init_archive_db(db_path: Optional[str] = None):
    """
    Connect to the run archive.

    Args:
        db_path: Path to the archive file.
                 Defaults to QCMOD_ARCHIVE_PATH

    Raises:
        ValueError: If no path is given and QCMOD_ARCHIVE_PATH is unset
    """
    global _archive_engine, _archive_session_maker, _archive_location

    if db_path is None:
        db_path = archive_path()
        if not db_path:
            raise ValueError(
                "QCMOD_ARCHIVE_PATH environment variable must be set. "
                "Example: QCMOD_ARCHIVE_PATH=./qcmod-runs.db"
            )

    if _archive_engine is not None and db_path == _archive_location:
        return _archive_engine
    if _archive_engine is not None:
        _archive_engine.dispose()

    _archive_engine = create_database_engine(db_path)
    _archive_session_maker = create_session_maker(_archive_engine)
    _archive_location = db_path
    return _archive_engine


def get_archive_db() -> Generator:
    """
    Session on the run archive.

    Example:
        >>> db = next(get_archive_db())
        >>> db.query(RunRecord).count()
    """
    if _archive_session_maker is None:
        init_archive_db()
    return get_database_session(_archive_session_maker)


def get_archive_engine():
    """The archive engine (for table creation)."""
    if _archive_engine is None:
        init_archive_db()
    return _archive_engine
