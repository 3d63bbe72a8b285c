"""
Archive Initialization

Creates the archive tables.
"""

import logging
from typing import Optional

from .base import Base
from .connection import get_archive_engine, init_archive_db

logger = logging.getLogger(__name__)


def create_tables(engine=None):
    """
    Create all archive tables that do not exist yet.

    Args:
        engine: SQLAlchemy engine (uses the archive engine if None)
    """
    # registers RunRecord on Base.metadata
    from ..models import RunRecord  # noqa: F401

    if engine is None:
        engine = get_archive_engine()
    Base.metadata.create_all(bind=engine)
    logger.debug("Archive tables ready")


def initialize_archive(db_path: Optional[str] = None):
    """
    Connect to the archive and create its tables.

    Example:
        >>> initialize_archive("./qcmod-runs.db")
    """
    engine = init_archive_db(db_path)
    create_tables(engine)
    logger.info(f"Run archive ready at {db_path or 'QCMOD_ARCHIVE_PATH'}")
    return engine
