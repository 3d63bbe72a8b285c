"""
SQLAlchemy Base Configuration

Declarative base and engine/session helpers for the run archive.
"""

import os
from typing import Generator

from sqlalchemy import create_engine
from sqlalchemy.orm import declarative_base, sessionmaker


# Declarative base for archive tables
Base = declarative_base()


def get_database_url(db_path: str) -> str:
    """
    SQLite URL for a file path; ``:memory:`` gives an in-memory database.

    Example:
        >>> get_database_url(":memory:")
        'sqlite://'
    """
    if db_path == ":memory:":
        return "sqlite://"
    db_path = os.path.expanduser(db_path)
    if not os.path.isabs(db_path):
        db_path = os.path.abspath(db_path)
    return f"sqlite:///{db_path}"


def create_database_engine(db_path: str, **kwargs):
    """SQLAlchemy engine for a SQLite archive file."""
    return create_engine(
        get_database_url(db_path),
        connect_args={"check_same_thread": False},
        **kwargs,
    )


def create_session_maker(engine):
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)


def get_database_session(session_maker) -> Generator:
    """
    Yield a session and close it afterwards.

    Example:
        >>> db = next(get_database_session(SessionLocal))
    """
    db = session_maker()
    try:
        yield db
    finally:
        db.close()
