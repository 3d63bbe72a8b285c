"""
Run Archive Service

Stores CLI runs in the SQLite archive and lists them back.
"""

import json
import logging
from typing import List, Optional

from ..database import create_tables, get_archive_db, init_archive_db
from ..models import RunRecord
from ..schemas import RunConfig

logger = logging.getLogger(__name__)


def archive_run(
    config: RunConfig, report: Optional[dict], exit_code: int, db_path: Optional[str] = None
) -> int:
    """
    Append one run to the archive.

    Args:
        config: Resolved run config
        report: Serialized report, None if the run produced none
        exit_code: Process exit code
        db_path: Archive file; defaults to QCMOD_ARCHIVE_PATH

    Returns:
        Id of the new record
    """
    create_tables(init_archive_db(db_path))
    db = next(get_archive_db())
    try:
        record = RunRecord(
            command=config.command,
            config_hash=config.digest(),
            config_json=json.dumps(config.resolved(), sort_keys=True),
            report_json=json.dumps(report, sort_keys=True) if report is not None else None,
            exit_code=exit_code,
        )
        db.add(record)
        db.commit()
        db.refresh(record)
        logger.info(f"Archived run {record.id} ({config.command}, exit {exit_code})")
        return record.id
    finally:
        db.close()


def list_runs(
    db_path: Optional[str] = None, command: Optional[str] = None, config_hash: Optional[str] = None
) -> List[dict]:
    """Archived runs in insertion order, optionally filtered by command or config hash."""
    create_tables(init_archive_db(db_path))
    db = next(get_archive_db())
    try:
        query = db.query(RunRecord)
        if command is not None:
            query = query.filter(RunRecord.command == command)
        if config_hash is not None:
            query = query.filter(RunRecord.config_hash == config_hash)
        return [record.to_dict() for record in query.order_by(RunRecord.id).all()]
    finally:
        db.close()
