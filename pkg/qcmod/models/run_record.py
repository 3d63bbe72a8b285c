"""
Run Record Model

One archived CLI run: its resolved config, report and exit code.
"""

import json

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.sql import func

from ..database.base import Base


class RunRecord(Base):
    """
    Archived run.

    ``config_hash`` is the SHA-256 of the resolved config, so reruns of the
    same config can be found and compared.
    """
    __tablename__ = "runs"

    id = Column(Integer, primary_key=True, index=True, autoincrement=True)
    command = Column(String, nullable=False, index=True)
    config_hash = Column(String(64), nullable=False, index=True)
    config_json = Column(Text, nullable=False)
    report_json = Column(Text, nullable=True)  # NULL when the run raised before producing a report
    exit_code = Column(Integer, nullable=False)
    created_at = Column(DateTime(timezone=True), server_default=func.now())

    def __repr__(self):
        return f"<RunRecord(id={self.id}, command={self.command}, exit_code={self.exit_code})>"

    def to_dict(self):
        """Convert to dictionary."""
        return {
            "id": self.id,
            "command": self.command,
            "config_hash": self.config_hash,
            "config": json.loads(self.config_json),
            "report": json.loads(self.report_json) if self.report_json else None,
            "exit_code": self.exit_code,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }
