"""
SQLAlchemy models for persisted Kazhdan-Lusztig tables
"""

import enum

from sqlalchemy import Column, DateTime, Enum, Integer, String, Text, UniqueConstraint
from sqlalchemy.orm import declarative_base
from sqlalchemy.sql import func

Base = declarative_base()


class TableKindEnum(enum.Enum):
    H = "h"
    G = "g"


class PolynomialEntryDB(Base):
    """One nonzero entry of an h or g table"""
    __tablename__ = "kl_entries"
    __table_args__ = (UniqueConstraint("n", "i", "kind", "lower", "upper", name="uq_kl_entry"),)

    id = Column(Integer, primary_key=True, index=True, autoincrement=True)
    n = Column(Integer, nullable=False, index=True)
    i = Column(Integer, nullable=False, index=True)
    kind = Column(Enum(TableKindEnum), nullable=False, index=True)
    lower = Column(String(32), nullable=False)
    upper = Column(String(32), nullable=False)
    polynomial = Column(Text, nullable=False)
    created_at = Column(DateTime(timezone=True), server_default=func.now(), nullable=False)

    def __repr__(self):
        return f"<PolynomialEntry({self.kind.value}[{self.lower},{self.upper}]={self.polynomial})>"
