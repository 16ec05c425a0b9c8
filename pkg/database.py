"""
Database setup for the optional table cache

Persistence is enabled by setting DYCKGRASS_DATABASE_URL, e.g.
sqlite:///./dyckgrass.db
"""

from typing import Generator

from sqlalchemy import create_engine
from sqlalchemy.orm import Session, sessionmaker

from config import settings
from database_models import Base

# Create engine
engine = create_engine(
    settings.engine_url,
    pool_pre_ping=True,
    echo=settings.log_level.upper() == "DEBUG"
)

# Create session factory
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


def create_tables():
    """Create all tables in the database"""
    Base.metadata.create_all(bind=engine)


def get_db() -> Generator[Session, None, None]:
    """Yield a session and always close it"""
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()
