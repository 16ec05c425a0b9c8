# Ensure tests can import top-level modules like `paths` and `hecke`,
# regardless of the working directory in CI runners.
import sys
import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

from paths import path_from_string
from table_service import TableService


@pytest.fixture
def clean_service():
    """Create a fresh TableService without persistence"""
    return TableService()


@pytest.fixture(autouse=True)
def reset_global_service():
    """Reset the global table_service before each test"""
    from table_service import table_service
    table_service.clear()


@pytest.fixture
def session_factory():
    """In-memory SQLite session factory with the schema created"""
    from database_models import Base
    engine = create_engine(
        "sqlite://",
        connect_args={"check_same_thread": False},
        poolclass=StaticPool,
    )
    Base.metadata.create_all(bind=engine)
    factory = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    yield factory
    engine.dispose()


@pytest.fixture
def gr24():
    """All six paths of (4, 2) by name"""
    names = ["DDUU", "DUDU", "UDDU", "DUUD", "UDUD", "UUDD"]
    return {name: path_from_string(name) for name in names}


@pytest.fixture
def h24(clean_service):
    return clean_service.h_table(4, 2)


@pytest.fixture
def g24(clean_service):
    return clean_service.g_table(4, 2)
