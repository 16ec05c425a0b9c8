import logging
from typing import Callable, Dict, List, Optional, Tuple

from sqlalchemy.orm import Session

from database_models import PolynomialEntryDB, TableKindEnum
from dyck import clear_partition_cache
from hecke import PolynomialTable, inverse_g_table, parabolic_h_table
from laurent import LaurentPolynomial
from paths import enumerate_paths, path_from_string, validate_parameters

logger = logging.getLogger(__name__)


class TableService:
    """Computes h and g tables per (n, i) with an in-memory cache and an optional database"""

    def __init__(self, session_factory: Optional[Callable[[], Session]] = None):
        self._tables: Dict[Tuple[str, int, int], PolynomialTable] = {}
        self._session_factory = session_factory

    def h_table(self, n: int, i: int) -> PolynomialTable:
        """Get the KL table, computing it on first use"""
        return self._get(TableKindEnum.H, n, i)

    def g_table(self, n: int, i: int) -> PolynomialTable:
        """Get the inverse KL table, computing it on first use"""
        return self._get(TableKindEnum.G, n, i)

    def cached_keys(self) -> List[Tuple[str, int, int]]:
        return sorted(self._tables)

    def clear(self) -> None:
        """Drop cached tables and the shared partition cache"""
        self._tables.clear()
        clear_partition_cache()

    def _get(self, kind: TableKindEnum, n: int, i: int) -> PolynomialTable:
        validate_parameters(n, i)
        key = (kind.value, n, i)
        if key not in self._tables:
            table = self._load(kind, n, i)
            if table is None:
                table = self._compute(kind, n, i)
                self._store(table)
            self._tables[key] = table
        return self._tables[key]

    def _compute(self, kind: TableKindEnum, n: int, i: int) -> PolynomialTable:
        logger.debug("computing %s table for (%d,%d)", kind.value, n, i)
        if kind == TableKindEnum.H:
            return parabolic_h_table(n, i)
        return inverse_g_table(n, i, self.h_table(n, i))

    def _load(self, kind: TableKindEnum, n: int, i: int) -> Optional[PolynomialTable]:
        if self._session_factory is None:
            return None
        db = self._session_factory()
        try:
            rows = db.query(PolynomialEntryDB).filter(
                PolynomialEntryDB.n == n, PolynomialEntryDB.i == i, PolynomialEntryDB.kind == kind
            ).all()
            if not rows:
                return None
            table = PolynomialTable(n, i, kind.value, enumerate_paths(n, i))
            for row in rows:
                table.set(path_from_string(row.lower), path_from_string(row.upper),
                          LaurentPolynomial.parse(row.polynomial))
            logger.debug("loaded %d %s entries for (%d,%d)", len(rows), kind.value, n, i)
            return table
        finally:
            db.close()

    def _store(self, table: PolynomialTable) -> None:
        if self._session_factory is None:
            return
        kind = TableKindEnum(table.kind)
        db = self._session_factory()
        try:
            for (lower, upper), value in table.entries.items():
                db.add(PolynomialEntryDB(n=table.n, i=table.i, kind=kind, lower=lower, upper=upper,
                                         polynomial=str(value)))
            db.commit()
        except Exception:
            db.rollback()
            raise
        finally:
            db.close()


def _default_service() -> TableService:
    from config import settings
    if not settings.persistence_enabled:
        return TableService()
    from database import SessionLocal, create_tables
    create_tables()
    return TableService(SessionLocal)


# Global service instance
table_service = _default_service()
