"""
Tests for database models
"""
from database_models import Base, PolynomialEntryDB, TableKindEnum

class TestDatabaseModels:
    def test_table_kind_enum(self):
        """Test TableKindEnum values"""
        assert TableKindEnum.H.value == "h"
        assert TableKindEnum.G.value == "g"
        assert TableKindEnum("g") is TableKindEnum.G

    def test_entry_model_creation(self):
        """Test PolynomialEntryDB table name and attributes"""
        assert PolynomialEntryDB.__tablename__ == "kl_entries"

        for name in ("id", "n", "i", "kind", "lower", "upper", "polynomial", "created_at"):
            assert hasattr(PolynomialEntryDB, name)

    def test_entry_repr(self):
        """Test PolynomialEntryDB __repr__ method"""
        entry = PolynomialEntryDB(n=4, i=2, kind=TableKindEnum.H, lower="DDUU", upper="UDUD",
                                  polynomial="v^3+v")
        assert repr(entry) == "<PolynomialEntry(h[DDUU,UDUD]=v^3+v)>"

    def test_base_model(self):
        """Test Base declarative base"""
        assert Base is not None
        assert "kl_entries" in Base.metadata.tables

    def test_column_properties(self):
        """Test column properties and constraints"""
        id_col = PolynomialEntryDB.__table__.columns['id']
        assert id_col.primary_key
        assert id_col.autoincrement
        assert id_col.index

        for name in ("n", "i", "kind"):
            col = PolynomialEntryDB.__table__.columns[name]
            assert not col.nullable
            assert col.index

        lower_col = PolynomialEntryDB.__table__.columns['lower']
        assert not lower_col.nullable
        assert lower_col.type.length == 32

        poly_col = PolynomialEntryDB.__table__.columns['polynomial']
        assert not poly_col.nullable

    def test_unique_entry_constraint(self):
        """Test one row per (n, i, kind, lower, upper)"""
        constraints = {c.name for c in PolynomialEntryDB.__table__.constraints}
        assert "uq_kl_entry" in constraints
