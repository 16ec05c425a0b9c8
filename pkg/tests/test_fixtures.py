"""
Tests for golden fixture files
"""
import pytest

from errors import ConfigurationError
from fixtures import emit_fixtures, fixture_name, load_table, read_fixture
from paths import enumerate_paths


class TestFixtures:
    def test_fixture_name(self):
        """Test the file naming scheme"""
        assert fixture_name("h", 4, 2) == "h_4_2.json"

    def test_emit_writes_all_kinds(self, tmp_path):
        """Test paths, h, g and partitions files for a small space"""
        written = emit_fixtures(tmp_path, 4, 2)
        assert sorted(p.name for p in written) == [
            "g_4_2.json", "h_4_2.json", "partitions_4_2.json", "paths_4_2.json",
        ]

    def test_no_partitions_for_large_n(self, tmp_path):
        """Test partition files are skipped above n = 5"""
        written = emit_fixtures(tmp_path, 6, 1)
        assert "partitions_6_1.json" not in {p.name for p in written}

    def test_read_back(self, tmp_path, h24, g24):
        """Test the readers reproduce the computed objects"""
        emit_fixtures(tmp_path, 4, 2)
        assert read_fixture(tmp_path / "paths_4_2.json") == enumerate_paths(4, 2)
        assert load_table("h", 4, 2, tmp_path).entries == h24.entries
        assert load_table("g", 4, 2, tmp_path).entries == g24.entries

    def test_read_partitions(self, tmp_path):
        """Test the partition map of (4, 2)"""
        emit_fixtures(tmp_path, 4, 2)
        partitions = read_fixture(tmp_path / "partitions_4_2.json")
        assert len(partitions[("DDUU", "UDUD")]) == 2
        assert len(partitions[("UDUD", "UDUD")]) == 1
        assert ("UDDU", "DUUD") not in partitions

    def test_missing_file(self, tmp_path):
        """Test ConfigurationError for a missing fixture"""
        with pytest.raises(ConfigurationError):
            load_table("h", 4, 2, tmp_path)

    def test_unknown_kind(self, tmp_path):
        """Test ConfigurationError for an unknown document kind"""
        path = tmp_path / "odd.json"
        path.write_text('{"kind": "odd"}', encoding="utf-8")
        with pytest.raises(ConfigurationError):
            read_fixture(path)

    def test_invalid_json(self, tmp_path):
        """Test ConfigurationError for a corrupt file"""
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            read_fixture(path)
