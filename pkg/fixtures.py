"""
Golden fixture files: one JSON document per (kind, n, i) and the readers
that turn them back into domain objects.
"""

import json
import logging
import pathlib
from typing import Any, Dict, List, Optional, Tuple, Union

from config import settings
from dyck import DyckPartition, DyckStrip, enumerate_partitions, is_type1, is_type2
from errors import ConfigurationError
from hecke import PolynomialTable
from laurent import LaurentPolynomial
from paths import bruhat_leq, enumerate_paths, path_from_string, region_boxes
from rendering import dump_json, table_to_json
from table_service import table_service

logger = logging.getLogger(__name__)

# Partitions are only written for small spaces
PARTITION_MAX_N = 5


def fixture_name(kind: str, n: int, i: int) -> str:
    return f"{kind}_{n}_{i}.json"


def partitions_to_json(n: int, i: int) -> Dict[str, Any]:
    entries = []
    paths = enumerate_paths(n, i)
    for mu in paths:
        for lam in paths:
            if not bruhat_leq(lam, mu):
                continue
            entries.append({
                "lambda": lam.steps,
                "mu": mu.steps,
                "partitions": [
                    {"strips": p.to_json(), "type1": is_type1(p), "type2": is_type2(p)}
                    for p in enumerate_partitions(lam, mu)
                ],
            })
    return {"kind": "partitions", "n": n, "i": i, "entries": entries}


def emit_fixtures(directory: Union[str, pathlib.Path], n: int, i: int) -> List[pathlib.Path]:
    """Write the fixture files of (n, i) and return their paths."""
    target = pathlib.Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    documents = {
        "paths": {"kind": "paths", "n": n, "i": i, "paths": [lam.steps for lam in enumerate_paths(n, i)]},
        "h": table_to_json(table_service.h_table(n, i)),
        "g": table_to_json(table_service.g_table(n, i)),
    }
    if n <= PARTITION_MAX_N:
        documents["partitions"] = partitions_to_json(n, i)
    written = []
    for kind, data in documents.items():
        path = target / fixture_name(kind, n, i)
        path.write_text(dump_json(data), encoding="utf-8")
        written.append(path)
    logger.info("wrote %d fixture files for (%d,%d) to %s", len(written), n, i, target)
    return written


def _read_table(data: Dict[str, Any]) -> PolynomialTable:
    paths = [path_from_string(steps) for steps in data["paths"]]
    table = PolynomialTable(data["n"], data["i"], data["kind"], paths)
    for entry in data["entries"]:
        table.set(path_from_string(entry["lambda"]), path_from_string(entry["mu"]),
                  LaurentPolynomial.from_json(entry["polynomial"]))
    return table


def _read_partitions(data: Dict[str, Any]) -> Dict[Tuple[str, str], List[DyckPartition]]:
    out = {}
    for entry in data["entries"]:
        region = region_boxes(path_from_string(entry["lambda"]), path_from_string(entry["mu"]))
        out[(entry["lambda"], entry["mu"])] = [
            DyckPartition(region, frozenset(DyckStrip.from_boxes(s) for s in p["strips"]))
            for p in entry["partitions"]
        ]
    return out


def read_fixture(path: Union[str, pathlib.Path]):
    """Load one fixture file: a path list, a PolynomialTable or a partition map."""
    try:
        data = json.loads(pathlib.Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"cannot read fixture {path}: {e}") from e
    kind = data.get("kind")
    if kind == "paths":
        return [path_from_string(steps) for steps in data["paths"]]
    if kind in ("h", "g"):
        return _read_table(data)
    if kind == "partitions":
        return _read_partitions(data)
    raise ConfigurationError(f"unknown fixture kind {kind!r} in {path}")


def load_table(kind: str, n: int, i: int, directory: Optional[Union[str, pathlib.Path]] = None) -> PolynomialTable:
    directory = pathlib.Path(directory) if directory is not None else settings.fixture_path
    return read_fixture(directory / fixture_name(kind, n, i))
