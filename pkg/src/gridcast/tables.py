"""Loader for the embedded constant tables, tile geometry and row vectors.

Every data file is listed with its sha256 in ``data/checksums.json``; a
mismatch raises DataIntegrityError instead of silently using edited numbers.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import DataIntegrityError

DATA_FILES = (
    "constant_tables.json",
    "multipacking_vectors.json",
    "p4_tiles.json",
    "strip_formulas.json",
)


def _read_bytes(name: str) -> bytes:
    return resources.files("gridcast").joinpath("data", name).read_bytes()


def file_digest(name: str) -> str:
    return hashlib.sha256(_read_bytes(name)).hexdigest()


@lru_cache(maxsize=None)
def _manifest() -> dict[str, str]:
    return json.loads(_read_bytes("checksums.json"))


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    """Parsed JSON for one data file, after checking its digest."""
    if name not in DATA_FILES:
        raise KeyError(f"unknown data file {name!r}")
    raw = _read_bytes(name)
    expected = _manifest().get(name)
    actual = hashlib.sha256(raw).hexdigest()
    if expected != actual:
        raise DataIntegrityError(f"{name}: checksum {actual} does not match manifest {expected}")
    return json.loads(raw)


def verify_all() -> None:
    for name in DATA_FILES:
        load(name)


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _cond_holds(cond: str | None, n: int) -> bool:
    if cond is None:
        return True
    for op in ("!=", "=", ">"):
        if op in cond:
            lhs, rhs = cond.split(op)
            assert lhs.strip() == "n", cond
            k = int(rhs)
            return {"!=": n != k, "=": n == k, ">": n > k}[op]
    raise ValueError(f"unparseable table condition {cond!r}")


def ragged_lookup(table: str, param: int, residue: int, n: int) -> int:
    """Constant from a ragged table row, resolving split cells like 'n=21' / 'n!=21'."""
    entries = load("constant_tables.json")[table]["entries"]
    hits = [e for e in entries if e["param"] == param and e["residue"] == residue]
    if not hits:
        raise KeyError(f"{table}: no entry for param {param}, residue {residue}")
    match = [e for e in hits if _cond_holds(e["cond"], n)]
    if len(match) != 1:
        raise DataIntegrityError(
            f"{table}: {len(match)} entries apply to param {param}, residue {residue}, n {n}"
        )
    return match[0]["value"]


def grid_lookup(table: str, i: int, j: int) -> int:
    return load("constant_tables.json")[table]["grid"][i][j]


def row_vector(m: int) -> list[Fraction]:
    data = load("multipacking_vectors.json")
    return [Fraction(x) for x in data["row_vectors"][str(m)]]


def row_coefficient(m: int) -> Fraction:
    return Fraction(load("multipacking_vectors.json")["row_lp_coefficients"][str(m)])


def long_path_vector(m: int) -> list[Fraction]:
    """Row vector for P_m x C_n with m >= 23: fixed ends around a 2/13 plateau."""
    data = load("multipacking_vectors.json")
    end = [Fraction(x) for x in data["long_path_end"]]
    mid = Fraction(data["long_path_center"])
    return end + [mid] * (m - 2 * len(end)) + end[::-1]
