"""Shared CSV input handling for the figure scripts.

The scripts consume only the documented sweep CSV schema; the file format
is the whole contract with the simulation side.
"""

import csv

REQUIRED_COLUMNS = ("engine", "L", "T", "c", "p", "q", "r", "q_prime",
                    "samples", "discarded", "mean_S", "stderr_S",
                    "master_seed")

NUMERIC = {"L": int, "T": int, "samples": int, "discarded": int,
           "c": float, "p": float, "q": float, "r": float,
           "q_prime": float, "mean_S": float, "stderr_S": float,
           "master_seed": int}


class InputError(ValueError):
    """The input CSV cannot support the requested figure."""


def read_rows(path):
    """Parse a sweep CSV into typed row dicts, validating the header."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise InputError(
                f"{path}: missing column(s) {', '.join(missing)}")
        rows = []
        for raw in reader:
            rows.append({k: NUMERIC.get(k, str)(v) for k, v in raw.items()
                         if k in REQUIRED_COLUMNS})
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows
