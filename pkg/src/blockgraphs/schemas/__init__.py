"""JSON Schemas (draft 2020-12) for the machine-readable outputs, version 1."""

import json
from importlib import resources

NAMES = ("census_entry", "dissociation", "rewrite_report", "rho", "verify_report")


def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"unknown schema {name!r}; available: {', '.join(NAMES)}")
    text = resources.files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
