import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ROOT = Path(__file__).resolve().parents[2]
SCHEMAS = Path(os.environ.get("CORNERLAB_SCHEMAS", ROOT / "schemas"))


def _cli_path():
    env = os.environ.get("CORNERLAB_CLI")
    if env:
        return env
    for candidate in (ROOT / "build" / "cornerlab", shutil.which("cornerlab")):
        if candidate and Path(candidate).exists():
            return str(candidate)
    return None


@pytest.fixture(scope="session")
def registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    return Registry().with_resources(resources)


@pytest.fixture(scope="session")
def validate(registry):
    def check(doc, schema_name):
        schema = json.loads((SCHEMAS / schema_name).read_text())
        Draft202012Validator.check_schema(schema)
        Draft202012Validator(schema, registry=registry).validate(doc)

    return check


@pytest.fixture(scope="session")
def cli():
    path = _cli_path()
    if path is None:
        pytest.skip("cornerlab executable not built")

    def run(*args, expect=0):
        proc = subprocess.run([path, *map(str, args)], capture_output=True, text=True, timeout=300)
        assert proc.returncode == expect, proc.stderr
        return proc

    return run
