"""
Project-wide pytest fixtures
"""
from pathlib import Path
import json
import sys
import pytest

# ---------- Paths ---------- #

ROOT = Path(__file__).resolve().parents[1]
SCHEMA_PATH = ROOT / "config" / "schema.json"
PRESENTATION_SCHEMA_PATH = ROOT / "config" / "presentation_schema.json"
WORKBENCH_SCHEMA_PATH = ROOT / "config" / "workbench_schema.json"

if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.algebra.presets import preset_algebra  # noqa: E402
from src.algebra.qmatrix import create_bialgebra  # noqa: E402
from src.scalars.scalar_ring import ParamSpace  # noqa: E402


@pytest.fixture(scope="session")
def schema():
    """Load the result envelope schema once per test session."""
    with SCHEMA_PATH.open() as f:
        return json.load(f)


@pytest.fixture(scope="session")
def presentation_schema():
    with PRESENTATION_SCHEMA_PATH.open() as f:
        return json.load(f)


@pytest.fixture(scope="session")
def workbench_schema():
    with WORKBENCH_SCHEMA_PATH.open() as f:
        return json.load(f)


# ---------- Algebras ---------- #

@pytest.fixture(scope="session")
def space():
    return ParamSpace(("q",))


@pytest.fixture(scope="session")
def q(space):
    return space.symbol("q")


@pytest.fixture(scope="session")
def plane():
    """O_q(k^2) on generators x, y"""
    return preset_algebra("quantum-plane")


@pytest.fixture(scope="session")
def affine3():
    return preset_algebra("quantum-affine", 3)


@pytest.fixture(scope="session")
def m2():
    return create_bialgebra(2).algebra


@pytest.fixture(scope="session")
def m3():
    return create_bialgebra(3).algebra


@pytest.fixture(scope="session")
def b2():
    return create_bialgebra(2)


@pytest.fixture(scope="session")
def b3():
    return create_bialgebra(3)
