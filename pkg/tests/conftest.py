import os
from pathlib import Path

import pytest

from querylab import load_catalog

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture
def golden():
    """Byte-exact comparison against tests/golden/<name>.

    Set GOLDEN_REGEN=1 to rewrite the expected files; a missing file is
    created on first use so new goldens can be reviewed and committed.
    """

    def check(name: str, actual: str) -> None:
        path = GOLDEN_DIR / name
        if os.environ.get("GOLDEN_REGEN") == "1" or not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(actual, encoding="utf-8")
        expected = path.read_text(encoding="utf-8")
        assert actual == expected, f"output differs from golden file {name}"

    return check
