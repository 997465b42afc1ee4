import os
import subprocess
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
FIXTURES = TESTS_DIR / "fixtures"
GOLDEN = TESTS_DIR / "golden"
REPO_ROOT = TESTS_DIR.parent


def run_cli(*args, cwd=None, env_extra=None):
    """Run the CLI in a subprocess against the in-repo sources."""
    env = dict(os.environ)
    env["PYTHONPATH"] = str(REPO_ROOT / "src") + os.pathsep + env.get("PYTHONPATH", "")
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "asmsim", *map(str, args)],
                          capture_output=True, cwd=cwd, env=env)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def corpus_manifest() -> Path:
    return FIXTURES / "corpus3x3" / "manifest.json"
