import os
import sys
from pathlib import Path

import pytest

# allow running the suite from a fresh checkout without installation
SRC = Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))


@pytest.fixture()
def cli_env():
    """Environment for CLI subprocesses that works without installation."""
    env = os.environ.copy()
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    return env


@pytest.fixture(scope="session")
def segment_table_12():
    from ffcalc import build_staircase, generate_segment

    curve = generate_segment(level=12)
    return curve, build_staircase(curve, alpha=1.0, p0=0.0)
