import subprocess
import sys
from pathlib import Path

import pytest

from fdnkit import make_workflow

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = FIXTURES / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def run_cli():
    """Run the CLI in a subprocess; returns (exit code, stdout bytes, stderr text)."""

    def run(*args: str, env: dict | None = None) -> tuple[int, bytes, str]:
        proc = subprocess.run(
            [sys.executable, "-m", "fdnkit", *args],
            capture_output=True,
            cwd=ROOT,
            env=env,
        )
        return proc.returncode, proc.stdout, proc.stderr.decode()

    return run


def heat_exchanger_workflow():
    """The contact heat exchanger flowchart: 6 attributes, 3 devices, 8 flows."""
    return make_workflow(
        attributes=[
            "warm substance 1",
            "cold substance 2",
            "contacted substances",
            "heat exchanged substances",
            "cold substance 1",
            "warm substance 2",
        ],
        devices=["contact", "transfer heat", "separate"],
        flows=[
            ("warm substance 1", "contact"),
            ("cold substance 2", "contact"),
            ("contact", "contacted substances"),
            ("contacted substances", "transfer heat"),
            ("transfer heat", "heat exchanged substances"),
            ("heat exchanged substances", "separate"),
            ("separate", "cold substance 1"),
            ("separate", "warm substance 2"),
        ],
    )


def linear_heat_exchanger_workflow():
    """Heat exchanger with the warm-substance-2 branch pruned: a strict chain."""
    return make_workflow(
        attributes=[
            "warm substance 1",
            "cold substance 2",
            "contacted substances",
            "heat exchanged substances",
            "cold substance 1",
        ],
        devices=["contact", "transfer heat", "separate"],
        flows=[
            ("warm substance 1", "contact"),
            ("cold substance 2", "contact"),
            ("contact", "contacted substances"),
            ("contacted substances", "transfer heat"),
            ("transfer heat", "heat exchanged substances"),
            ("heat exchanged substances", "separate"),
            ("separate", "cold substance 1"),
        ],
    )
