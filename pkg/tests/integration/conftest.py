"""
Shared fixtures for integration tests.
"""

import json
from typing import Any, Callable

import pytest

from classtrace.cli.main import run


@pytest.fixture(autouse=True)
def isolated_cwd(monkeypatch, tmp_path):
    """Run every CLI test in an empty directory without CLASSTRACE_* overrides."""
    for name in ("CLASSTRACE_BUDGET", "CLASSTRACE_SEED", "CLASSTRACE_JOBS"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def run_cli(capsys) -> Callable[..., tuple[int, Any]]:
    """Run the CLI in-process; returns (exit code, parsed JSON from standard output)."""

    def _run(*argv: str) -> tuple[int, Any]:
        code = run(list(argv))
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None

    return _run
