#!/usr/bin/env python3
"""
Test script for Step 1: Configuration, Errors and Logging
Verifies that settings load with their defaults, can be overridden via WASSVAL_*
environment variables, and that coded errors and the rich log handler behave.
"""

import logging
import os
import sys
from pathlib import Path

from rich.logging import RichHandler

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.wassval.config import get_settings, reload_settings
from src.wassval.errors import ConfigError, DataError, PropagationError, WassvalError
from src.wassval.logging_setup import configure_logging


def test_default_values():
    """Settings carry the documented defaults"""
    print("🧪 Test 1: Default Values")
    print("-" * 50)

    settings = reload_settings()
    checks = [
        ("log", settings.log, "WARNING"),
        ("ode_dt", settings.ode_dt, 0.01),
        ("roa_horizon", settings.roa_horizon, 100.0),
        ("pf_nodes", settings.pf_nodes, 1024),
        ("quad_order", settings.quad_order, 20),
        ("feasibility_tol", settings.feasibility_tol, 1e-9),
        ("default_nu", settings.default_nu, 1000),
        ("threads", settings.threads, 1),
        ("json_digits", settings.json_digits, 12),
    ]
    for name, actual, expected in checks:
        assert actual == expected, f"{name}: expected {expected}, got {actual}"
        print(f"✅ {name}: {actual}")


def test_env_override():
    """WASSVAL_* variables override defaults after a reload"""
    print("\n🧪 Test 2: Environment Variable Override")
    print("-" * 50)

    os.environ["WASSVAL_DEFAULT_NU"] = "250"
    os.environ["WASSVAL_LOG"] = "debug"
    try:
        settings = reload_settings()
        assert settings.default_nu == 250
        assert settings.log.upper() == "DEBUG"
        print(f"✅ default_nu overridden: {settings.default_nu}")
        print(f"✅ log overridden: {settings.log}")
    finally:
        del os.environ["WASSVAL_DEFAULT_NU"]
        del os.environ["WASSVAL_LOG"]
        reload_settings()

    assert get_settings().default_nu == 1000
    print("✅ defaults restored after cleanup")


def test_paths():
    print("\n🧪 Test 3: Project Paths")
    print("-" * 50)

    settings = get_settings()
    assert (settings.project_root / "src" / "wassval").is_dir()
    assert settings.configs_dir.name == "configs"
    print(f"✅ project_root: {settings.project_root}")


def test_error_codes():
    """Errors carry machine-readable codes and locations"""
    print("\n🧪 Test 4: Coded Errors")
    print("-" * 50)

    error = PropagationError("non-finite state", location="t=1.5, particle=3")
    assert error.code == "PROPAGATION"
    assert error.to_dict() == {"code": "PROPAGATION", "message": "non-finite state", "location": "t=1.5, particle=3"}
    assert "t=1.5" in str(error)
    print(f"✅ {error}")

    assert ConfigError("bad").code == "SCHEMA"
    assert ConfigError("bad length", code="TOL_LEN").code == "TOL_LEN"
    assert DataError("bad dims", code="DIM_MISMATCH").code == "DIM_MISMATCH"
    assert DataError("unreadable").code == "DATA_IO"
    assert isinstance(ConfigError("x"), WassvalError)
    print("✅ default and overridden codes")


def test_logging_setup():
    print("\n🧪 Test 5: Rich Logging")
    print("-" * 50)

    configure_logging("DEBUG")
    root = logging.getLogger()
    assert root.level == logging.DEBUG
    assert any(isinstance(h, RichHandler) for h in root.handlers)
    print("✅ RichHandler installed at DEBUG")

    configure_logging("not-a-level")
    assert logging.getLogger().level == logging.WARNING
    print("✅ unknown level falls back to WARNING")


TESTS = [
    test_default_values,
    test_env_override,
    test_paths,
    test_error_codes,
    test_logging_setup,
]


def main():
    """Run all tests"""
    print("=" * 50)
    print("Step 1 Configuration Test Suite")
    print("=" * 50)

    passed = 0
    for test in TESTS:
        try:
            test()
            passed += 1
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")

    print("\n" + "=" * 50)
    print("Test Summary")
    print("=" * 50)
    if passed == len(TESTS):
        print(f"✅ All tests passed ({passed}/{len(TESTS)})")
        return 0
    print(f"❌ Some tests failed ({passed}/{len(TESTS)} passed)")
    return 1


if __name__ == "__main__":
    sys.exit(main())
