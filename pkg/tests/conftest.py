from __future__ import annotations

import pytest

from hexcc.lattice import build_hex_torus


@pytest.fixture(scope="session")
def lat33():
    return build_hex_torus((3, 3))


@pytest.fixture(scope="session")
def lat36():
    return build_hex_torus((3, 6))


@pytest.fixture(scope="session")
def lat66():
    return build_hex_torus((6, 6))
