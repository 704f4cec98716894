import pytest

from tritgame.protocol import verify_class_stepping


@pytest.fixture(scope="session")
def stepping_cert():
    """Unlock the analytic engine once for the whole session."""
    return verify_class_stepping()
