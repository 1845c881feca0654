import pytest

import mtfloer.homology


@pytest.fixture(scope="session", autouse=True)
def _verify_every_smith_form():
    # every Smith decomposition in the suite re-checks its own postconditions
    old = mtfloer.homology.VERIFY_SNF
    mtfloer.homology.VERIFY_SNF = True
    yield
    mtfloer.homology.VERIFY_SNF = old
