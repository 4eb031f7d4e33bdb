import sys
from pathlib import Path

import pytest

APP_DIR = Path(__file__).resolve().parents[1] / "app"
if str(APP_DIR) not in sys.path:
    sys.path.insert(0, str(APP_DIR))

from catalog import cyclic, group_algebra, klein, symmetric3  # noqa: E402
from coalg import ground_coalgebra  # noqa: E402
from scalars import FieldSpec, QQ  # noqa: E402


@pytest.fixture(scope="session")
def qq():
    return QQ

@pytest.fixture(scope="session")
def f5():
    return FieldSpec.prime(5)

@pytest.fixture(scope="session")
def s3():
    return symmetric3()

@pytest.fixture(scope="session")
def z4():
    return cyclic(4)

@pytest.fixture(scope="session")
def z2():
    return cyclic(2)

@pytest.fixture(scope="session")
def kS3(s3):
    return group_algebra(s3, QQ)

@pytest.fixture(scope="session")
def kZ4(z4):
    return group_algebra(z4, QQ)

@pytest.fixture(scope="session")
def kZ2(z2):
    return group_algebra(z2, QQ)

@pytest.fixture(scope="session")
def kV4():
    return group_algebra(klein(), QQ)

@pytest.fixture(scope="session")
def k():
    return ground_coalgebra(QQ)
