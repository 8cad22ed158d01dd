import pytest

from dctapprox import SignalModel


@pytest.fixture(scope="session")
def model8() -> SignalModel:
    return SignalModel(rho=0.95, n=8)
