import warnings
from datetime import date

import pytest

from csl.marketdata import PriceSeries, ReturnSeries

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from csl.service import app

_BASE = date(2020, 1, 1).toordinal()


def make_prices(closes, symbol="X") -> PriceSeries:
    dates = tuple(date.fromordinal(_BASE + i) for i in range(len(closes)))
    return PriceSeries(symbol, dates, tuple(float(c) for c in closes))


def make_returns(values, symbol="X") -> ReturnSeries:
    dates = tuple(date.fromordinal(_BASE + i) for i in range(len(values)))
    return ReturnSeries(symbol, dates, tuple(float(v) for v in values))


@pytest.fixture(scope="session")
def client() -> TestClient:
    return TestClient(app)
