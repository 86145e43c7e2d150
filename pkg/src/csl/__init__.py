"""csl: desk-scale models for stress-testing bitcoin-as-money claims.

Core modules are pure numerics (marketdata, garch, security, netgame,
routing, macro, forensics); csl.service wraps them in a FastAPI app and
csl.cli is a thin client over that app.
"""
from importlib import resources

__version__ = "0.1.0"


def sample_data_path(name: str) -> str:
    """Absolute path of a bundled sample data file (e.g. 'sample_prices.csv')."""
    return str(resources.files("csl").joinpath("data", name))
