import pytest

from tcurves.triangulation import CATALOG_KEYS, catalog


@pytest.fixture(scope="session")
def catalogs():
    return {key: catalog(key) for key in CATALOG_KEYS}
