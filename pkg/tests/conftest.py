import pytest

from modlab import catalog as catalog_mod


@pytest.fixture(scope="session")
def default_cat():
    return catalog_mod.default_catalog()


@pytest.fixture(scope="session")
def workspace(default_cat):
    ws = catalog_mod.Workspace(default_cat)
    return ws
