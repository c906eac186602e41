import pytest

from cbmeval import build_schema

import helpers


@pytest.fixture
def shape_schema():
    return build_schema("shape")


@pytest.fixture
def thing_schema():
    return build_schema("thing")


@pytest.fixture
def demo_corpus():
    return helpers.demo_corpus()
