import pytest

from octomagic.witnesses import A_43617, A_9476, P_43617, P_9476


@pytest.fixture
def witness_9476():
    return A_9476, P_9476


@pytest.fixture
def witness_43617():
    return A_43617, P_43617
