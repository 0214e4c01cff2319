import numpy as np
import pytest

from causeway import reference, scm
from causeway.graph import CausalDag, Variable


def binary(name):
    return Variable(name, ("0", "1"))


def make_dag(names, edges):
    return CausalDag([binary(n) for n in names], edges)


@pytest.fixture(scope="session")
def final_graph():
    return reference.reference_graph("final")


@pytest.fixture(scope="session")
def pilot_graph():
    return reference.reference_graph("pilot")


@pytest.fixture(scope="session")
def reference_model():
    return reference.reference_scm()


@pytest.fixture(scope="session")
def confounded_model():
    return reference.scenario_scm("confounded_triangle")


@pytest.fixture(scope="session")
def confounded_table(confounded_model):
    return scm.sample(confounded_model, 10000, 7)


@pytest.fixture(scope="session")
def null_model():
    return reference.scenario_scm("null_triangle")


@pytest.fixture
def rng():
    return np.random.default_rng(0)
