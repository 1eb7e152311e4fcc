import numpy as np
import pytest

from radialgas import GasModel, PrimitiveField, conserved_from_primitive


@pytest.fixture
def air_model():
    return GasModel(K=7.75e4, gamma=1.4, m=1)


@pytest.fixture
def cubic_model():
    return GasModel(K=1.0, gamma=3.0, m=1)


def make_uniform_state(grid, model, rho=5.0, u=0.0):
    field = PrimitiveField.from_rho_u(grid, np.full(grid.N, rho), np.full(grid.N, u), model)
    return field, conserved_from_primitive(field, model)


def make_field(grid, model, rho, u):
    return PrimitiveField.from_rho_u(grid, np.asarray(rho, float), np.asarray(u, float), model)
