"""Data-generating processes behind one simulate/moments contract."""

from .arma import ARMA11
from .base import (
    Dataset,
    Model,
    ModelError,
    SimulationError,
    SingularDesignError,
    gaussian_data_shocks,
    ols,
)
from .income import DEFAULT_THETA as INCOME_DEFAULT_THETA
from .income import HetIncome
from .mean_variance import MeanVariance
from .probit import Probit

MODELS = {
    "mean_variance": MeanVariance,
    "probit": Probit,
    "arma11": ARMA11,
    "het_income": HetIncome,
}


def get_model(name: str, **kwargs) -> Model:
    """Instantiate a model by its registry name."""
    try:
        cls = MODELS[name]
    except KeyError:
        raise ModelError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
    return cls(**kwargs)


__all__ = [
    "ARMA11", "Dataset", "HetIncome", "INCOME_DEFAULT_THETA", "MODELS", "MeanVariance",
    "Model", "ModelError", "Probit", "SimulationError", "SingularDesignError",
    "gaussian_data_shocks", "get_model", "ols",
]
