from pathlib import Path

import pytest

from src.dsl.system import ExpressionSystem
from src.dsl.system_file import load_system
from src.dynamics.hybrid import SimConfig
from src.models.params import CANONICAL, ParamSet
from src.models.system import NormalFormSystem

ROOT = Path(__file__).resolve().parent.parent
CANONICAL_FILE = ROOT / "systems" / "cuspfold.psvf"


@pytest.fixture
def canonical():
    return CANONICAL


@pytest.fixture
def canonical_system():
    return NormalFormSystem(CANONICAL)


@pytest.fixture
def negative_lambda():
    return CANONICAL.with_lambda(-0.05)


@pytest.fixture
def positive_lambda():
    return CANONICAL.with_lambda(0.1)


@pytest.fixture
def node_params():
    """Parameters whose sliding flow has a stable pseudo-equilibrium at the origin."""
    return ParamSet(a=-1.0, b=-1.0, c=1.0, d=-1.1, lam=0.0)


@pytest.fixture
def wide_config():
    return SimConfig(ball_radius=100.0)


@pytest.fixture
def canonical_file():
    return CANONICAL_FILE


@pytest.fixture
def file_system():
    return ExpressionSystem(load_system(CANONICAL_FILE))
