"""
Fixtures compartilhadas pelos testes do toolkit
"""

import pytest

from config import reset_config
from correspondence import PipelineService
from local_factors import PsiConductor
from params import SGN, TRIVIAL, normalize


@pytest.fixture(autouse=True)
def fresh_config():
    """Garantir que cada teste leia a configuração do ambiente atual"""
    reset_config()
    yield
    reset_config()


@pytest.fixture
def psi():
    """ψ de condutor 0 com p ímpar (e2 = 0)"""
    return PsiConductor(d=0, e2=0)


@pytest.fixture
def service(psi):
    return PipelineService(psi, workers=2)


@pytest.fixture
def phi_pair():
    """[1 x S(2)] + [sgn x S(2)]"""
    return normalize([(TRIVIAL, 2, 1), (SGN, 2, 1)])


@pytest.fixture
def phi_chain():
    """[1 x S(2)] + [1 x S(4)]"""
    return normalize([(TRIVIAL, 4, 1), (TRIVIAL, 2, 1)])


@pytest.fixture
def phi_double():
    """2*[1 x S(2)]"""
    return normalize([(TRIVIAL, 2, 2)])
