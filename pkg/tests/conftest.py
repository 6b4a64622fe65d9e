import pytest

from notoph.clifford import build_gamma_basis
from notoph.exact import mass_shell_energy, momentum_sample


@pytest.fixture(scope="session")
def basis():
    return build_gamma_basis()


@pytest.fixture(scope="session")
def p122():
    """The workhorse sample point: p = (1, 2, 2), m = 4, p0 = 5."""
    return mass_shell_energy((1, 2, 2), 4)


@pytest.fixture(scope="session")
def sample_momenta():
    """Twelve Pythagorean momenta with positive mass."""
    return momentum_sample(12)
