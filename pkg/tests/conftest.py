import pytest

from latticegames.builtin import paper_gamma, paper_gamma_prime
from latticegames.engine import GameSpec, Solver


@pytest.fixture(scope="session")
def gamma_prime_game():
    return GameSpec(paper_gamma_prime())


@pytest.fixture(scope="session")
def gamma_game():
    return GameSpec(paper_gamma())


@pytest.fixture(scope="session")
def gamma_prime_solver(gamma_prime_game):
    return Solver(gamma_prime_game)


@pytest.fixture(scope="session")
def gamma_prime_grid_48(gamma_prime_solver):
    # shared by the slice-law, probe and render tests
    return gamma_prime_solver.solve_window((48, 48, 1))
