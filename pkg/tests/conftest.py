import numpy as np
import pytest

from wavevem import DegreeMap, InterfaceProblem, generate_cartesian


@pytest.fixture(scope="session")
def tc1_problem():
    """Transmission regime: incidence above the 60-degree critical angle."""
    return InterfaceProblem(k=7.0, n1=2.0, n2=1.0, theta_inc=np.deg2rad(75.0))


@pytest.fixture(scope="session")
def tc2_problem():
    """Total internal reflection: incidence below the critical angle."""
    return InterfaceProblem(k=7.0, n1=2.0, n2=1.0, theta_inc=np.deg2rad(50.0))


@pytest.fixture(scope="session")
def mesh4():
    return generate_cartesian(4)


@pytest.fixture(scope="session")
def mesh8():
    return generate_cartesian(8)


@pytest.fixture(scope="session")
def degrees_q4(mesh4):
    return DegreeMap.per_subdomain(mesh4, q1=4, q2=4)
