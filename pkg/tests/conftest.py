import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def weight13_table():
    """Published half weight-13 table: "g,n" -> canonical Schur text."""
    with open(DATA / "weight13_half_table.json", encoding="utf-8") as fh:
        return {tuple(map(int, k.split(","))): v for k, v in json.load(fh).items()}


@pytest.fixture(scope="session")
def chi13_series():
    from moduli_euler.genfun import GenfunContext, chi13_equivariant

    return chi13_equivariant(GenfunContext(u_cap=14, p_cap=13, w_cap=12))


@pytest.fixture(scope="session")
def chi11_series_12():
    from moduli_euler.genfun import GenfunContext, chi11_equivariant

    return chi11_equivariant(GenfunContext(u_cap=12, p_cap=11))


@pytest.fixture(scope="session")
def z_series_150():
    from moduli_euler.genfun import GenfunContext, chi11_scalar

    return chi11_scalar(GenfunContext(u_cap=150))


@pytest.fixture(scope="session")
def certification():
    from moduli_euler.asymptotics import certification_checks

    return {(c.family, tuple(sorted(c.params.items()))): c for c in certification_checks()}
