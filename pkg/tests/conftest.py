import pytest

from pauli_volumes.mub import MubSet, build_weyl_mubs


@pytest.fixture(scope="session")
def mub_cache():
    """Basis families are pure functions of d; build each prime once."""
    cache: dict[int, MubSet] = {}

    def get(d: int) -> MubSet:
        if d not in cache:
            cache[d] = build_weyl_mubs(d)
        return cache[d]

    return get
