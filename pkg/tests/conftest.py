import pytest

from symwalk.spectra import random_transposition_measure, spectrum


@pytest.fixture(scope="session")
def rt_spectrum():
    """Random transposition spectra, cached per degree for the whole session."""
    cache = {}

    def get(n: int):
        if n not in cache:
            cache[n] = spectrum(random_transposition_measure(n))
        return cache[n]

    return get
