import numpy as np
import pytest

from fdstates.hilbert import FockVector


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_state(rng, s):
    v = rng.normal(size=s + 1) + 1j * rng.normal(size=s + 1)
    return FockVector(s, v / np.linalg.norm(v))


def random_complex(rng, max_modulus):
    r = max_modulus * np.sqrt(rng.uniform())
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


# criterion -> "PASS ..."/"FAIL ..." lines filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
