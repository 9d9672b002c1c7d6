import hypothesis
import hypothesis.strategies as st
import pytest

from kunzlattice.semigroup import NumericalSemigroup, multiplicity_three_upto

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")


@st.composite
def generator_sets(draw, max_gen=20, max_size=4):
    """Generator lists with gcd 1 (a 1 or two coprime entries are forced in)."""
    gens = draw(st.lists(st.integers(2, max_gen), min_size=1, max_size=max_size))
    a = draw(st.integers(2, max_gen))
    gens.append(a)
    gens.append(a + 1)
    return gens


@st.composite
def m3_semigroups(draw, max_genus=10):
    pool = multiplicity_three_upto(max_genus)
    return draw(st.sampled_from(pool))


@pytest.fixture(scope="session")
def s31317():
    return NumericalSemigroup.from_generators([3, 13, 17])


# acceptance lines are collected here and echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
