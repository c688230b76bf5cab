import pytest

from fusionprod import catalog as cat
from fusionprod.fusion import fusion_system_of_group
from fusionprod.groups import perm_element, perm_group_from_cycles, sylow_subgroup


class S4Data:
    def __init__(self):
        self.G = perm_group_from_cycles(4, ["(1 2 3 4)", "(1 2)"], name="S4")
        G = self.G
        self.e = lambda c: perm_element(G, c)
        self.sub = lambda *cs: G.generate(self.e(c) for c in cs)
        # the Sylow subgroup containing (1 3) and (2 4), as in the worked examples
        self.S = self.sub("(1 2 3 4)", "(1 3)")
        self.canonical_S = sylow_subgroup(G.whole, 2)
        self.A4 = self.sub("(1 2 3)", "(1 2)(3 4)")
        self.V4 = self.sub("(1 2)(3 4)", "(1 3)(2 4)")
        self.F = fusion_system_of_group(G, self.S, 2)
        self.F0 = fusion_system_of_group(self.A4, self.V4, 2)


@pytest.fixture(scope="session")
def s4():
    return S4Data()


@pytest.fixture(scope="session")
def catalog_cases():
    return {c.name: c for c in cat.standard_catalog()}


@pytest.fixture(scope="session")
def ex74():
    return cat.fixture_example_7_4(3)


@pytest.fixture(scope="session")
def ex75():
    return cat.fixture_example_7_5(3)


# criterion number -> (passed, note); filled by the acceptance suite
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {note}".rstrip())
