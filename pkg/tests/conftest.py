import pytest

from ptdecomp.catalog import sign_c2, symmetric3


@pytest.fixture(scope="session")
def S3():
    return symmetric3()


@pytest.fixture(scope="session")
def C2s():
    return sign_c2()


def idx(A, *names):
    return tuple(sorted(A.index(n) for n in names))


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
