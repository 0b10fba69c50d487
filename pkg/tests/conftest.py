import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def report_line(capsys):
    """Print one status line straight to the terminal, bypassing capture."""

    def emit(label: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n{label}: {'PASS' if ok else 'FAIL'}" + (f" - {detail}" if detail else ""))

    return emit
