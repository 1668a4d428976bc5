import os
from pathlib import Path

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def check_golden(name: str, payload: bytes) -> None:
    """Compare payload byte-for-byte against tests/golden/<name>.

    Run with UPDATE_GOLDEN=1 to (re)write the files; review the diff
    before committing.
    """
    path = GOLDEN_DIR / name
    if os.environ.get("UPDATE_GOLDEN") == "1":
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(payload)
    assert path.exists(), f"missing golden file {path}; run with UPDATE_GOLDEN=1 to create it"
    assert payload == path.read_bytes(), f"output differs from {path}"
