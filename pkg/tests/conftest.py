import sys
from pathlib import Path

# oracles/gen live next to the tests, not in the package under test
sys.path.insert(0, str(Path(__file__).parent))

CORPUS_DIR = Path(__file__).parent / "corpus"
GOLDENS_DIR = Path(__file__).parent / "goldens"


def corpus_files(dialect: str) -> list[Path]:
    ext = {"openqasm2": "*.qasm", "quil2": "*.quil"}[dialect]
    return sorted((CORPUS_DIR / dialect).glob(ext))
